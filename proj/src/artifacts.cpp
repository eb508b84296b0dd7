// Copyright 2026 The ontoseed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ontoseed/artifacts.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace ontoseed {

namespace {

using nlohmann::json;

json iri_list(const EntitySet& set, const HierStore& store) {
  json a = json::array();
  for (EntityId e : set) a.push_back(std::string(store.iri(e)));
  return a;
}

EntityId resolve(const json& v, const HierStore& store) {
  const std::string iri = v.get<std::string>();
  auto id = store.find(iri);
  if (!id) throw std::runtime_error("unknown IRI " + iri);
  return *id;
}

EntitySet resolve_list(const json& a, const HierStore& store) {
  EntitySet out;
  for (const auto& v : a) out.push_back(resolve(v, store));
  canonicalize(out);
  return out;
}

TraceEdge resolve_edge(const json& j, const HierStore& store) {
  TraceEdge e;
  e.child = resolve(j.at("child"), store);
  e.parent = resolve(j.at("parent"), store);
  const std::string p = j.at("predicate").get<std::string>();
  auto pid = store.predicate(p);
  if (!pid || store.predicate_role(*pid) == PredicateRole::kExtra) {
    throw std::runtime_error("not a hierarchy predicate: " + p);
  }
  e.predicate = *pid;
  e.relation = store.predicate_role(*pid) == PredicateRole::kSubClassOf ? Relation::kSubClassOf
                                                                          : Relation::kInstanceOf;
  return e;
}

json edge_json(const TraceEdge& e, const HierStore& store) {
  return {{"child", std::string(store.iri(e.child))},
          {"parent", std::string(store.iri(e.parent))},
          {"predicate", store.predicate_iri(e.predicate)}};
}

std::string dump(const json& j) { return j.dump(1, '\t', false, json::error_handler_t::replace) + "\n"; }

json parse(std::istream& in, const char* what) {
  try {
    json j = json::parse(in);
    if (j.value("version", 0) != kArtifactVersion) {
      throw std::runtime_error(std::string(what) + ": unsupported artifact version");
    }
    return j;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string upper_json(const UpperAnalysis& analysis, const AnalysisOptions& options, const HierStore& store) {
  json j;
  j["version"] = kArtifactVersion;
  j["cuThreshold"] = options.cu_threshold;
  j["maxDepth"] = options.max_depth;
  j["truncated"] = analysis.truncated();
  j["seeds"] = iri_list(analysis.graph.seeds, store);
  json nodes = json::array();
  for (const auto& n : analysis.graph.nodes) {
    nodes.push_back({{"iri", std::string(store.iri(n.id))}, {"support", iri_list(n.support, store)}});
  }
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : analysis.graph.edges) {
    json ej = edge_json(e.edge, store);
    ej["support"] = iri_list(e.support, store);
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  j["cu"] = iri_list(analysis.cu.entities, store);
  json common = json::array();
  for (const auto& e : analysis.common.edges) common.push_back(edge_json(e, store));
  j["commonPaths"] = std::move(common);
  return dump(j);
}

UpperArtifact read_upper_json(std::istream& in, const HierStore& store) {
  json j = parse(in, "upper graph");
  UpperArtifact a;
  try {
    a.options.cu_threshold = j.at("cuThreshold").get<std::uint32_t>();
    a.options.max_depth = j.at("maxDepth").get<std::uint32_t>();
    a.truncated = j.at("truncated").get<std::uint64_t>();
    a.graph.seeds = resolve_list(j.at("seeds"), store);
    for (const auto& n : j.at("nodes")) {
      a.graph.nodes.push_back({resolve(n.at("iri"), store), resolve_list(n.at("support"), store)});
    }
    for (const auto& e : j.at("edges")) {
      a.graph.edges.push_back({resolve_edge(e, store), resolve_list(e.at("support"), store)});
    }
    a.cu.threshold = a.options.cu_threshold;
    a.cu.entities = resolve_list(j.at("cu"), store);
    for (const auto& e : j.at("commonPaths")) a.common.edges.push_back(resolve_edge(e, store));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("upper graph: ") + e.what());
  }
  std::sort(a.graph.nodes.begin(), a.graph.nodes.end(),
            [](const auto& x, const auto& y) { return x.id < y.id; });
  std::sort(a.graph.edges.begin(), a.graph.edges.end(),
            [](const auto& x, const auto& y) { return x.edge < y.edge; });
  std::sort(a.common.edges.begin(), a.common.edges.end());
  return a;
}

std::vector<HarvestTarget> EcuArtifact::targets() const {
  std::vector<HarvestTarget> out;
  for (const auto& r : ecu) out.push_back({r.entity, r.nes});
  return out;
}

std::string ecu_json(const PartitionedGraph& part, std::span<const EcuRecord> ecu, const HierStore& store) {
  json j;
  j["version"] = kArtifactVersion;
  j["componentCount"] = part.component_count();
  json records = json::array();
  for (const auto& r : ecu) {
    json dist = json::array();
    for (const auto& [s, d] : r.distances) dist.push_back({{"seed", std::string(store.iri(s))}, {"distance", d}});
    records.push_back({{"iri", std::string(store.iri(r.entity))},
                       {"label", std::string(store.display_label(r.entity))},
                       {"component", r.component},
                       {"N", r.reachable_seeds()},
                       {"distances", std::move(dist)},
                       {"nes", r.nes}});
  }
  j["ecu"] = std::move(records);
  return dump(j);
}

EcuArtifact read_ecu_json(std::istream& in, const HierStore& store) {
  json j = parse(in, "ECU table");
  EcuArtifact a;
  try {
    a.component_count = j.at("componentCount").get<std::uint32_t>();
    for (const auto& r : j.at("ecu")) {
      EcuRecord rec;
      rec.entity = resolve(r.at("iri"), store);
      rec.component = r.at("component").get<std::uint32_t>();
      for (const auto& d : r.at("distances")) {
        rec.distances.emplace_back(resolve(d.at("seed"), store), d.at("distance").get<std::uint32_t>());
      }
      std::sort(rec.distances.begin(), rec.distances.end());
      rec.nes = r.at("nes").get<std::uint32_t>();
      if (rec.nes == 0) throw std::runtime_error("ECU table: nes must be positive");
      a.ecu.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("ECU table: ") + e.what());
  }
  std::sort(a.ecu.begin(), a.ecu.end(), [](const EcuRecord& x, const EcuRecord& y) { return x.entity < y.entity; });
  return a;
}

}  // namespace ontoseed
