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

#include "ontoseed/export.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ontoseed/iri.hpp"

namespace ontoseed {

namespace {

using nlohmann::json;

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string node_caption(const HierStore& store, EntityId e) {
  std::string caption(iri_local_name(store.iri(e)));
  std::string_view label = store.display_label(e);
  if (!label.empty()) caption += "\n" + std::string(label);
  return caption;
}

std::string compact(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

bool is_ecu(std::span<const EcuRecord> ecu, EntityId e) {
  return std::binary_search(ecu.begin(), ecu.end(), e, [](const auto& a, const auto& b) {
    if constexpr (std::is_same_v<std::decay_t<decltype(a)>, EcuRecord>) {
      return a.entity < b;
    } else {
      return a < b.entity;
    }
  });
}

const char* graphml_header() {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
}

}  // namespace

std::string integrated_dot(const IntegratedGraph& graph, const CuSet& cu, const CommonPathSet& common,
                           std::span<const EcuRecord> ecu, const HierStore& store) {
  std::ostringstream out;
  out << "digraph upper {\n  rankdir=BT;\n";
  for (const auto& n : graph.nodes) {
    bool is_cu = contains(cu.entities, n.id);
    bool is_e = is_ecu(ecu, n.id);
    bool is_seed = contains(graph.seeds, n.id);
    out << "  " << dot_quote(store.iri(n.id)) << " [label="
        << dot_quote(node_caption(store, n.id) + "\nsupport=" + std::to_string(n.support.size()))
        << ", support=" << n.support.size() << ", cu=" << (is_cu ? "true" : "false")
        << ", ecu=" << (is_e ? "true" : "false") << ", seed=" << (is_seed ? "true" : "false");
    if (is_e) {
      out << ", style=filled, fillcolor=orange";
    } else if (is_cu) {
      out << ", style=filled, fillcolor=lightblue";
    } else if (is_seed) {
      out << ", shape=box";
    }
    out << "];\n";
  }
  for (const auto& e : graph.edges) {
    out << "  " << dot_quote(store.iri(e.edge.child)) << " -> " << dot_quote(store.iri(e.edge.parent))
        << " [label=" << dot_quote(iri_local_name(store.predicate_iri(e.edge.predicate)))
        << ", support=" << e.support.size() << ", common=" << (common.contains(e.edge) ? "true" : "false");
    if (common.contains(e.edge)) out << ", style=bold, color=blue";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string integrated_graphml(const IntegratedGraph& graph, const CuSet& cu, const CommonPathSet& common,
                               std::span<const EcuRecord> ecu, const HierStore& store) {
  std::ostringstream out;
  out << graphml_header()
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
         "  <key id=\"support\" for=\"node\" attr.name=\"support\" attr.type=\"int\"/>\n"
         "  <key id=\"cu\" for=\"node\" attr.name=\"cu\" attr.type=\"boolean\"/>\n"
         "  <key id=\"ecu\" for=\"node\" attr.name=\"ecu\" attr.type=\"boolean\"/>\n"
         "  <key id=\"seed\" for=\"node\" attr.name=\"seed\" attr.type=\"boolean\"/>\n"
         "  <key id=\"predicate\" for=\"edge\" attr.name=\"predicate\" attr.type=\"string\"/>\n"
         "  <key id=\"esupport\" for=\"edge\" attr.name=\"support\" attr.type=\"int\"/>\n"
         "  <key id=\"common\" for=\"edge\" attr.name=\"common\" attr.type=\"boolean\"/>\n"
         "  <graph id=\"upper\" edgedefault=\"directed\">\n";
  for (const auto& n : graph.nodes) {
    out << "    <node id=\"" << xml_escape(store.iri(n.id)) << "\">"
        << "<data key=\"label\">" << xml_escape(store.display_label(n.id)) << "</data>"
        << "<data key=\"support\">" << n.support.size() << "</data>"
        << "<data key=\"cu\">" << (contains(cu.entities, n.id) ? "true" : "false") << "</data>"
        << "<data key=\"ecu\">" << (is_ecu(ecu, n.id) ? "true" : "false") << "</data>"
        << "<data key=\"seed\">" << (contains(graph.seeds, n.id) ? "true" : "false") << "</data>"
        << "</node>\n";
  }
  std::size_t i = 0;
  for (const auto& e : graph.edges) {
    out << "    <edge id=\"e" << i++ << "\" source=\"" << xml_escape(store.iri(e.edge.child)) << "\" target=\""
        << xml_escape(store.iri(e.edge.parent)) << "\">"
        << "<data key=\"predicate\">" << xml_escape(store.predicate_iri(e.edge.predicate)) << "</data>"
        << "<data key=\"esupport\">" << e.support.size() << "</data>"
        << "<data key=\"common\">" << (common.contains(e.edge) ? "true" : "false") << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string integrated_tsv(const IntegratedGraph& graph, const HierStore& store) {
  std::ostringstream out;
  out << "child\tparent\tpredicate\trelation\tsupport\tseeds\n";
  for (const auto& e : graph.edges) {
    out << store.iri(e.edge.child) << '\t' << store.iri(e.edge.parent) << '\t'
        << store.predicate_iri(e.edge.predicate) << '\t' << relation_name(e.edge.relation) << '\t'
        << e.support.size() << '\t';
    for (std::size_t i = 0; i < e.support.size(); ++i) out << (i ? " " : "") << store.iri(e.support[i]);
    out << '\n';
  }
  return out.str();
}

std::string residual_dot(const PartitionedGraph& part, std::span<const EcuRecord> ecu, const HierStore& store) {
  std::ostringstream out;
  out << "digraph residual {\n  rankdir=BT;\n";
  for (const auto& [id, comp] : part.component) {
    bool is_e = is_ecu(ecu, id);
    out << "  " << dot_quote(store.iri(id)) << " [label="
        << dot_quote(node_caption(store, id) + "\ncomponent=" + std::to_string(comp)) << ", component=" << comp
        << ", ecu=" << (is_e ? "true" : "false") << ", seed=" << (contains(part.seeds, id) ? "true" : "false");
    if (is_e) out << ", style=filled, fillcolor=orange";
    out << "];\n";
  }
  for (const auto& e : part.residual) {
    out << "  " << dot_quote(store.iri(e.child)) << " -> " << dot_quote(store.iri(e.parent))
        << " [label=" << dot_quote(iri_local_name(store.predicate_iri(e.predicate))) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string residual_graphml(const PartitionedGraph& part, std::span<const EcuRecord> ecu,
                             const HierStore& store) {
  std::ostringstream out;
  out << graphml_header()
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
         "  <key id=\"component\" for=\"node\" attr.name=\"component\" attr.type=\"int\"/>\n"
         "  <key id=\"ecu\" for=\"node\" attr.name=\"ecu\" attr.type=\"boolean\"/>\n"
         "  <key id=\"predicate\" for=\"edge\" attr.name=\"predicate\" attr.type=\"string\"/>\n"
         "  <graph id=\"residual\" edgedefault=\"directed\">\n";
  for (const auto& [id, comp] : part.component) {
    out << "    <node id=\"" << xml_escape(store.iri(id)) << "\">"
        << "<data key=\"label\">" << xml_escape(store.display_label(id)) << "</data>"
        << "<data key=\"component\">" << comp << "</data>"
        << "<data key=\"ecu\">" << (is_ecu(ecu, id) ? "true" : "false") << "</data></node>\n";
  }
  std::size_t i = 0;
  for (const auto& e : part.residual) {
    out << "    <edge id=\"e" << i++ << "\" source=\"" << xml_escape(store.iri(e.child)) << "\" target=\""
        << xml_escape(store.iri(e.parent)) << "\"><data key=\"predicate\">"
        << xml_escape(store.predicate_iri(e.predicate)) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string ecu_tsv(std::span<const EcuRecord> ecu, const HierStore& store) {
  std::ostringstream out;
  out << "entity\tlabel\tcomponent\tN\tnes\n";
  for (const auto& r : ecu) {
    out << store.iri(r.entity) << '\t' << store.display_label(r.entity) << '\t' << r.component << '\t'
        << r.reachable_seeds() << '\t' << r.nes << '\n';
  }
  return out.str();
}

namespace {

json candidate_json(const ConceptCandidate& c, const HierStore& store) {
  json j;
  j["iri"] = std::string(store.iri(c.entity));
  json labels = json::array();
  for (auto l : store.labels_of(c.entity)) labels.push_back(std::string(l));
  j["labels"] = std::move(labels);
  json prov = json::array();
  for (const auto& p : c.provenance) {
    prov.push_back({{"ecu", std::string(store.iri(p.ecu))},
                    {"depth", p.depth},
                    {"subtreeRoot", std::string(store.iri(p.subtree_root))}});
  }
  j["provenance"] = std::move(prov);
  return j;
}

}  // namespace

std::string candidates_jsonl(std::span<const ConceptCandidate> candidates, const HierStore& store) {
  std::string out;
  for (const auto& c : candidates) out += compact(candidate_json(c, store)) + "\n";
  return out;
}

std::string trimmed_jsonl(std::span<const TrimmedCandidate> candidates, const HierStore& store) {
  std::string out;
  for (const auto& c : candidates) {
    json j = candidate_json({c.entity, c.provenance}, store);
    j["keptBy"] = trim_rule_names(c.rules);
    out += compact(j) + "\n";
  }
  return out;
}

std::string candidates_tsv(std::span<const ConceptCandidate> candidates, const HierStore& store) {
  std::ostringstream out;
  out << "iri\tlabel\tecu\tdepth\tsubtreeRoot\n";
  for (const auto& c : candidates) {
    for (const auto& p : c.provenance) {
      out << store.iri(c.entity) << '\t' << store.display_label(c.entity) << '\t' << store.iri(p.ecu) << '\t'
          << p.depth << '\t' << store.iri(p.subtree_root) << '\n';
    }
  }
  return out.str();
}

std::vector<ConceptCandidate> read_candidates_jsonl(std::istream& in, const HierStore& store) {
  std::vector<ConceptCandidate> out;
  std::string line;
  std::size_t n = 0;
  auto resolve = [&](const json& v) {
    auto id = store.find(v.get<std::string>());
    if (!id) throw std::runtime_error("line " + std::to_string(n) + ": unknown IRI " + v.get<std::string>());
    return *id;
  };
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      ConceptCandidate c;
      c.entity = resolve(j.at("iri"));
      for (const auto& p : j.at("provenance")) {
        c.provenance.push_back({resolve(p.at("ecu")), p.at("depth").get<std::uint32_t>(), resolve(p.at("subtreeRoot"))});
      }
      std::sort(c.provenance.begin(), c.provenance.end());
      out.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw std::runtime_error("line " + std::to_string(n) + ": " + e.what());
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ConceptCandidate& a, const ConceptCandidate& b) { return a.entity < b.entity; });
  return out;
}

}  // namespace ontoseed
