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

#include "ontoseed/ecu.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ontoseed {

std::uint32_t PartitionedGraph::component_of(EntityId e) const {
  auto it = std::lower_bound(component.begin(), component.end(),
                             std::pair<EntityId, std::uint32_t>{e, 0});
  if (it == component.end() || it->first != e) {
    throw std::out_of_range("entity is not part of the partitioned graph");
  }
  return it->second;
}

PartitionedGraph remove_common_paths(const IntegratedGraph& graph, const CommonPathSet& common) {
  PartitionedGraph part;
  part.seeds = graph.seeds;
  for (const auto& e : graph.edges) {
    if (!common.contains(e.edge)) part.residual.push_back(e.edge);
  }

  const std::size_t n = graph.nodes.size();
  auto index = [&](EntityId id) {
    auto it = std::lower_bound(graph.nodes.begin(), graph.nodes.end(), id,
                               [](const IntegratedGraph::Node& a, EntityId x) { return a.id < x; });
    return static_cast<std::size_t>(it - graph.nodes.begin());
  };
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : part.residual) {
    std::size_t a = find(index(e.child)), b = find(index(e.parent));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  // Roots are the smallest index in each set, so numbering by first
  // appearance orders components by their smallest entity id.
  std::vector<std::uint32_t> comp_of_root(n, UINT32_MAX);
  part.component.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (comp_of_root[r] == UINT32_MAX) {
      comp_of_root[r] = static_cast<std::uint32_t>(part.component_seeds.size());
      part.component_seeds.emplace_back();
    }
    part.component.emplace_back(graph.nodes[i].id, comp_of_root[r]);
  }
  for (EntityId s : part.seeds) part.component_seeds[part.component_of(s)].push_back(s);
  return part;
}

std::uint32_t compute_nes(std::span<const std::uint32_t> distances) {
  if (distances.empty()) throw std::invalid_argument("NES of an empty distance set");
  return *std::max_element(distances.begin(), distances.end());
}

std::vector<EcuRecord> find_ecu(const PartitionedGraph& part, const CuSet& cu) {
  std::map<EntityId, std::vector<const TraceEdge*>> out_edges;
  for (const auto& e : part.residual) out_edges[e.child].push_back(&e);

  // Shortest distance from every seed to every CU entity it reaches.
  std::map<EntityId, std::vector<std::pair<EntityId, std::uint32_t>>> reached;
  for (EntityId seed : part.seeds) {
    std::map<EntityId, std::uint32_t> dist{{seed, 0}};
    std::deque<EntityId> queue{seed};
    while (!queue.empty()) {
      EntityId u = queue.front();
      queue.pop_front();
      auto it = out_edges.find(u);
      if (it == out_edges.end()) continue;
      for (const TraceEdge* e : it->second) {
        if (dist.emplace(e->parent, dist[u] + 1).second) queue.push_back(e->parent);
      }
    }
    for (const auto& [node, d] : dist) {
      if (node != seed && contains(cu.entities, node)) reached[node].emplace_back(seed, d);
    }
  }

  std::vector<EcuRecord> out;
  for (auto& [entity, distances] : reached) {
    if (distances.size() < 2) continue;
    EcuRecord rec;
    rec.entity = entity;
    rec.component = part.component_of(entity);
    rec.distances = std::move(distances);
    std::sort(rec.distances.begin(), rec.distances.end());
    std::vector<std::uint32_t> ls;
    for (const auto& [s, d] : rec.distances) ls.push_back(d);
    rec.nes = compute_nes(ls);
    out.push_back(std::move(rec));
  }
  return out;
}

std::uint64_t UpperAnalysis::truncated() const {
  std::uint64_t n = 0;
  for (const auto& t : traces) n += t.truncated;
  return n;
}

const EcuRecord* UpperAnalysis::find(EntityId e) const {
  auto it = std::lower_bound(ecu.begin(), ecu.end(), e,
                             [](const EcuRecord& r, EntityId x) { return r.entity < x; });
  return it != ecu.end() && it->entity == e ? &*it : nullptr;
}

UpperAnalysis analyze_upper(const HierStore& store, const EntitySet& seeds,
                            const AnalysisOptions& opts) {
  UpperAnalysis a;
  a.traces = trace_all(seeds, store, opts.max_depth, opts.workers);
  a.graph = integrate(a.traces);
  a.cu = find_cu(a.graph, opts.cu_threshold);
  a.common = find_common_paths(a.graph, a.cu);
  a.part = remove_common_paths(a.graph, a.common);
  a.ecu = find_ecu(a.part, a.cu);
  return a;
}

}  // namespace ontoseed
