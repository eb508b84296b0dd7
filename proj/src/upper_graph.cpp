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

#include "ontoseed/upper_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "ontoseed/parallel.hpp"

namespace ontoseed {

EntitySet UpwardTrace::nodes() const {
  EntitySet out;
  out.reserve(depth.size());
  for (const auto& [id, d] : depth) out.push_back(id);
  return out;
}

std::optional<std::uint32_t> UpwardTrace::depth_of(EntityId e) const {
  auto it = std::lower_bound(depth.begin(), depth.end(), std::pair<EntityId, std::uint32_t>{e, 0});
  if (it == depth.end() || it->first != e) return std::nullopt;
  return it->second;
}

UpwardTrace trace_upward(EntityId seed, const HierStore& store, std::uint32_t max_depth) {
  UpwardTrace trace;
  trace.seed = seed;

  std::vector<std::pair<PredicateId, Relation>> first_hop, later_hops;
  for (PredicateId p : store.predicates_with(Relation::kSubClassOf)) {
    first_hop.emplace_back(p, Relation::kSubClassOf);
    later_hops.emplace_back(p, Relation::kSubClassOf);
  }
  for (PredicateId p : store.predicates_with(Relation::kInstanceOf)) {
    first_hop.emplace_back(p, Relation::kInstanceOf);
  }

  std::unordered_map<EntityId, std::uint32_t> depth{{seed, 0}};
  std::unordered_set<EntityId> cut;
  std::deque<EntityId> queue{seed};
  while (!queue.empty()) {
    EntityId u = queue.front();
    queue.pop_front();
    const std::uint32_t du = depth.at(u);
    for (auto [p, rel] : u == seed ? first_hop : later_hops) {
      for (EntityId v : store.row(p, Direction::kUp, u)) {
        if (depth.count(v) == 0) {
          if (du + 1 > max_depth) {
            cut.insert(v);
            continue;
          }
          depth.emplace(v, du + 1);
          queue.push_back(v);
        }
        trace.edges.push_back({u, v, p, rel});
      }
    }
  }
  trace.truncated = cut.size();
  trace.depth.assign(depth.begin(), depth.end());
  std::sort(trace.depth.begin(), trace.depth.end());
  std::sort(trace.edges.begin(), trace.edges.end());
  trace.edges.erase(std::unique(trace.edges.begin(), trace.edges.end()), trace.edges.end());
  return trace;
}

std::vector<UpwardTrace> trace_all(const EntitySet& seeds, const HierStore& store,
                                   std::uint32_t max_depth, unsigned workers) {
  std::vector<UpwardTrace> out(seeds.size());
  parallel_for(seeds.size(), workers,
               [&](std::size_t i) { out[i] = trace_upward(seeds[i], store, max_depth); });
  return out;
}

const IntegratedGraph::Node* IntegratedGraph::node(EntityId id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const Node& n, EntityId x) { return n.id < x; });
  return it != nodes.end() && it->id == id ? &*it : nullptr;
}

const IntegratedGraph::Edge* IntegratedGraph::find_edge(const TraceEdge& e) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), e,
                             [](const Edge& a, const TraceEdge& x) { return a.edge < x; });
  return it != edges.end() && it->edge == e ? &*it : nullptr;
}

std::size_t IntegratedGraph::support_count(EntityId id) const {
  const Node* n = node(id);
  return n == nullptr ? 0 : n->support.size();
}

IntegratedGraph integrate(std::span<const UpwardTrace> traces) {
  std::map<EntityId, EntitySet> node_support;
  std::map<TraceEdge, EntitySet> edge_support;
  IntegratedGraph g;
  for (const auto& t : traces) {
    g.seeds.push_back(t.seed);
    for (const auto& [id, d] : t.depth) node_support[id].push_back(t.seed);
    for (const auto& e : t.edges) edge_support[e].push_back(t.seed);
  }
  canonicalize(g.seeds);
  for (auto& [id, support] : node_support) {
    canonicalize(support);
    g.nodes.push_back({id, std::move(support)});
  }
  for (auto& [e, support] : edge_support) {
    canonicalize(support);
    g.edges.push_back({e, std::move(support)});
  }
  return g;
}

CuSet find_cu(const IntegratedGraph& graph, std::uint32_t threshold) {
  CuSet cu;
  cu.threshold = threshold;
  for (const auto& n : graph.nodes) {
    if (n.support.size() >= threshold) cu.entities.push_back(n.id);
  }
  return cu;
}

bool CommonPathSet::contains(const TraceEdge& e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

CommonPathSet find_common_paths(const IntegratedGraph& graph, const CuSet& cu) {
  CommonPathSet out;
  for (const auto& e : graph.edges) {
    if (e.support.size() >= kCommonPathMinSupport && ontoseed::contains(cu.entities, e.edge.child) &&
        ontoseed::contains(cu.entities, e.edge.parent)) {
      out.edges.push_back(e.edge);
    }
  }
  return out;
}

}  // namespace ontoseed
