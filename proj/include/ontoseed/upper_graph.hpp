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

// Upper-level concept graph: per-seed upward traces, their integration, and
// the common-upper (CU) entities and common paths found in it.
//
// A trace follows subClassOf or instanceOf for the first hop out of the seed
// and subClassOf only afterwards. Support of a node is the set of distinct
// seeds whose trace contains it.

#ifndef ONTOSEED_UPPER_GRAPH_HPP_
#define ONTOSEED_UPPER_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ontoseed/common.hpp"
#include "ontoseed/store.hpp"

namespace ontoseed {

struct TraceEdge {
  EntityId child;
  EntityId parent;
  PredicateId predicate;
  Relation relation = Relation::kSubClassOf;

  friend bool operator==(const TraceEdge& a, const TraceEdge& b) {
    return a.child == b.child && a.parent == b.parent && a.predicate == b.predicate;
  }
  friend auto operator<=>(const TraceEdge& a, const TraceEdge& b) {
    if (auto c = a.child <=> b.child; c != 0) return c;
    if (auto c = a.parent <=> b.parent; c != 0) return c;
    return a.predicate <=> b.predicate;
  }
};

inline constexpr std::uint32_t kDefaultMaxDepth = 30;

struct UpwardTrace {
  EntityId seed;
  std::vector<std::pair<EntityId, std::uint32_t>> depth;  // node -> hops, sorted by node
  std::vector<TraceEdge> edges;                           // sorted
  std::uint64_t truncated = 0;  // distinct nodes cut off by the depth cap

  EntitySet nodes() const;
  std::optional<std::uint32_t> depth_of(EntityId e) const;
};

UpwardTrace trace_upward(EntityId seed, const HierStore& store,
                         std::uint32_t max_depth = kDefaultMaxDepth);

// One trace per seed, computed on up to `workers` threads; output order
// follows `seeds`.
std::vector<UpwardTrace> trace_all(const EntitySet& seeds, const HierStore& store,
                                   std::uint32_t max_depth, unsigned workers);

struct IntegratedGraph {
  struct Node {
    EntityId id;
    EntitySet support;
  };
  struct Edge {
    TraceEdge edge;
    EntitySet support;
  };

  EntitySet seeds;
  std::vector<Node> nodes;  // sorted by id
  std::vector<Edge> edges;  // sorted by edge

  const Node* node(EntityId id) const;
  const Edge* find_edge(const TraceEdge& e) const;
  std::size_t support_count(EntityId id) const;
};

// Union of traces with support sets; independent of trace order.
IntegratedGraph integrate(std::span<const UpwardTrace> traces);

struct CuSet {
  EntitySet entities;
  std::uint32_t threshold = 2;
};

CuSet find_cu(const IntegratedGraph& graph, std::uint32_t threshold = 2);

inline constexpr std::size_t kCommonPathMinSupport = 2;

struct CommonPathSet {
  std::vector<TraceEdge> edges;  // sorted

  bool contains(const TraceEdge& e) const;
};

// Edges between two CU entities that at least two seeds' traces share.
CommonPathSet find_common_paths(const IntegratedGraph& graph, const CuSet& cu);

}  // namespace ontoseed

#endif  // ONTOSEED_UPPER_GRAPH_HPP_
