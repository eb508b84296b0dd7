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

#ifndef ONTOSEED_ECU_HPP_
#define ONTOSEED_ECU_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ontoseed/upper_graph.hpp"

namespace ontoseed {

// Integrated graph with the common paths removed, split into weakly
// connected components. Component ids are assigned in order of each
// component's smallest entity id.
struct PartitionedGraph {
  EntitySet seeds;
  std::vector<TraceEdge> residual;                            // sorted
  std::vector<std::pair<EntityId, std::uint32_t>> component;  // node -> component, sorted
  std::vector<EntitySet> component_seeds;

  std::uint32_t component_count() const { return static_cast<std::uint32_t>(component_seeds.size()); }
  std::uint32_t component_of(EntityId e) const;
};

PartitionedGraph remove_common_paths(const IntegratedGraph& graph, const CommonPathSet& common);

struct EcuRecord {
  EntityId entity;
  std::uint32_t component = 0;
  std::vector<std::pair<EntityId, std::uint32_t>> distances;  // seed -> shortest hops, by seed
  std::uint32_t nes = 0;

  std::size_t reachable_seeds() const { return distances.size(); }
};

// Largest of the shortest distances. Throws std::invalid_argument on an empty
// set.
std::uint32_t compute_nes(std::span<const std::uint32_t> distances);

// CU entities that still reach two or more seeds inside their component.
// Distances are shortest hop counts over residual edges, any relation.
std::vector<EcuRecord> find_ecu(const PartitionedGraph& part, const CuSet& cu);

struct AnalysisOptions {
  std::uint32_t cu_threshold = 2;
  std::uint32_t max_depth = kDefaultMaxDepth;
  unsigned workers = 1;
};

// Everything from the traces to the ECU list, in one go.
struct UpperAnalysis {
  std::vector<UpwardTrace> traces;
  IntegratedGraph graph;
  CuSet cu;
  CommonPathSet common;
  PartitionedGraph part;
  std::vector<EcuRecord> ecu;

  std::uint64_t truncated() const;
  const EcuRecord* find(EntityId e) const;
};

UpperAnalysis analyze_upper(const HierStore& store, const EntitySet& seeds,
                            const AnalysisOptions& opts = {});

}  // namespace ontoseed

#endif  // ONTOSEED_ECU_HPP_
