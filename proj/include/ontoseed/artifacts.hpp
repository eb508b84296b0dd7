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

// JSON forms of the upper-graph and ECU stage outputs, so later stages can
// restart from them.

#ifndef ONTOSEED_ARTIFACTS_HPP_
#define ONTOSEED_ARTIFACTS_HPP_

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "ontoseed/ecu.hpp"
#include "ontoseed/harvest.hpp"
#include "ontoseed/store.hpp"

namespace ontoseed {

inline constexpr int kArtifactVersion = 1;

struct UpperArtifact {
  AnalysisOptions options;
  IntegratedGraph graph;
  CuSet cu;
  CommonPathSet common;
  std::uint64_t truncated = 0;
};

std::string upper_json(const UpperAnalysis& analysis, const AnalysisOptions& options, const HierStore& store);
// Throws std::runtime_error on malformed input or IRIs unknown to the store.
UpperArtifact read_upper_json(std::istream& in, const HierStore& store);

struct EcuArtifact {
  std::uint32_t component_count = 0;
  std::vector<EcuRecord> ecu;  // sorted by entity

  std::vector<HarvestTarget> targets() const;
};

std::string ecu_json(const PartitionedGraph& part, std::span<const EcuRecord> ecu, const HierStore& store);
EcuArtifact read_ecu_json(std::istream& in, const HierStore& store);

}  // namespace ontoseed

#endif  // ONTOSEED_ARTIFACTS_HPP_
