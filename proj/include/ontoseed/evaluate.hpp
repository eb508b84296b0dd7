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

// Recall and precision of harvested vocabulary against a dictionary index,
// per cumulative NES cutoff.

#ifndef ONTOSEED_EVALUATE_HPP_
#define ONTOSEED_EVALUATE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ontoseed/common.hpp"
#include "ontoseed/harvest.hpp"
#include "ontoseed/linker.hpp"
#include "ontoseed/store.hpp"

namespace ontoseed {

struct GroundTruth {
  std::vector<std::string> index_terms;
  std::vector<std::string> matched;  // sorted; index terms with a label or alias hit
  std::vector<std::string> warnings;

  std::size_t total() const { return matched.size(); }
};

GroundTruth build_ground_truth(const TermList& index, const HierStore& store);

struct EvalCandidate {
  EntityId entity;
  std::uint32_t min_nes = 0;  // smallest NES among the ECUs that found it
};

// Attaches min NES from the ECU list. Provenance naming an unknown ECU is
// ignored; candidates with no known ECU are dropped.
std::vector<EvalCandidate> eval_candidates(std::span<const ConceptCandidate> candidates,
                                           std::span<const HarvestTarget> ecus);

struct EvalRow {
  std::uint32_t cutoff = 0;
  std::uint64_t ecu_count = 0;
  std::uint64_t concept_count = 0;
  std::uint64_t term_count = 0;
  std::uint64_t matched = 0;
  double recall = 0;
  double precision = 0;
};

// One row per distinct cutoff, ascending. A concept contributes every label
// and alias it carries.
std::vector<EvalRow> evaluate(std::span<const EvalCandidate> candidates, std::span<const HarvestTarget> ecus,
                              const GroundTruth& truth, const HierStore& store,
                              std::vector<std::uint32_t> cutoffs);

// Percentage with three significant figures: 0.67 -> "67.0".
std::string format_percent(double fraction);

// Renderers sort rows by cutoff. Throw std::invalid_argument on no rows.
std::string eval_tsv(std::vector<EvalRow> rows);
std::string eval_table(std::vector<EvalRow> rows, const GroundTruth& truth);
std::string eval_csv(std::vector<EvalRow> rows);

}  // namespace ontoseed

#endif  // ONTOSEED_EVALUATE_HPP_
