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

// Pruning harvested subtrees by where the search entities fall.
//
// nes = 1 keeps everything. Otherwise each branch (subtree under a direct
// child of the ECU) survives only through the seeds it contains. A seed at
// depth 1 or 2 keeps its whole branch. A deeper seed keeps the subtree of
// each ancestor two steps above it, bounded by nes, plus the shortest
// subClassOf paths from the branch root down to that ancestor.

#ifndef ONTOSEED_TRIM_HPP_
#define ONTOSEED_TRIM_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ontoseed/common.hpp"
#include "ontoseed/harvest.hpp"
#include "ontoseed/store.hpp"

namespace ontoseed {

enum TrimRule : std::uint8_t {
  kRuleNesOne = 1,
  kRuleSeedSubtree = 2,
  kRuleTwoAboveSubtree = 4,
  kRuleEcuPath = 8,
};

inline constexpr TrimRule kAllTrimRules[] = {kRuleNesOne, kRuleSeedSubtree, kRuleTwoAboveSubtree, kRuleEcuPath};

const char* trim_rule_name(TrimRule r);
std::vector<std::string> trim_rule_names(std::uint8_t mask);

struct KeptEntry {
  EntityId entity;
  EntityId subtree_root;
  std::uint32_t depth = 0;
  std::uint8_t rules = 0;

  friend bool operator==(const KeptEntry&, const KeptEntry&) = default;
};

struct EcuTrim {
  EntityId ecu;
  std::uint32_t nes = 0;
  std::vector<KeptEntry> kept;  // sorted by (entity, subtree root)
  std::uint64_t total_entries = 0;  // (candidate, subtree root) pairs in the view

  std::uint64_t dropped_entries() const { return total_entries - kept.size(); }
};

// `seeds` must be sorted.
EcuTrim trim(const SubtreeView& view, const EntitySet& seeds);

// The view cut down to the kept entries, depths unchanged.
SubtreeView restrict_view(const SubtreeView& view, const EcuTrim& result);

struct TrimmedCandidate {
  EntityId entity;
  std::vector<Provenance> provenance;  // kept entries only
  std::uint8_t rules = 0;
};

struct TrimReport {
  struct PerEcu {
    EntityId ecu;
    std::uint32_t nes = 0;
    std::uint64_t total = 0;
    std::uint64_t kept = 0;
    std::uint64_t dropped = 0;
  };
  std::vector<PerEcu> per_ecu;                 // sorted by ecu
  std::map<std::string, std::uint64_t> by_rule;  // kept entries carrying each rule
  std::uint64_t unique_kept = 0;               // distinct kept candidates
  std::uint64_t ecu_count = 0;                 // ECU nodes, counted apart
  std::uint64_t unique_with_ecu = 0;           // kept candidates and ECU nodes together
};

struct TrimOutput {
  std::vector<EcuTrim> per_ecu;  // order of views
  std::vector<TrimmedCandidate> kept;  // sorted by entity
  TrimReport report;
};

// Per-ECU trim, then union: a candidate kept under any ECU survives.
TrimOutput trim_all(std::span<const SubtreeView> views, const EntitySet& seeds, unsigned workers = 1);

std::string trim_report_tsv(const TrimReport& report, const HierStore& store);

}  // namespace ontoseed

#endif  // ONTOSEED_TRIM_HPP_
