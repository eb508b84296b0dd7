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

// Lower-level concept retrieval. From an ECU, k-1 inverse subClassOf steps
// are followed by one inverse subClassOf-or-instanceOf step, for every
// k = 1..nes. An instanceOf hop always ends the path.

#ifndef ONTOSEED_HARVEST_HPP_
#define ONTOSEED_HARVEST_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoseed/common.hpp"
#include "ontoseed/store.hpp"

namespace ontoseed {

struct Provenance {
  EntityId ecu;
  std::uint32_t depth = 0;
  EntityId subtree_root;  // direct child of the ECU the path went through

  friend auto operator<=>(const Provenance&, const Provenance&) = default;
};

struct ConceptCandidate {
  EntityId entity;
  std::vector<Provenance> provenance;  // sorted, one entry per (ecu, subtree root)

  std::uint32_t min_depth() const;
};

struct BranchEdge {
  EntityId parent;
  EntityId child;
  Relation relation = Relation::kSubClassOf;

  friend auto operator<=>(const BranchEdge&, const BranchEdge&) = default;
};

// Everything found below one direct child of the ECU.
struct Branch {
  EntityId root;
  // Shortest discovery depth below the ECU, root = 1. Sorted by entity.
  std::vector<std::pair<EntityId, std::uint32_t>> depth;
  // Nodes reached through subClassOf only, with that subClassOf distance;
  // only these are expanded further. Sorted by entity.
  std::vector<std::pair<EntityId, std::uint32_t>> expand_depth;
  std::vector<BranchEdge> edges;  // every traversed edge, sorted

  std::optional<std::uint32_t> depth_of(EntityId e) const;
  std::optional<std::uint32_t> expand_depth_of(EntityId e) const;
};

struct SubtreeView {
  EntityId ecu;
  std::uint32_t nes = 0;
  std::vector<Branch> branches;  // sorted by root
};

// Throws std::invalid_argument when nes is 0.
SubtreeView explore_branches(EntityId ecu, std::uint32_t nes, const HierStore& store);

std::vector<ConceptCandidate> candidates_of(const SubtreeView& view);

std::vector<ConceptCandidate> expand_down(EntityId ecu, std::uint32_t nes, const HierStore& store);

// Deduplicates by entity and merges provenance.
std::vector<ConceptCandidate> merge_harvests(std::span<const std::vector<ConceptCandidate>> parts);

struct HarvestTarget {
  EntityId ecu;
  std::uint32_t nes = 0;
};

struct HarvestReport {
  struct PerEcu {
    EntityId ecu;
    std::uint32_t nes = 0;
    std::vector<std::uint64_t> by_depth;  // index k-1: candidates whose shortest depth is k
    std::uint64_t total = 0;
  };
  std::vector<PerEcu> per_ecu;             // sorted by ecu
  std::map<std::uint32_t, std::uint64_t> by_nes;      // unique candidates of ECUs with exactly this nes
  std::map<std::uint32_t, std::uint64_t> cumulative;  // unique candidates of ECUs with nes <= cutoff
  std::uint64_t unique = 0;
};

HarvestReport make_harvest_report(std::span<const HarvestTarget> targets,
                                  std::span<const ConceptCandidate> candidates);

struct Harvest {
  std::vector<SubtreeView> views;  // order of targets
  std::vector<ConceptCandidate> candidates;
  HarvestReport report;
};

Harvest harvest_all(std::span<const HarvestTarget> targets, const HierStore& store, unsigned workers);

std::string harvest_report_tsv(const HarvestReport& report, const HierStore& store);

// prefix name -> namespace IRI, used to shorten IRIs in generated queries.
using PrefixMap = std::vector<std::pair<std::string, std::string>>;

// SELECT query whose property path is k-1 times ^subClassOf then
// ^(subClassOf|instanceOf), anchored at the ECU. Throws std::invalid_argument
// when k is 0 or a predicate list is empty.
std::string emit_sparql(std::string_view ecu_iri, std::uint32_t k,
                        std::span<const std::string> subclass_iris,
                        std::span<const std::string> instance_iris, const PrefixMap& prefixes = {});

// Same with the hierarchy predicates taken from the store.
std::string emit_sparql(const HierStore& store, EntityId ecu, std::uint32_t k,
                        const PrefixMap& prefixes = {});

}  // namespace ontoseed

#endif  // ONTOSEED_HARVEST_HPP_
