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

#ifndef ONTOSEED_LINKER_HPP_
#define ONTOSEED_LINKER_HPP_

#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoseed/common.hpp"
#include "ontoseed/store.hpp"
#include "ontoseed/text.hpp"

namespace ontoseed {

struct TermList {
  std::vector<std::string> terms;  // normalized, unique, input order
  std::string provenance;
};

// One term per line, '#' starts a comment line. Throws TermListError when no
// term survives, unless allow_empty.
TermList load_terms(std::istream& in, std::string provenance, NormalizeOptions opts = {},
                    bool allow_empty = false);
TermList load_terms_file(const std::string& path, NormalizeOptions opts = {}, bool allow_empty = false);

struct ExclusionPolicy {
  std::set<std::string> adjacent_blacklist;    // entity IRIs
  std::set<std::string> adjacency_predicates;  // predicates used for the adjacency test
  std::set<std::string> property_blacklist;    // predicate IRIs

  // Throws std::invalid_argument if an IRI is malformed or a predicate was
  // not retained by the store's ingest filter.
  void validate(const HierStore& store) const;
};

// Raw lexical matches, in term order. Unmatched terms map to an empty set.
using CandidateMap = std::vector<std::pair<std::string, EntitySet>>;

CandidateMap link_terms(const TermList& terms, const HierStore& store);

enum class LinkStatus {
  kKept,
  kUnmatched,
  kExcludedAdjacency,
  kExcludedProperty,
  kExcludedNoHierarchy,
};

const char* link_status_name(LinkStatus s);

struct AuditRow {
  std::string term;
  EntityId entity;  // invalid for unmatched terms
  LinkStatus status = LinkStatus::kKept;
  std::string reason;
};

struct SearchEntitySet {
  CandidateMap entries;  // surviving entities per term
  EntitySet seeds;       // union of entries
  std::vector<AuditRow> audit;
};

// Drops candidates adjacent to a blacklisted entity, candidates carrying a
// blacklisted property, and candidates without an outgoing hierarchy edge,
// checked in that order. Every drop is recorded in the audit trail.
SearchEntitySet apply_exclusions(const CandidateMap& candidates, const ExclusionPolicy& policy,
                                 const HierStore& store);

// term, entity IRI, status, reason
std::string audit_tsv(const SearchEntitySet& set, const HierStore& store);
// One seed IRI per line, ascending id.
std::string seeds_text(const EntitySet& seeds, const HierStore& store);
// Inverse of seeds_text; unknown IRIs are reported through `missing`.
EntitySet parse_seeds(std::istream& in, const HierStore& store, std::vector<std::string>* missing);

}  // namespace ontoseed

#endif  // ONTOSEED_LINKER_HPP_
