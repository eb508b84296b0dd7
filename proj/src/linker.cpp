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

#include "ontoseed/linker.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ontoseed/iri.hpp"

namespace ontoseed {

TermList load_terms(std::istream& in, std::string provenance, NormalizeOptions opts, bool allow_empty) {
  TermList list;
  list.provenance = std::move(provenance);
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string term = normalize_term(line, opts);
    if (term.empty() || term.front() == '#') continue;
    if (seen.insert(term).second) list.terms.push_back(std::move(term));
  }
  if (list.terms.empty() && !allow_empty) {
    throw TermListError("term list " + list.provenance + " contains no terms");
  }
  return list;
}

TermList load_terms_file(const std::string& path, NormalizeOptions opts, bool allow_empty) {
  std::ifstream in(path);
  if (!in) throw TermListError("cannot read term list " + path);
  return load_terms(in, path, opts, allow_empty);
}

void ExclusionPolicy::validate(const HierStore& store) const {
  for (const auto& iri : adjacent_blacklist) {
    if (!is_valid_iri(iri)) throw std::invalid_argument("adjacent_blacklist: invalid IRI " + iri);
  }
  for (const auto& p : adjacency_predicates) {
    if (!store.predicate(p)) {
      throw std::invalid_argument("adjacency_predicates: " + p + " was not kept at ingest");
    }
  }
  for (const auto& p : property_blacklist) {
    if (!store.predicate(p)) {
      throw std::invalid_argument("property_blacklist: " + p + " was not kept at ingest");
    }
  }
}

CandidateMap link_terms(const TermList& terms, const HierStore& store) {
  static constexpr LabelKind kKinds[] = {LabelKind::kRepresentative, LabelKind::kAlias};
  CandidateMap out;
  out.reserve(terms.terms.size());
  for (const auto& term : terms.terms) {
    out.emplace_back(term, store.lookup_normalized(term, kKinds));
  }
  return out;
}

const char* link_status_name(LinkStatus s) {
  switch (s) {
    case LinkStatus::kKept: return "kept";
    case LinkStatus::kUnmatched: return "unmatched";
    case LinkStatus::kExcludedAdjacency: return "excluded-adjacency";
    case LinkStatus::kExcludedProperty: return "excluded-property";
    case LinkStatus::kExcludedNoHierarchy: return "excluded-no-hierarchy";
  }
  return "?";
}

SearchEntitySet apply_exclusions(const CandidateMap& candidates, const ExclusionPolicy& policy,
                                 const HierStore& store) {
  policy.validate(store);

  std::vector<std::pair<EntityId, std::string>> blacklisted;
  for (const auto& iri : policy.adjacent_blacklist) {
    if (auto id = store.find(iri)) blacklisted.emplace_back(*id, iri);
  }
  std::sort(blacklisted.begin(), blacklisted.end());
  std::vector<PredicateId> adjacency;
  for (const auto& p : policy.adjacency_predicates) adjacency.push_back(*store.predicate(p));
  std::vector<std::pair<PredicateId, std::string>> banned_props;
  for (const auto& p : policy.property_blacklist) banned_props.emplace_back(*store.predicate(p), p);

  auto adjacency_hit = [&](EntityId e) -> std::string {
    for (PredicateId p : adjacency) {
      for (EntityId target : store.row(p, Direction::kUp, e)) {
        auto it = std::lower_bound(blacklisted.begin(), blacklisted.end(),
                                   std::pair<EntityId, std::string>{target, {}});
        if (it != blacklisted.end() && it->first == target) {
          return "adjacent to " + it->second + " via " + store.predicate_iri(p);
        }
      }
    }
    return {};
  };

  SearchEntitySet out;
  for (const auto& [term, entities] : candidates) {
    EntitySet kept;
    if (entities.empty()) {
      out.audit.push_back({term, EntityId{}, LinkStatus::kUnmatched, "no label or alias match"});
    }
    for (EntityId e : entities) {
      if (auto why = adjacency_hit(e); !why.empty()) {
        out.audit.push_back({term, e, LinkStatus::kExcludedAdjacency, std::move(why)});
        continue;
      }
      auto prop = std::find_if(banned_props.begin(), banned_props.end(),
                               [&](const auto& bp) { return store.has_property(e, bp.first); });
      if (prop != banned_props.end()) {
        out.audit.push_back({term, e, LinkStatus::kExcludedProperty, "has property " + prop->second});
        continue;
      }
      if (!store.has_outgoing_hierarchy_edge(e)) {
        out.audit.push_back({term, e, LinkStatus::kExcludedNoHierarchy, "no hierarchy membership"});
        continue;
      }
      out.audit.push_back({term, e, LinkStatus::kKept, {}});
      kept.push_back(e);
    }
    out.seeds.insert(out.seeds.end(), kept.begin(), kept.end());
    out.entries.emplace_back(term, std::move(kept));
  }
  canonicalize(out.seeds);
  return out;
}

std::string audit_tsv(const SearchEntitySet& set, const HierStore& store) {
  std::ostringstream out;
  out << "term\tentity\tstatus\treason\n";
  for (const auto& row : set.audit) {
    out << row.term << '\t' << (row.entity.valid() ? store.iri(row.entity) : std::string_view{})
        << '\t' << link_status_name(row.status) << '\t' << row.reason << '\n';
  }
  return out.str();
}

std::string seeds_text(const EntitySet& seeds, const HierStore& store) {
  std::string out;
  for (EntityId e : seeds) {
    out.append(store.iri(e));
    out.push_back('\n');
  }
  return out;
}

EntitySet parse_seeds(std::istream& in, const HierStore& store, std::vector<std::string>* missing) {
  EntitySet out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (auto id = store.find(line)) {
      out.push_back(*id);
    } else if (missing != nullptr) {
      missing->push_back(line);
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace ontoseed
