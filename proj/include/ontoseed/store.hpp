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

// Predicate-filtered snapshot of an N-Triples dump.
//
// A HierStore keeps only the triples a caller asks for: hierarchy edges
// (each predicate tagged as subClassOf-like or instanceOf-like), language
// tagged labels, and a handful of extra predicates used by exclusion rules.
// Everything else is counted and discarded while streaming, so memory scales
// with the kept triples rather than with the dump.

#ifndef ONTOSEED_STORE_HPP_
#define ONTOSEED_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoseed/common.hpp"
#include "ontoseed/text.hpp"

namespace ontoseed {

struct IngestFilter {
  std::map<std::string, Relation> hierarchy_predicates;
  std::map<std::string, LabelKind> label_predicates;
  std::set<std::string> languages;
  std::set<std::string> extra_predicates;
  NormalizeOptions normalize;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  // Stable textual form; the fingerprint is derived from it.
  std::string canonical_text() const;
  std::string fingerprint() const;

  friend bool operator==(const IngestFilter&, const IngestFilter&) = default;
};

struct PredicateTally {
  std::uint64_t kept = 0;
  std::uint64_t dropped = 0;
};

struct IngestStats {
  std::uint64_t total_lines = 0;
  std::uint64_t kept = 0;
  std::uint64_t dropped = 0;    // includes blank and comment lines
  std::uint64_t malformed = 0;
  std::uint64_t blank_or_comment = 0;
  std::uint64_t bytes_read = 0;
  std::uint64_t kept_bytes = 0;  // text size of the kept lines
  std::map<std::string, PredicateTally> by_predicate;
  std::map<std::string, std::uint64_t> drop_reasons;
  std::vector<std::string> warnings;
};

struct IngestOptions {
  unsigned workers = 1;
  std::size_t chunk_bytes = 4u << 20;
  // Called roughly every million lines with the running line count.
  std::function<void(std::uint64_t)> progress;
};

struct PredicateId {
  std::uint16_t value = 0;
  friend constexpr auto operator<=>(PredicateId, PredicateId) = default;
};

enum class PredicateRole : std::uint8_t { kSubClassOf, kInstanceOf, kExtra };

class StoreBuilder;

// Immutable after construction; safe for concurrent readers.
class HierStore {
 public:
  HierStore() = default;

  const IngestFilter& filter() const { return filter_; }

  std::size_t entity_count() const { return iri_offsets_.empty() ? 0 : iri_offsets_.size() - 1; }
  std::optional<EntityId> find(std::string_view iri) const;
  std::string_view iri(EntityId id) const;

  std::size_t predicate_count() const { return predicates_.size(); }
  std::optional<PredicateId> predicate(std::string_view iri) const;
  const std::string& predicate_iri(PredicateId p) const { return predicates_[p.value].iri; }
  PredicateRole predicate_role(PredicateId p) const { return predicates_[p.value].role; }
  std::vector<PredicateId> predicates_with(Relation r) const;
  // Number of distinct entity-valued edges stored for the predicate.
  std::uint64_t edge_count(PredicateId p) const { return predicates_[p.value].up.size(); }

  // Adjacency row for one predicate, ascending by id. Unknown ids give an
  // empty row.
  std::span<const EntityId> row(PredicateId p, Direction dir, EntityId e) const;

  EntitySet neighbors(EntityId e, Direction dir, std::span<const PredicateId> preds) const;
  EntitySet neighbors(EntityId e, Direction dir, Relation r) const;
  EntitySet neighbors(EntityId e, Direction dir, std::initializer_list<Relation> rs) const;

  // True if e is the subject of at least one triple with predicate p.
  bool has_property(EntityId e, PredicateId p) const;
  bool has_outgoing_hierarchy_edge(EntityId e) const;

  // Exact match on the normalized form of term.
  EntitySet lookup_label(std::string_view term, std::initializer_list<LabelKind> kinds) const;
  EntitySet lookup_normalized(std::string_view normalized, std::span<const LabelKind> kinds) const;

  // All label strings (any kind), sorted and unique.
  std::vector<std::string_view> labels_of(EntityId e) const;
  // Smallest representative label, else smallest alias, else empty.
  std::string_view display_label(EntityId e) const;
  std::size_t label_entry_count() const { return label_entries_.size(); }
  std::uint64_t label_count(LabelKind k) const;

  // Queries agree; used by snapshot round-trip checks.
  friend bool operator==(const HierStore&, const HierStore&);

 private:
  friend class StoreBuilder;
  friend void save_snapshot(const HierStore&, const std::filesystem::path&);
  friend HierStore load_snapshot(const std::filesystem::path&, const std::optional<std::string>&);

  // Edge list sorted by (key, value), stored as two parallel arrays so a row
  // is a contiguous span of values.
  struct Adjacency {
    std::vector<EntityId> keys;
    std::vector<EntityId> values;
    std::size_t size() const { return keys.size(); }
    std::span<const EntityId> row(EntityId key) const;
    friend bool operator==(const Adjacency&, const Adjacency&) = default;
  };

  struct PredicateData {
    std::string iri;
    PredicateRole role = PredicateRole::kExtra;
    Adjacency up;    // subject -> object
    Adjacency down;  // object -> subject
    EntitySet literal_subjects;
  };

  struct LabelEntry {
    std::uint32_t label = 0;
    LabelKind kind = LabelKind::kRepresentative;
    EntityId entity;
    friend auto operator<=>(const LabelEntry&, const LabelEntry&) = default;
  };

  void rebuild_derived();

  IngestFilter filter_;
  std::string iri_blob_;
  std::vector<std::uint64_t> iri_offsets_;
  std::vector<PredicateData> predicates_;
  std::vector<std::string> labels_;         // sorted unique
  std::vector<LabelEntry> label_entries_;   // sorted by (label, kind, entity)
  std::vector<std::pair<EntityId, std::uint32_t>> labels_by_entity_;  // sorted
};

struct IngestResult {
  HierStore store;
  IngestStats stats;
};

IngestResult ingest(std::istream& in, const IngestFilter& filter, const IngestOptions& opts = {});

// Reads .gz files through zlib, anything else as plain text.
IngestResult ingest_file(const std::filesystem::path& path, const IngestFilter& filter,
                         const IngestOptions& opts = {});

// TSV: predicate, kept, dropped, malformed; summary rows carry a leading '#'.
std::string ingest_report_tsv(const IngestStats& stats);

inline constexpr std::uint32_t kSnapshotVersion = 1;

void save_snapshot(const HierStore& store, const std::filesystem::path& path);

// With expected_fingerprint set, a snapshot built under a different filter is
// refused (strict mode).
HierStore load_snapshot(const std::filesystem::path& path,
                        const std::optional<std::string>& expected_fingerprint = std::nullopt);

}  // namespace ontoseed

#endif  // ONTOSEED_STORE_HPP_
