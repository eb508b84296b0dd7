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

#include "ontoseed/store.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <future>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ontoseed/checksum.hpp"
#include "ontoseed/iri.hpp"
#include "ontoseed/ntriples.hpp"
#include "source.hpp"

namespace ontoseed {

const char* relation_name(Relation r) {
  return r == Relation::kSubClassOf ? "subClassOf" : "instanceOf";
}

const char* label_kind_name(LabelKind k) {
  return k == LabelKind::kRepresentative ? "representative" : "alias";
}

void canonicalize(EntitySet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

bool contains(const EntitySet& sorted, EntityId id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// IngestFilter

void IngestFilter::validate() const {
  if (hierarchy_predicates.empty()) {
    throw std::invalid_argument("hierarchy_predicates: must not be empty");
  }
  bool has_subclass = false;
  for (const auto& [iri, rel] : hierarchy_predicates) {
    if (!is_valid_iri(iri)) throw std::invalid_argument("hierarchy_predicates: invalid IRI " + iri);
    if (rel == Relation::kSubClassOf) has_subclass = true;
    if (label_predicates.count(iri) != 0) {
      throw std::invalid_argument("label_predicates: overlaps hierarchy predicate " + iri);
    }
    if (extra_predicates.count(iri) != 0) {
      throw std::invalid_argument("extra_predicates: overlaps hierarchy predicate " + iri);
    }
  }
  if (!has_subclass) {
    throw std::invalid_argument("hierarchy_predicates: needs at least one subClassOf predicate");
  }
  for (const auto& [iri, kind] : label_predicates) {
    if (!is_valid_iri(iri)) throw std::invalid_argument("label_predicates: invalid IRI " + iri);
    if (extra_predicates.count(iri) != 0) {
      throw std::invalid_argument("extra_predicates: overlaps label predicate " + iri);
    }
  }
  for (const auto& iri : extra_predicates) {
    if (!is_valid_iri(iri)) throw std::invalid_argument("extra_predicates: invalid IRI " + iri);
  }
  for (const auto& lang : languages) {
    if (lang.empty() || lang != ascii_lower(lang)) {
      throw std::invalid_argument("languages: tags must be non-empty lower case, got '" + lang + "'");
    }
  }
}

std::string IngestFilter::canonical_text() const {
  std::ostringstream out;
  for (const auto& [iri, rel] : hierarchy_predicates) {
    out << "hierarchy\t" << iri << '\t' << relation_name(rel) << '\n';
  }
  for (const auto& [iri, kind] : label_predicates) {
    out << "label\t" << iri << '\t' << label_kind_name(kind) << '\n';
  }
  for (const auto& lang : languages) out << "language\t" << lang << '\n';
  for (const auto& iri : extra_predicates) out << "extra\t" << iri << '\n';
  out << "case_fold\t" << (normalize.case_fold ? 1 : 0) << '\n';
  return out.str();
}

std::string IngestFilter::fingerprint() const {
  return sha256_hex(canonical_text()).substr(0, 16);
}

namespace {

IngestFilter parse_canonical_filter(std::string_view text) {
  IngestFilter f;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string col;
    while (std::getline(ls, col, '\t')) cols.push_back(col);
    if (cols.empty()) continue;
    if (cols[0] == "hierarchy" && cols.size() == 3) {
      f.hierarchy_predicates[cols[1]] =
          cols[2] == "subClassOf" ? Relation::kSubClassOf : Relation::kInstanceOf;
    } else if (cols[0] == "label" && cols.size() == 3) {
      f.label_predicates[cols[1]] =
          cols[2] == "representative" ? LabelKind::kRepresentative : LabelKind::kAlias;
    } else if (cols[0] == "language" && cols.size() == 2) {
      f.languages.insert(cols[1]);
    } else if (cols[0] == "extra" && cols.size() == 2) {
      f.extra_predicates.insert(cols[1]);
    } else if (cols[0] == "case_fold" && cols.size() == 2) {
      f.normalize.case_fold = cols[1] == "1";
    } else {
      throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: bad filter line '" + line + "'");
    }
  }
  return f;
}

// Strings are copied into fixed blocks so views stay valid as the table grows.
class Interner {
 public:
  std::uint32_t intern(std::string_view s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    std::string_view stored = store(s);
    auto id = static_cast<std::uint32_t>(strings_.size());
    strings_.push_back(stored);
    index_.emplace(stored, id);
    return id;
  }

  std::size_t size() const { return strings_.size(); }
  std::string_view at(std::uint32_t id) const { return strings_[id]; }

  // Permutation old id -> rank in lexicographic order.
  std::vector<std::uint32_t> sorted_ranks() const {
    std::vector<std::uint32_t> order(strings_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return strings_[a] < strings_[b]; });
    std::vector<std::uint32_t> rank(order.size());
    for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    return rank;
  }

  void release_index() { std::unordered_map<std::string_view, std::uint32_t>().swap(index_); }

 private:
  static constexpr std::size_t kBlock = 1u << 20;

  std::string_view store(std::string_view s) {
    if (s.size() > kBlock / 4) {
      blocks_.push_back(std::make_unique<char[]>(s.size()));
      std::copy(s.begin(), s.end(), blocks_.back().get());
      return {blocks_.back().get(), s.size()};
    }
    if (fill_ == nullptr || used_ + s.size() > kBlock) {
      blocks_.push_back(std::make_unique<char[]>(kBlock));
      fill_ = blocks_.back().get();
      used_ = 0;
    }
    char* dst = fill_ + used_;
    std::copy(s.begin(), s.end(), dst);
    used_ += s.size();
    return {dst, s.size()};
  }

  std::vector<std::unique_ptr<char[]>> blocks_;
  char* fill_ = nullptr;
  std::size_t used_ = 0;
  std::vector<std::string_view> strings_;
  std::unordered_map<std::string_view, std::uint32_t> index_;
};

enum class RecordKind : std::uint8_t { kEdge, kLiteralSubject, kLabel };

struct KeptRecord {
  RecordKind kind;
  std::uint16_t predicate;  // index into the builder's predicate table
  LabelKind label_kind = LabelKind::kRepresentative;
  std::string subject;
  std::string object;  // IRI for edges, normalized label for labels
};

struct ChunkResult {
  std::vector<KeptRecord> records;
  IngestStats stats;
};

struct PredicateSlot {
  std::string iri;
  PredicateRole role;
};

// Read-only per-ingest lookup tables shared by chunk workers.
struct FilterPlan {
  explicit FilterPlan(const IngestFilter& f) : filter(f) {
    for (const auto& [iri, rel] : f.hierarchy_predicates) {
      slots.push_back({iri, rel == Relation::kSubClassOf ? PredicateRole::kSubClassOf
                                                          : PredicateRole::kInstanceOf});
    }
    for (const auto& iri : f.extra_predicates) slots.push_back({iri, PredicateRole::kExtra});
  }

  const IngestFilter& filter;
  std::vector<PredicateSlot> slots;

  std::optional<std::uint16_t> slot(std::string_view iri) const {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].iri == iri) return static_cast<std::uint16_t>(i);
    }
    return std::nullopt;
  }

  std::optional<LabelKind> label_kind(std::string_view iri) const {
    for (const auto& [p, kind] : filter.label_predicates) {
      if (p == iri) return kind;
    }
    return std::nullopt;
  }
};

void drop(IngestStats& st, std::string_view predicate, const char* reason) {
  ++st.dropped;
  ++st.drop_reasons[reason];
  if (!predicate.empty()) ++st.by_predicate[std::string(predicate)].dropped;
}

void process_line(std::string_view line, const FilterPlan& plan, ChunkResult& out) {
  IngestStats& st = out.stats;
  ++st.total_lines;
  RawTriple t;
  switch (parse_ntriples_line(line, &t)) {
    case LineStatus::kBlankOrComment:
      ++st.blank_or_comment;
      drop(st, {}, "blank-or-comment");
      return;
    case LineStatus::kMalformed:
      ++st.malformed;
      return;
    case LineStatus::kTriple:
      break;
  }
  auto pred = unescape_ntriples(t.predicate.value);
  if (!pred) {
    ++st.malformed;
    return;
  }

  auto keep = [&](KeptRecord rec) {
    ++st.kept;
    st.kept_bytes += line.size() + 1;
    ++st.by_predicate[*pred].kept;
    out.records.push_back(std::move(rec));
  };

  if (auto kind = plan.label_kind(*pred)) {
    if (t.subject.type != TermType::kIri) return drop(st, *pred, "blank-node");
    if (t.object.type != TermType::kLiteral) return drop(st, *pred, "non-literal-label");
    if (!t.object.datatype.empty()) return drop(st, *pred, "typed-literal");
    if (t.object.lang.empty()) return drop(st, *pred, "untagged-literal");
    if (plan.filter.languages.count(ascii_lower(t.object.lang)) == 0) {
      return drop(st, *pred, "language");
    }
    auto subject = unescape_ntriples(t.subject.value);
    auto lexical = unescape_ntriples(t.object.value);
    if (!subject || !lexical) {
      ++st.malformed;
      return;
    }
    std::string norm = normalize_term(*lexical, plan.filter.normalize);
    if (norm.empty()) return drop(st, *pred, "empty-label");
    keep({RecordKind::kLabel, 0, *kind, std::move(*subject), std::move(norm)});
    return;
  }

  auto slot = plan.slot(*pred);
  if (!slot) return drop(st, *pred, "predicate-not-kept");
  if (t.subject.type != TermType::kIri) return drop(st, *pred, "blank-node");
  auto subject = unescape_ntriples(t.subject.value);
  if (!subject) {
    ++st.malformed;
    return;
  }
  const bool extra = plan.slots[*slot].role == PredicateRole::kExtra;
  if (t.object.type == TermType::kIri) {
    auto object = unescape_ntriples(t.object.value);
    if (!object) {
      ++st.malformed;
      return;
    }
    keep({RecordKind::kEdge, *slot, LabelKind::kRepresentative, std::move(*subject),
          std::move(*object)});
    return;
  }
  if (!extra) return drop(st, *pred, "non-iri-object");
  keep({RecordKind::kLiteralSubject, *slot, LabelKind::kRepresentative, std::move(*subject), {}});
}

ChunkResult process_chunk(std::string_view chunk, const FilterPlan& plan) {
  ChunkResult out;
  std::size_t pos = 0;
  while (pos < chunk.size()) {
    std::size_t nl = chunk.find('\n', pos);
    if (nl == std::string_view::npos) nl = chunk.size();
    process_line(chunk.substr(pos, nl - pos), plan, out);
    pos = nl + 1;
  }
  out.stats.bytes_read = chunk.size();
  return out;
}

void merge_stats(IngestStats& into, const IngestStats& from) {
  into.total_lines += from.total_lines;
  into.kept += from.kept;
  into.dropped += from.dropped;
  into.malformed += from.malformed;
  into.blank_or_comment += from.blank_or_comment;
  into.bytes_read += from.bytes_read;
  into.kept_bytes += from.kept_bytes;
  for (const auto& [p, t] : from.by_predicate) {
    auto& dst = into.by_predicate[p];
    dst.kept += t.kept;
    dst.dropped += t.dropped;
  }
  for (const auto& [r, n] : from.drop_reasons) into.drop_reasons[r] += n;
}

}  // namespace

// ---------------------------------------------------------------------------
// StoreBuilder

class StoreBuilder {
 public:
  explicit StoreBuilder(const FilterPlan& plan)
      : plan_(plan), edges_(plan.slots.size()), literal_subjects_(plan.slots.size()) {}

  void add(const KeptRecord& rec) {
    std::uint32_t s = entities_.intern(rec.subject);
    switch (rec.kind) {
      case RecordKind::kEdge:
        edges_[rec.predicate].emplace_back(s, entities_.intern(rec.object));
        break;
      case RecordKind::kLiteralSubject:
        literal_subjects_[rec.predicate].push_back(s);
        break;
      case RecordKind::kLabel:
        labels_.push_back({labels_text_.intern(rec.object), rec.label_kind, s});
        break;
    }
  }

  HierStore finish() {
    HierStore store;
    store.filter_ = plan_.filter;

    const std::vector<std::uint32_t> rank = entities_.sorted_ranks();
    entities_.release_index();
    std::vector<std::uint32_t> by_rank(rank.size());
    for (std::uint32_t i = 0; i < rank.size(); ++i) by_rank[rank[i]] = i;
    store.iri_offsets_.reserve(rank.size() + 1);
    store.iri_offsets_.push_back(0);
    for (std::uint32_t old : by_rank) {
      store.iri_blob_.append(entities_.at(old));
      store.iri_offsets_.push_back(store.iri_blob_.size());
    }
    auto remap = [&](std::uint32_t old) { return EntityId{rank[old]}; };

    for (std::size_t i = 0; i < plan_.slots.size(); ++i) {
      HierStore::PredicateData pd;
      pd.iri = plan_.slots[i].iri;
      pd.role = plan_.slots[i].role;
      std::vector<std::pair<EntityId, EntityId>> up;
      up.reserve(edges_[i].size());
      for (auto [s, o] : edges_[i]) up.emplace_back(remap(s), remap(o));
      std::vector<std::pair<std::uint32_t, std::uint32_t>>().swap(edges_[i]);
      pd.up = make_adjacency(up);
      for (auto& e : up) std::swap(e.first, e.second);
      pd.down = make_adjacency(up);
      for (std::uint32_t s : literal_subjects_[i]) pd.literal_subjects.push_back(remap(s));
      std::vector<std::uint32_t>().swap(literal_subjects_[i]);
      canonicalize(pd.literal_subjects);
      store.predicates_.push_back(std::move(pd));
    }

    const std::vector<std::uint32_t> label_rank = labels_text_.sorted_ranks();
    store.labels_.resize(label_rank.size());
    for (std::uint32_t i = 0; i < label_rank.size(); ++i) {
      store.labels_[label_rank[i]] = std::string(labels_text_.at(i));
    }
    store.label_entries_.reserve(labels_.size());
    for (const auto& l : labels_) {
      store.label_entries_.push_back({label_rank[l.label], l.kind, remap(l.entity)});
    }
    std::sort(store.label_entries_.begin(), store.label_entries_.end());
    store.label_entries_.erase(
        std::unique(store.label_entries_.begin(), store.label_entries_.end()),
        store.label_entries_.end());
    store.rebuild_derived();
    return store;
  }

 private:
  struct PendingLabel {
    std::uint32_t label;
    LabelKind kind;
    std::uint32_t entity;
  };

  static HierStore::Adjacency make_adjacency(std::vector<std::pair<EntityId, EntityId>>& pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    HierStore::Adjacency adj;
    adj.keys.reserve(pairs.size());
    adj.values.reserve(pairs.size());
    for (auto [k, v] : pairs) {
      adj.keys.push_back(k);
      adj.values.push_back(v);
    }
    return adj;
  }

  const FilterPlan& plan_;
  Interner entities_;
  Interner labels_text_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges_;
  std::vector<std::vector<std::uint32_t>> literal_subjects_;
  std::vector<PendingLabel> labels_;
};

// ---------------------------------------------------------------------------
// HierStore queries

std::span<const EntityId> HierStore::Adjacency::row(EntityId key) const {
  auto [lo, hi] = std::equal_range(keys.begin(), keys.end(), key);
  return {values.data() + (lo - keys.begin()), static_cast<std::size_t>(hi - lo)};
}

void HierStore::rebuild_derived() {
  labels_by_entity_.clear();
  labels_by_entity_.reserve(label_entries_.size());
  for (const auto& e : label_entries_) labels_by_entity_.emplace_back(e.entity, e.label);
  std::sort(labels_by_entity_.begin(), labels_by_entity_.end());
  labels_by_entity_.erase(std::unique(labels_by_entity_.begin(), labels_by_entity_.end()),
                          labels_by_entity_.end());
}

std::string_view HierStore::iri(EntityId id) const {
  if (id.value + 1 >= iri_offsets_.size()) return {};
  return std::string_view(iri_blob_).substr(iri_offsets_[id.value],
                                            iri_offsets_[id.value + 1] - iri_offsets_[id.value]);
}

std::optional<EntityId> HierStore::find(std::string_view iri_text) const {
  std::uint32_t lo = 0, hi = static_cast<std::uint32_t>(entity_count());
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (iri(EntityId{mid}) < iri_text) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < entity_count() && iri(EntityId{lo}) == iri_text) return EntityId{lo};
  return std::nullopt;
}

std::optional<PredicateId> HierStore::predicate(std::string_view iri_text) const {
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    if (predicates_[i].iri == iri_text) return PredicateId{static_cast<std::uint16_t>(i)};
  }
  return std::nullopt;
}

std::vector<PredicateId> HierStore::predicates_with(Relation r) const {
  const PredicateRole want =
      r == Relation::kSubClassOf ? PredicateRole::kSubClassOf : PredicateRole::kInstanceOf;
  std::vector<PredicateId> out;
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    if (predicates_[i].role == want) out.push_back(PredicateId{static_cast<std::uint16_t>(i)});
  }
  return out;
}

std::span<const EntityId> HierStore::row(PredicateId p, Direction dir, EntityId e) const {
  if (p.value >= predicates_.size()) return {};
  const auto& pd = predicates_[p.value];
  return dir == Direction::kUp ? pd.up.row(e) : pd.down.row(e);
}

EntitySet HierStore::neighbors(EntityId e, Direction dir,
                               std::span<const PredicateId> preds) const {
  EntitySet out;
  for (PredicateId p : preds) {
    auto r = row(p, dir, e);
    out.insert(out.end(), r.begin(), r.end());
  }
  if (preds.size() > 1) canonicalize(out);
  return out;
}

EntitySet HierStore::neighbors(EntityId e, Direction dir, Relation r) const {
  return neighbors(e, dir, predicates_with(r));
}

EntitySet HierStore::neighbors(EntityId e, Direction dir,
                               std::initializer_list<Relation> rs) const {
  std::vector<PredicateId> preds;
  for (Relation r : rs) {
    auto p = predicates_with(r);
    preds.insert(preds.end(), p.begin(), p.end());
  }
  return neighbors(e, dir, preds);
}

bool HierStore::has_property(EntityId e, PredicateId p) const {
  if (p.value >= predicates_.size()) return false;
  const auto& pd = predicates_[p.value];
  return !pd.up.row(e).empty() || contains(pd.literal_subjects, e);
}

bool HierStore::has_outgoing_hierarchy_edge(EntityId e) const {
  for (const auto& pd : predicates_) {
    if (pd.role != PredicateRole::kExtra && !pd.up.row(e).empty()) return true;
  }
  return false;
}

EntitySet HierStore::lookup_normalized(std::string_view normalized,
                                       std::span<const LabelKind> kinds) const {
  EntitySet out;
  auto it = std::lower_bound(labels_.begin(), labels_.end(), normalized,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == labels_.end() || *it != normalized) return out;
  const auto label = static_cast<std::uint32_t>(it - labels_.begin());
  for (LabelKind k : kinds) {
    auto lo = std::lower_bound(label_entries_.begin(), label_entries_.end(),
                               LabelEntry{label, k, EntityId{0}});
    for (; lo != label_entries_.end() && lo->label == label && lo->kind == k; ++lo) {
      out.push_back(lo->entity);
    }
  }
  canonicalize(out);
  return out;
}

EntitySet HierStore::lookup_label(std::string_view term,
                                  std::initializer_list<LabelKind> kinds) const {
  return lookup_normalized(normalize_term(term, filter_.normalize),
                           std::span<const LabelKind>(kinds.begin(), kinds.size()));
}

std::vector<std::string_view> HierStore::labels_of(EntityId e) const {
  std::vector<std::string_view> out;
  auto lo = std::lower_bound(labels_by_entity_.begin(), labels_by_entity_.end(),
                             std::pair<EntityId, std::uint32_t>{e, 0});
  for (; lo != labels_by_entity_.end() && lo->first == e; ++lo) out.push_back(labels_[lo->second]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view HierStore::display_label(EntityId e) const {
  auto lo = std::lower_bound(labels_by_entity_.begin(), labels_by_entity_.end(),
                             std::pair<EntityId, std::uint32_t>{e, 0});
  std::string_view fallback;
  for (; lo != labels_by_entity_.end() && lo->first == e; ++lo) {
    if (std::binary_search(label_entries_.begin(), label_entries_.end(),
                           LabelEntry{lo->second, LabelKind::kRepresentative, e})) {
      return labels_[lo->second];
    }
    if (fallback.empty()) fallback = labels_[lo->second];
  }
  return fallback;
}

std::uint64_t HierStore::label_count(LabelKind k) const {
  return static_cast<std::uint64_t>(std::count_if(
      label_entries_.begin(), label_entries_.end(), [k](const LabelEntry& e) { return e.kind == k; }));
}

bool operator==(const HierStore& a, const HierStore& b) {
  if (!(a.filter_ == b.filter_) || a.iri_blob_ != b.iri_blob_ || a.iri_offsets_ != b.iri_offsets_ ||
      a.labels_ != b.labels_ || a.label_entries_ != b.label_entries_ ||
      a.predicates_.size() != b.predicates_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.predicates_.size(); ++i) {
    const auto& x = a.predicates_[i];
    const auto& y = b.predicates_[i];
    if (x.iri != y.iri || x.role != y.role || !(x.up == y.up) || !(x.down == y.down) ||
        x.literal_subjects != y.literal_subjects) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ingest

namespace {

IngestResult ingest_source(ByteSource& src, const IngestFilter& filter, const IngestOptions& opts) {
  filter.validate();
  FilterPlan plan(filter);
  StoreBuilder builder(plan);
  IngestStats stats;
  const unsigned workers = std::max(1u, opts.workers);
  std::uint64_t next_progress = 1'000'000;

  ChunkReader reader(src, opts.chunk_bytes);
  bool done = false;
  while (!done) {
    std::vector<std::string> batch;
    for (unsigned i = 0; i < workers; ++i) {
      std::string chunk;
      if (!reader.next(&chunk)) {
        done = true;
        break;
      }
      batch.push_back(std::move(chunk));
    }
    std::vector<ChunkResult> results(batch.size());
    if (batch.size() == 1) {
      results[0] = process_chunk(batch[0], plan);
    } else if (!batch.empty()) {
      std::vector<std::future<ChunkResult>> futures;
      for (const auto& chunk : batch) {
        futures.push_back(std::async(std::launch::async,
                                     [&plan, &chunk] { return process_chunk(chunk, plan); }));
      }
      for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    }
    for (auto& r : results) {
      for (const auto& rec : r.records) builder.add(rec);
      merge_stats(stats, r.stats);
    }
    if (opts.progress && stats.total_lines >= next_progress) {
      opts.progress(stats.total_lines);
      next_progress = (stats.total_lines / 1'000'000 + 1) * 1'000'000;
    }
  }

  IngestResult result{builder.finish(), std::move(stats)};
  if (result.stats.kept == 0) result.stats.warnings.push_back("no triples kept; store is empty");
  return result;
}

}  // namespace

IngestResult ingest(std::istream& in, const IngestFilter& filter, const IngestOptions& opts) {
  StreamSource src(in);
  return ingest_source(src, filter, opts);
}

IngestResult ingest_file(const std::filesystem::path& path, const IngestFilter& filter,
                         const IngestOptions& opts) {
  auto src = open_source(path);
  return ingest_source(*src, filter, opts);
}

std::string ingest_report_tsv(const IngestStats& st) {
  std::ostringstream out;
  out << "predicate\tkept\tdropped\tmalformed\n";
  for (const auto& [p, t] : st.by_predicate) {
    out << p << '\t' << t.kept << '\t' << t.dropped << "\t0\n";
  }
  out << "#blank_or_comment\t0\t" << st.blank_or_comment << "\t0\n";
  out << "#malformed\t0\t0\t" << st.malformed << '\n';
  out << "#total\t" << st.kept << '\t' << st.dropped << '\t' << st.malformed << '\n';
  for (const auto& [r, n] : st.drop_reasons) out << "#drop:" << r << "\t0\t" << n << "\t0\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Snapshot
//
// Layout (little endian): "ONTOSNAP", u32 version, 16-byte filter
// fingerprint, u64 counts {entities, predicates, edges, label entries},
// filter text, interning table, per-predicate edge lists, label index, and a
// trailing CRC-32 over every preceding byte.

namespace {

constexpr std::string_view kMagic = "ONTOSNAP";

class Writer {
 public:
  template <typename T>
  void pod(T v) {
    out_.append(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void bytes(std::string_view s) {
    pod<std::uint64_t>(s.size());
    out_.append(s);
  }
  void ids(const std::vector<EntityId>& v) {
    pod<std::uint64_t>(v.size());
    for (EntityId id : v) pod(id.value);
  }
  std::string& buffer() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename T>
  T pod() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }
  std::string bytes() { return std::string(raw(count(1))); }
  std::vector<EntityId> ids() {
    std::vector<EntityId> v(count(4));
    for (auto& id : v) id.value = pod<std::uint32_t>();
    return v;
  }
  std::uint64_t count(std::size_t elem_size) {
    auto n = pod<std::uint64_t>();
    if (n > (data_.size() - pos_) / elem_size) truncated();
    return n;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) truncated();
  }
  [[noreturn]] static void truncated() {
    throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: truncated or inconsistent body");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_snapshot(const HierStore& store, const std::filesystem::path& path) {
  Writer w;
  w.buffer().append(kMagic);
  w.pod(kSnapshotVersion);
  w.buffer().append(store.filter_.fingerprint());
  std::uint64_t edges = 0;
  for (const auto& p : store.predicates_) edges += p.up.size();
  w.pod<std::uint64_t>(store.entity_count());
  w.pod<std::uint64_t>(store.predicates_.size());
  w.pod<std::uint64_t>(edges);
  w.pod<std::uint64_t>(store.label_entries_.size());

  w.bytes(store.filter_.canonical_text());
  w.bytes(store.iri_blob_);
  w.pod<std::uint64_t>(store.iri_offsets_.size());
  for (auto off : store.iri_offsets_) w.pod(off);
  for (const auto& p : store.predicates_) {
    w.bytes(p.iri);
    w.pod(static_cast<std::uint8_t>(p.role));
    w.ids(p.up.keys);
    w.ids(p.up.values);
    w.ids(p.literal_subjects);
  }
  w.pod<std::uint64_t>(store.labels_.size());
  for (const auto& l : store.labels_) w.bytes(l);
  w.pod<std::uint64_t>(store.label_entries_.size());
  for (const auto& e : store.label_entries_) {
    w.pod(e.label);
    w.pod(static_cast<std::uint8_t>(e.kind));
    w.pod(e.entity.value);
  }
  w.pod(crc32(w.buffer()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError(SnapshotError::Kind::kIo, "cannot write snapshot " + path.string());
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw SnapshotError(SnapshotError::Kind::kIo, "short write on " + path.string());
}

HierStore load_snapshot(const std::filesystem::path& path,
                        const std::optional<std::string>& expected_fingerprint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(SnapshotError::Kind::kIo, "cannot read snapshot " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (data.size() < kMagic.size() || std::string_view(data).substr(0, kMagic.size()) != kMagic) {
    throw SnapshotError(SnapshotError::Kind::kFormat,
                        "snapshot: bad magic bytes in " + path.string());
  }
  Reader header(std::string_view(data).substr(kMagic.size()));
  const auto version = header.pod<std::uint32_t>();
  if (version != kSnapshotVersion) {
    throw SnapshotError(SnapshotError::Kind::kVersion,
                        "snapshot: format version " + std::to_string(version) +
                            " but this build reads version " + std::to_string(kSnapshotVersion));
  }
  if (data.size() < kMagic.size() + 4 + 16 + 32 + 4) {
    throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: file too short");
  }
  const std::string_view body = std::string_view(data).substr(0, data.size() - 4);
  std::uint32_t stored_crc = 0;
  std::memcpy(&stored_crc, data.data() + body.size(), 4);
  if (crc32(body) != stored_crc) {
    throw SnapshotError(SnapshotError::Kind::kChecksum,
                        "snapshot: checksum mismatch, file is corrupt: " + path.string());
  }

  Reader r(body.substr(kMagic.size() + 4));
  const std::string fingerprint(r.raw(16));
  if (expected_fingerprint && *expected_fingerprint != fingerprint) {
    throw SnapshotError(SnapshotError::Kind::kFingerprint,
                        "snapshot: filter fingerprint " + fingerprint +
                            " does not match expected " + *expected_fingerprint);
  }
  const auto n_entities = r.pod<std::uint64_t>();
  const auto n_predicates = r.pod<std::uint64_t>();
  const auto n_edges = r.pod<std::uint64_t>();
  const auto n_label_entries = r.pod<std::uint64_t>();

  HierStore store;
  store.filter_ = parse_canonical_filter(r.bytes());
  if (store.filter_.fingerprint() != fingerprint) {
    throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: header fingerprint disagrees with filter");
  }
  store.iri_blob_ = r.bytes();
  store.iri_offsets_.resize(r.count(8));
  for (auto& off : store.iri_offsets_) off = r.pod<std::uint64_t>();
  if (store.entity_count() != n_entities) {
    throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: entity count mismatch");
  }
  std::uint64_t edges = 0;
  for (std::uint64_t i = 0; i < n_predicates; ++i) {
    HierStore::PredicateData p;
    p.iri = r.bytes();
    p.role = static_cast<PredicateRole>(r.pod<std::uint8_t>());
    p.up.keys = r.ids();
    p.up.values = r.ids();
    p.literal_subjects = r.ids();
    if (p.up.keys.size() != p.up.values.size()) {
      throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: ragged edge list");
    }
    std::vector<std::pair<EntityId, EntityId>> down;
    down.reserve(p.up.size());
    for (std::size_t k = 0; k < p.up.size(); ++k) down.emplace_back(p.up.values[k], p.up.keys[k]);
    std::sort(down.begin(), down.end());
    for (auto [key, value] : down) {
      p.down.keys.push_back(key);
      p.down.values.push_back(value);
    }
    edges += p.up.size();
    store.predicates_.push_back(std::move(p));
  }
  if (edges != n_edges) throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: edge count mismatch");
  store.labels_.resize(r.count(8));
  for (auto& l : store.labels_) l = r.bytes();
  store.label_entries_.resize(r.count(9));
  for (auto& e : store.label_entries_) {
    e.label = r.pod<std::uint32_t>();
    e.kind = static_cast<LabelKind>(r.pod<std::uint8_t>());
    e.entity.value = r.pod<std::uint32_t>();
  }
  if (store.label_entries_.size() != n_label_entries || !r.done()) {
    throw SnapshotError(SnapshotError::Kind::kFormat, "snapshot: label section mismatch");
  }
  store.rebuild_derived();
  return store;
}

}  // namespace ontoseed
