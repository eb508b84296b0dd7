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

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ontoseed/ntriples.hpp"
#include "ontoseed/store.hpp"
#include "ontoseed/text.hpp"
#include "test_support.hpp"

using namespace ontoseed;
using namespace ontoseed::testing;

namespace {

IngestResult ingest_text(const std::string& nt, const IngestFilter& filter = wikidata_filter(),
                         unsigned workers = 1, std::size_t chunk = 4u << 20) {
  std::istringstream in(nt);
  IngestOptions opts;
  opts.workers = workers;
  opts.chunk_bytes = chunk;
  return ingest(in, filter, opts);
}

std::uint64_t hierarchy_edges(const HierStore& s) {
  std::uint64_t n = 0;
  for (std::uint16_t i = 0; i < s.predicate_count(); ++i) {
    if (s.predicate_role(PredicateId{i}) != PredicateRole::kExtra) n += s.edge_count(PredicateId{i});
  }
  return n;
}

// Random N-Triples with hierarchy, label, extra and noise lines.
std::vector<std::string> random_lines(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> ent(0, 30), kind(0, 9);
  std::vector<std::string> lines;
  for (int i = 0; i < n; ++i) {
    std::string s = "Q" + std::to_string(ent(rng));
    std::string o = "Q" + std::to_string(ent(rng));
    switch (kind(rng)) {
      case 0: case 1: case 2: lines.push_back(edge(s, "P279", o)); break;
      case 3: case 4: lines.push_back(edge(s, "P31", o)); break;
      case 5: lines.push_back(label(s, "l" + o)); break;
      case 6: lines.push_back(label(s, "a" + o, "ja", true)); break;
      case 7: lines.push_back(edge(s, "P131", o)); break;
      case 8: lines.push_back(label(s, "x", "en")); break;
      default: lines.push_back("garbage line " + s + "\n"); break;
    }
  }
  return lines;
}

}  // namespace

TEST_CASE("F0 ingest keeps the filtered triples") {
  auto r = ingest_text(fixture_f0());
  CHECK(hierarchy_edges(r.store) == 2);
  CHECK(r.store.label_entry_count() == 2);
  CHECK(r.stats.kept == 4);
  CHECK(r.stats.dropped == 1);
  CHECK(r.stats.malformed == 0);
  CHECK(r.stats.total_lines == 5);
  CHECK(r.stats.warnings.empty());
}

TEST_CASE("empty stream gives an empty store with a warning") {
  auto r = ingest_text("");
  CHECK(r.store.entity_count() == 0);
  CHECK(r.stats.kept == 0);
  CHECK(r.stats.dropped == 0);
  CHECK(r.stats.total_lines == 0);
  CHECK(r.stats.warnings.size() == 1);
}

TEST_CASE("F0 with English only drops both labels") {
  auto r = ingest_text(fixture_f0(), wikidata_filter({"en"}));
  CHECK(hierarchy_edges(r.store) == 2);
  CHECK(r.store.label_entry_count() == 0);
  CHECK(r.stats.dropped == 3);
  CHECK(r.stats.drop_reasons.at("language") == 2);
}

TEST_CASE("neighbors on F0") {
  auto s = make_store(fixture_f0());
  auto q1 = id_of(s, "Q1");
  auto p279 = *s.predicate(kP279);
  auto p31 = *s.predicate(kP31);
  std::vector<PredicateId> sub{p279}, both{p279, p31};
  CHECK(names(s, s.neighbors(q1, Direction::kUp, sub)) == std::vector<std::string>{"Q2"});
  CHECK(names(s, s.neighbors(q1, Direction::kUp, both)) == std::vector<std::string>{"Q2", "Q3"});
  CHECK(names(s, s.neighbors(id_of(s, "Q2"), Direction::kDown, sub)) ==
        std::vector<std::string>{"Q1"});
  // Unknown entity: empty, not an error. Q9 was filtered so it is not interned.
  CHECK_FALSE(s.find(wd("Q9")).has_value());
  CHECK(s.neighbors(EntityId{999}, Direction::kUp, both).empty());
}

TEST_CASE("lookup_label on F0") {
  auto s = make_store(fixture_f0());
  using K = LabelKind;
  CHECK(names(s, s.lookup_label("poly", {K::kRepresentative})) == std::vector<std::string>{"Q1"});
  CHECK(s.lookup_label("pol", {K::kRepresentative}).empty());
  CHECK(names(s, s.lookup_label("pol", {K::kRepresentative, K::kAlias})) ==
        std::vector<std::string>{"Q1"});
  CHECK(s.lookup_label("nothing", {K::kRepresentative, K::kAlias}).empty());
  // Lookup applies the same normalization as ingest.
  CHECK(names(s, s.lookup_label("　poly ", {K::kRepresentative})) ==
        std::vector<std::string>{"Q1"});
}

TEST_CASE("labels are stored in NFC") {
  // "e" + combining acute vs precomposed U+00E9.
  auto s = make_store(label("Q1", "caf\\u0065\\u0301") + edge("Q1", "P279", "Q2"));
  CHECK(names(s, s.lookup_label("café", {LabelKind::kRepresentative})) ==
        std::vector<std::string>{"Q1"});
}

TEST_CASE("case folding is opt in") {
  auto nt = label("Q1", "Ester", "en");
  CHECK(make_store(nt, wikidata_filter({"en"})).lookup_label("ester", {LabelKind::kRepresentative}).empty());
  auto f = wikidata_filter({"en"});
  f.normalize.case_fold = true;
  CHECK(make_store(nt, f).lookup_label("ESTER", {LabelKind::kRepresentative}).size() == 1);
}

TEST_CASE("literal and object edge cases") {
  std::string nt =
      "<" + wd("Q1") + "> <" + kRdfsLabel + "> \"12\"^^<http://www.w3.org/2001/XMLSchema#int> .\n" +
      "<" + wd("Q1") + "> <" + kRdfsLabel + "> \"plain\" .\n" +
      "<" + wd("Q1") + "> <" + kP279 + "> \"not an iri\" .\n" +
      "_:b1 <" + kP279 + "> <" + wd("Q2") + "> .\n" +
      "<" + wd("Q1") + "> <" + wdt("P131") + "> \"literal value\"@en .\n" +
      "# comment\n\n" +
      "<broken\n" +
      label("Q1", "ok", "JA");
  auto r = ingest_text(nt, wikidata_filter({"ja"}, {"P131"}));
  CHECK(r.stats.total_lines == 9);
  CHECK(r.stats.drop_reasons.at("typed-literal") == 1);
  CHECK(r.stats.drop_reasons.at("untagged-literal") == 1);
  CHECK(r.stats.drop_reasons.at("non-iri-object") == 1);
  CHECK(r.stats.drop_reasons.at("blank-node") == 1);
  CHECK(r.stats.blank_or_comment == 2);
  CHECK(r.stats.malformed == 1);
  CHECK(r.stats.kept == 2);  // the P131 literal subject and the JA label
  CHECK(r.stats.kept + r.stats.dropped + r.stats.malformed == r.stats.total_lines);
  auto q1 = id_of(r.store, "Q1");
  CHECK(r.store.has_property(q1, *r.store.predicate(wdt("P131"))));
  CHECK_FALSE(r.store.has_outgoing_hierarchy_edge(q1));
  CHECK(r.store.lookup_label("ok", {LabelKind::kRepresentative}).size() == 1);
}

TEST_CASE("line accounting and inverse adjacency hold on random input") {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    auto lines = random_lines(rng, 80);
    std::string nt;
    for (const auto& l : lines) nt += l;
    auto filter = wikidata_filter({"ja"}, {"P131"});
    auto r = ingest_text(nt, filter);
    CHECK(r.stats.kept + r.stats.dropped + r.stats.malformed == r.stats.total_lines);
    CHECK(r.stats.total_lines == lines.size());

    const auto& s = r.store;
    for (std::uint16_t p = 0; p < s.predicate_count(); ++p) {
      std::uint64_t up_total = 0;
      for (std::uint32_t e = 0; e < s.entity_count(); ++e) {
        auto ups = s.row(PredicateId{p}, Direction::kUp, EntityId{e});
        up_total += ups.size();
        for (EntityId x : ups) {
          auto downs = s.row(PredicateId{p}, Direction::kDown, x);
          CHECK(std::binary_search(downs.begin(), downs.end(), EntityId{e}));
        }
        auto downs = s.row(PredicateId{p}, Direction::kDown, EntityId{e});
        for (EntityId x : downs) {
          auto back = s.row(PredicateId{p}, Direction::kUp, x);
          CHECK(std::binary_search(back.begin(), back.end(), EntityId{e}));
        }
      }
      CHECK(up_total == s.edge_count(PredicateId{p}));
    }

    // Order insensitivity, including chunked parallel ingest.
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (const auto& l : lines) shuffled += l;
    auto r2 = ingest_text(shuffled, filter, 3, 4096);
    CHECK(r2.store == r.store);
    CHECK(r2.stats.kept == r.stats.kept);
  }
}

TEST_CASE("gzip input is selected by extension") {
  TempDir dir;
  auto gz = dir / "f0.nt.gz";
  {
    gzFile f = gzopen(gz.c_str(), "wb");
    std::string text = fixture_f0();
    gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
  }
  auto plain = dir / "f0.nt";
  std::ofstream(plain) << fixture_f0();
  auto a = ingest_file(gz, wikidata_filter());
  auto b = ingest_file(plain, wikidata_filter());
  CHECK(a.store == b.store);
  CHECK(a.stats.kept == 4);
  CHECK_THROWS_AS(ingest_file(dir / "missing.nt", wikidata_filter()), IngestError);
}

TEST_CASE("truncated gzip reports an ingest error with an offset") {
  TempDir dir;
  auto gz = dir / "bad.nt.gz";
  std::string text;
  for (int i = 0; i < 20000; ++i) text += edge("Q" + std::to_string(i), "P279", "Q1");
  {
    gzFile f = gzopen(gz.c_str(), "wb");
    gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
  }
  auto size = std::filesystem::file_size(gz);
  std::filesystem::resize_file(gz, size / 2);
  try {
    ingest_file(gz, wikidata_filter());
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
  }
}

TEST_CASE("snapshot round trip and refusals") {
  TempDir dir;
  auto store = make_store(fixture_f0());
  auto path = dir / "f0.snap";
  save_snapshot(store, path);
  auto loaded = load_snapshot(path, store.filter().fingerprint());
  CHECK(loaded == store);
  CHECK(names(loaded, loaded.lookup_label("pol", {LabelKind::kAlias})) ==
        std::vector<std::string>{"Q1"});
  CHECK(id_of(loaded, "Q2") == id_of(store, "Q2"));

  SUBCASE("wrong magic") {
    std::ofstream(dir / "bad.snap", std::ios::binary) << "NOTASNAPSHOT-at-all-padding-padding-padding";
    CHECK_THROWS_AS(load_snapshot(dir / "bad.snap"), SnapshotError);
    try {
      load_snapshot(dir / "bad.snap");
    } catch (const SnapshotError& e) {
      CHECK(e.kind() == SnapshotError::Kind::kFormat);
    }
  }
  SUBCASE("fingerprint mismatch in strict mode") {
    auto other = wikidata_filter({"en"}).fingerprint();
    try {
      load_snapshot(path, other);
      FAIL("expected refusal");
    } catch (const SnapshotError& e) {
      CHECK(e.kind() == SnapshotError::Kind::kFingerprint);
      std::string msg = e.what();
      CHECK(msg.find(other) != std::string::npos);
      CHECK(msg.find(store.filter().fingerprint()) != std::string::npos);
    }
  }
  SUBCASE("version mismatch names both versions") {
    std::string bytes;
    {
      std::ifstream in(path, std::ios::binary);
      bytes.assign(std::istreambuf_iterator<char>(in), {});
    }
    std::uint32_t v = 7;
    std::memcpy(bytes.data() + 8, &v, 4);
    std::ofstream(dir / "v7.snap", std::ios::binary) << bytes;
    try {
      load_snapshot(dir / "v7.snap");
      FAIL("expected refusal");
    } catch (const SnapshotError& e) {
      CHECK(e.kind() == SnapshotError::Kind::kVersion);
      std::string msg = e.what();
      CHECK(msg.find("version 7") != std::string::npos);
      CHECK(msg.find("version 1") != std::string::npos);
    }
  }
  SUBCASE("flipped byte is detected") {
    std::string bytes;
    {
      std::ifstream in(path, std::ios::binary);
      bytes.assign(std::istreambuf_iterator<char>(in), {});
    }
    bytes[bytes.size() / 2] ^= 0x20;
    std::ofstream(dir / "flip.snap", std::ios::binary) << bytes;
    try {
      load_snapshot(dir / "flip.snap");
      FAIL("expected corruption error");
    } catch (const SnapshotError& e) {
      CHECK(e.kind() == SnapshotError::Kind::kChecksum);
    }
  }
}

TEST_CASE("filter validation") {
  auto f = wikidata_filter();
  CHECK_NOTHROW(f.validate());
  auto empty = f;
  empty.hierarchy_predicates.clear();
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  auto overlap = f;
  overlap.label_predicates[kP279] = LabelKind::kAlias;
  CHECK_THROWS_AS(overlap.validate(), std::invalid_argument);
  auto bad = f;
  bad.extra_predicates.insert("not an iri");
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK(f.fingerprint().size() == 16);
  CHECK(f.fingerprint() != wikidata_filter({"en"}).fingerprint());
}

TEST_CASE("ingest report lists predicates and totals") {
  auto r = ingest_text(fixture_f0());
  auto tsv = ingest_report_tsv(r.stats);
  CHECK(tsv.find(kP279 + "\t1\t0\t0\n") != std::string::npos);
  CHECK(tsv.find("http://example.org/unrelated\t0\t1\t0\n") != std::string::npos);
  CHECK(tsv.find("#total\t4\t1\t0\n") != std::string::npos);
}

TEST_CASE("N-Triples line parser") {
  RawTriple t;
  CHECK(parse_ntriples_line("<a:s> <a:p> \"x \\\" y\"@en-GB .", &t) == LineStatus::kTriple);
  CHECK(t.object.lang == "en-GB");
  CHECK(*unescape_ntriples(t.object.value) == "x \" y");
  CHECK(parse_ntriples_line("<a:s> <a:p> <a:o> . # trailing", &t) == LineStatus::kTriple);
  CHECK(parse_ntriples_line("<a:s> <a:p> <a:o>", &t) == LineStatus::kMalformed);
  CHECK(parse_ntriples_line("<a:s> \"p\" <a:o> .", &t) == LineStatus::kMalformed);
  CHECK(parse_ntriples_line("   ", &t) == LineStatus::kBlankOrComment);
  CHECK(*unescape_ntriples("\\u3042\\U0001F600") == "あ\U0001F600");
  CHECK_FALSE(unescape_ntriples("\\q").has_value());
  CHECK_FALSE(unescape_ntriples("\\u12").has_value());
}

TEST_CASE("term normalization") {
  CHECK(normalize_term("　poly　") == "poly");
  CHECK(normalize_term("  ester\t") == "ester");
  CHECK(normalize_term("エステル") == "エステル");
  // Half-width katakana is not NFC-mapped (that would be NFKC).
  CHECK(normalize_term("ｴ") == "ｴ");
  CHECK(normalize_term("Ab", {.case_fold = true}) == "ab");
}
