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

#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "ontoseed/harvest.hpp"
#include "oracle_bridge.hpp"
#include "test_support.hpp"

using namespace ontoseed;
using namespace ontoseed::testing;

namespace {

std::map<std::string, std::uint32_t> depth_map(const HierStore& store, const std::vector<ConceptCandidate>& cs) {
  std::map<std::string, std::uint32_t> out;
  for (const auto& c : cs) out[std::string(iri_local_name(store.iri(c.entity)))] = c.min_depth();
  return out;
}

// True if some rule-obeying path of exactly `depth` hops leads from ecu
// through root to target.
bool replay(const HierStore& store, const Provenance& p, EntityId target) {
  auto sc = store.predicates_with(Relation::kSubClassOf);
  EntitySet first = store.neighbors(p.ecu, Direction::kDown, {Relation::kSubClassOf, Relation::kInstanceOf});
  if (!contains(first, p.subtree_root)) return false;
  if (p.depth == 1) return target == p.subtree_root;
  if (!contains(store.neighbors(p.ecu, Direction::kDown, Relation::kSubClassOf), p.subtree_root)) return false;
  EntitySet layer{p.subtree_root};
  for (std::uint32_t hop = 2; hop <= p.depth; ++hop) {
    EntitySet next;
    bool last = hop == p.depth;
    for (EntityId u : layer) {
      EntitySet kids = last ? store.neighbors(u, Direction::kDown, {Relation::kSubClassOf, Relation::kInstanceOf})
                            : store.neighbors(u, Direction::kDown, Relation::kSubClassOf);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    canonicalize(next);
    layer = std::move(next);
  }
  return contains(layer, target);
}

}  // namespace

TEST_CASE("star fixture") {
  HierStore store = make_store(edge("X", "P279", "E") + edge("Y", "P279", "E") + edge("Z", "P31", "E") +
                               edge("W", "P279", "X"));
  auto cs = expand_down(id_of(store, "E"), 1, store);
  CHECK(depth_map(store, cs) == std::map<std::string, std::uint32_t>{{"X", 1}, {"Y", 1}, {"Z", 1}});
  for (const auto& c : cs) {
    REQUIRE(c.provenance.size() == 1);
    CHECK(c.provenance[0].subtree_root == c.entity);
  }
}

TEST_CASE("chain fixture G3") {
  HierStore store = make_store(edge("X", "P279", "E") + edge("Y", "P279", "X") + edge("s", "P279", "Y") +
                               edge("t", "P279", "s"));
  auto cs = expand_down(id_of(store, "E"), 3, store);
  CHECK(depth_map(store, cs) == std::map<std::string, std::uint32_t>{{"X", 1}, {"Y", 2}, {"s", 3}});
  for (const auto& c : cs) CHECK(c.provenance[0].subtree_root == id_of(store, "X"));
}

TEST_CASE("instanceOf ends the path") {
  HierStore store = make_store(edge("X", "P279", "E") + edge("i", "P31", "X") + edge("j", "P279", "i") +
                               edge("k", "P31", "i"));
  auto cs = expand_down(id_of(store, "E"), 2, store);
  CHECK(depth_map(store, cs) == std::map<std::string, std::uint32_t>{{"X", 1}, {"i", 2}});
  CHECK(depth_map(store, expand_down(id_of(store, "E"), 5, store)) ==
        std::map<std::string, std::uint32_t>{{"X", 1}, {"i", 2}});
  // A root reached only by instanceOf is not expanded either.
  HierStore inst = make_store(edge("r", "P31", "E") + edge("c", "P279", "r"));
  CHECK(depth_map(inst, expand_down(id_of(inst, "E"), 3, inst)) == std::map<std::string, std::uint32_t>{{"r", 1}});
}

TEST_CASE("cycles and nes bound") {
  HierStore store = make_store(edge("X", "P279", "E") + edge("E", "P279", "X") + edge("Y", "P279", "X"));
  auto cs = expand_down(id_of(store, "E"), 4, store);
  CHECK(depth_map(store, cs) == std::map<std::string, std::uint32_t>{{"E", 2}, {"X", 1}, {"Y", 2}});
  CHECK_THROWS_AS(expand_down(id_of(store, "E"), 0, store), std::invalid_argument);
  CHECK(expand_down(id_of(store, "Y"), 2, store).empty());
}

TEST_CASE("merge and report") {
  HierStore store = make_store(edge("X", "P279", "E1") + edge("X", "P279", "E2") + edge("Y", "P279", "E2") +
                               edge("Z", "P279", "Y") + edge("Q", "P279", "E3"));
  EntityId e1 = id_of(store, "E1"), e2 = id_of(store, "E2"), e3 = id_of(store, "E3");
  std::vector<HarvestTarget> targets{{e1, 1}, {e2, 2}, {e3, 1}};
  Harvest h = harvest_all(targets, store, 2);
  CHECK(depth_map(store, h.candidates) ==
        std::map<std::string, std::uint32_t>{{"Q", 1}, {"X", 1}, {"Y", 1}, {"Z", 2}});
  auto x = std::find_if(h.candidates.begin(), h.candidates.end(),
                        [&](const ConceptCandidate& c) { return c.entity == id_of(store, "X"); });
  CHECK(x->provenance.size() == 2);

  const HarvestReport& r = h.report;
  CHECK(r.unique == 4);
  CHECK(r.by_nes.at(1) == 2);  // X, Q
  CHECK(r.by_nes.at(2) == 3);  // X, Y, Z
  CHECK(r.cumulative.at(1) == 2);
  CHECK(r.cumulative.at(2) == 4);
  REQUIRE(r.per_ecu.size() == 3);
  for (const auto& pe : r.per_ecu) {
    if (pe.ecu == e2) CHECK(pe.by_depth == std::vector<std::uint64_t>{2, 1});
  }
  std::string tsv = harvest_report_tsv(r, store);
  CHECK(tsv.rfind("ecu\tnes\tdepth\tcount\n", 0) == 0);
  CHECK(tsv.find("#unique\t\t\t4\n") != std::string::npos);

  // Disjoint harvests add up.
  std::vector<std::vector<ConceptCandidate>> parts{expand_down(e1, 1, store), expand_down(e3, 1, store)};
  CHECK(merge_harvests(parts).size() == parts[0].size() + parts[1].size());
}

TEST_CASE("sparql text") {
  PrefixMap prefixes{{"wd", kWd}, {"wdt", kWdt}};
  std::vector<std::string> sc{kP279}, inst{kP31};
  std::string q1 = emit_sparql(wd("Q11173"), 1, sc, inst, prefixes);
  CHECK(q1.find("wd:Q11173 ^(wdt:P279|wdt:P31) ?item .") != std::string::npos);
  CHECK(q1.find("PREFIX wdt: <" + kWdt + ">") != std::string::npos);
  std::string q2 = emit_sparql(wd("Q11173"), 2, sc, inst, prefixes);
  CHECK(q2.find(" ^wdt:P279/^(wdt:P279|wdt:P31) ?item") != std::string::npos);
  std::string q3 = emit_sparql(wd("Q11173"), 3, sc, inst, prefixes);
  CHECK(q3.find(" ^wdt:P279/^wdt:P279/^(wdt:P279|wdt:P31) ?item") != std::string::npos);
  std::string bare = emit_sparql(wd("Q1"), 1, sc, inst);
  CHECK(bare.find("<" + wd("Q1") + "> ^(<" + kP279 + ">|<" + kP31 + ">)") != std::string::npos);
  CHECK_THROWS_AS(emit_sparql(wd("Q1"), 0, sc, inst), std::invalid_argument);

  HierStore store = make_store(fixture_g1());
  CHECK(emit_sparql(store, id_of(store, "B"), 1, prefixes).find("wd:B ^(wdt:P279|wdt:P31)") != std::string::npos);
}

TEST_CASE("random graphs match the enumeration oracle") {
  std::mt19937 rng(5);
  for (int round = 0; round < 150; ++round) {
    oracle::Graph og = oracle::random_graph(rng);
    if (og.edges.empty()) continue;
    HierStore store = make_store(og.to_ntriples());
    int ecu = og.edges[std::uniform_int_distribution<std::size_t>(0, og.edges.size() - 1)(rng)].parent;
    std::uint32_t nes = std::uniform_int_distribution<std::uint32_t>(1, 4)(rng);
    EntityId e = store_node(store, ecu);
    auto cs = expand_down(e, nes, store);
    std::map<std::pair<int, int>, int> got;
    for (const auto& c : cs) {
      for (const auto& p : c.provenance) {
        got[{oracle_node(store, c.entity), oracle_node(store, p.subtree_root)}] = static_cast<int>(p.depth);
        CHECK(p.ecu == e);
        CHECK(p.depth >= 1);
        CHECK(p.depth <= nes);
        CHECK(replay(store, p, c.entity));
      }
    }
    CHECK(got == oracle::harvest(og, ecu, static_cast<int>(nes)));

    // Growing nes only adds.
    auto more = expand_down(e, nes + 1, store);
    std::set<EntityId> bigger;
    for (const auto& c : more) bigger.insert(c.entity);
    for (const auto& c : cs) CHECK(bigger.count(c.entity) == 1);
  }
}

TEST_CASE("cumulative counts match re-harvest per cutoff") {
  std::mt19937 rng(9);
  for (int round = 0; round < 40; ++round) {
    oracle::Graph og = oracle::random_graph(rng, 60);
    if (og.edges.size() < 3) continue;
    HierStore store = make_store(og.to_ntriples());
    std::vector<HarvestTarget> targets;
    std::set<int> used;
    for (int i = 0; i < 4; ++i) {
      int v = og.edges[std::uniform_int_distribution<std::size_t>(0, og.edges.size() - 1)(rng)].parent;
      if (!used.insert(v).second) continue;
      targets.push_back({store_node(store, v), std::uniform_int_distribution<std::uint32_t>(1, 4)(rng)});
    }
    Harvest h1 = harvest_all(targets, store, 1);
    Harvest h3 = harvest_all(targets, store, 3);
    REQUIRE(h1.candidates.size() == h3.candidates.size());
    for (std::size_t i = 0; i < h1.candidates.size(); ++i) {
      CHECK(h1.candidates[i].entity == h3.candidates[i].entity);
      CHECK(h1.candidates[i].provenance == h3.candidates[i].provenance);
    }
    std::uint64_t prev = 0;
    for (const auto& [cutoff, count] : h1.report.cumulative) {
      std::set<int> brute;
      for (const auto& t : targets) {
        if (t.nes > cutoff) continue;
        for (const auto& [key, d] : oracle::harvest(og, oracle_node(store, t.ecu), static_cast<int>(t.nes))) {
          brute.insert(key.first);
        }
      }
      CHECK(count == brute.size());
      CHECK(count >= prev);
      prev = count;
    }
  }
}
