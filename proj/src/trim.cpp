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

#include "ontoseed/trim.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ontoseed/parallel.hpp"

namespace ontoseed {

const char* trim_rule_name(TrimRule r) {
  switch (r) {
    case kRuleNesOne: return "nes1-all";
    case kRuleSeedSubtree: return "seed-subtree";
    case kRuleTwoAboveSubtree: return "two-above-subtree";
    case kRuleEcuPath: return "ecu-path";
  }
  return "?";
}

std::vector<std::string> trim_rule_names(std::uint8_t mask) {
  std::vector<std::string> out;
  for (TrimRule r : kAllTrimRules) {
    if (mask & r) out.emplace_back(trim_rule_name(r));
  }
  return out;
}

namespace {

using EdgeIt = std::vector<BranchEdge>::const_iterator;

std::pair<EdgeIt, EdgeIt> out_edges(const Branch& b, EntityId parent) {
  auto lo = std::lower_bound(b.edges.begin(), b.edges.end(), parent,
                             [](const BranchEdge& e, EntityId p) { return e.parent < p; });
  auto hi = std::upper_bound(lo, b.edges.end(), parent,
                             [](EntityId p, const BranchEdge& e) { return p < e.parent; });
  return {lo, hi};
}

// Marks one branch's kept nodes.
void trim_branch(const Branch& b, std::uint32_t nes, const EntitySet& seeds,
                 std::unordered_map<EntityId, std::uint8_t>& mark) {
  if (nes == 1) {
    for (const auto& [e, d] : b.depth) mark[e] |= kRuleNesOne;
    return;
  }
  // Incoming edges for the upward steps.
  std::unordered_map<EntityId, std::vector<const BranchEdge*>> in;
  for (const auto& e : b.edges) in[e.child].push_back(&e);

  std::set<EntityId> anchors;
  for (const auto& [e, d] : b.depth) {
    if (!contains(seeds, e)) continue;
    if (d <= 2) {
      for (const auto& [x, dx] : b.depth) mark[x] |= kRuleSeedSubtree;
      continue;
    }
    for (const BranchEdge* pe : in[e]) {
      if (b.expand_depth_of(pe->parent) != d - 1) continue;
      for (const BranchEdge* ae : in[pe->parent]) {
        if (ae->relation == Relation::kSubClassOf && b.expand_depth_of(ae->parent) == d - 2) {
          anchors.insert(ae->parent);
        }
      }
    }
  }

  for (EntityId a : anchors) {
    const std::uint32_t base = *b.expand_depth_of(a);
    // Subtree of a: subClassOf steps, one terminal step of either kind,
    // never deeper than nes.
    std::unordered_map<EntityId, std::uint32_t> len{{a, 0}};
    std::deque<EntityId> queue{a};
    mark[a] |= kRuleTwoAboveSubtree;
    while (!queue.empty()) {
      EntityId u = queue.front();
      queue.pop_front();
      const std::uint32_t l = len.at(u);
      if (base + l >= nes) continue;
      auto [lo, hi] = out_edges(b, u);
      for (auto it = lo; it != hi; ++it) {
        mark[it->child] |= kRuleTwoAboveSubtree;
        if (it->relation == Relation::kSubClassOf && len.emplace(it->child, l + 1).second) {
          queue.push_back(it->child);
        }
      }
    }
    // Every shortest subClassOf path from the branch root to a.
    std::deque<EntityId> up{a};
    std::set<EntityId> seen{a};
    mark[a] |= kRuleEcuPath;
    while (!up.empty()) {
      EntityId v = up.front();
      up.pop_front();
      const std::uint32_t dv = *b.expand_depth_of(v);
      for (const BranchEdge* e : in[v]) {
        if (e->relation != Relation::kSubClassOf || b.expand_depth_of(e->parent) != dv - 1) continue;
        if (seen.insert(e->parent).second) {
          mark[e->parent] |= kRuleEcuPath;
          up.push_back(e->parent);
        }
      }
    }
  }
}

}  // namespace

EcuTrim trim(const SubtreeView& view, const EntitySet& seeds) {
  EcuTrim out;
  out.ecu = view.ecu;
  out.nes = view.nes;
  for (const auto& b : view.branches) {
    out.total_entries += b.depth.size();
    std::unordered_map<EntityId, std::uint8_t> mark;
    trim_branch(b, view.nes, seeds, mark);
    for (const auto& [e, rules] : mark) {
      auto d = b.depth_of(e);
      if (d) out.kept.push_back({e, b.root, *d, rules});
    }
  }
  std::sort(out.kept.begin(), out.kept.end(), [](const KeptEntry& a, const KeptEntry& b) {
    return std::tie(a.entity, a.subtree_root) < std::tie(b.entity, b.subtree_root);
  });
  return out;
}

SubtreeView restrict_view(const SubtreeView& view, const EcuTrim& result) {
  std::set<std::pair<EntityId, EntityId>> keep;  // (root, entity)
  for (const auto& k : result.kept) keep.insert({k.subtree_root, k.entity});
  SubtreeView out;
  out.ecu = view.ecu;
  out.nes = view.nes;
  for (const auto& b : view.branches) {
    auto kept = [&](EntityId e) { return keep.count({b.root, e}) > 0; };
    if (!kept(b.root)) continue;
    Branch nb;
    nb.root = b.root;
    for (const auto& p : b.depth) {
      if (kept(p.first)) nb.depth.push_back(p);
    }
    for (const auto& p : b.expand_depth) {
      if (kept(p.first)) nb.expand_depth.push_back(p);
    }
    for (const auto& e : b.edges) {
      if (kept(e.parent) && kept(e.child)) nb.edges.push_back(e);
    }
    out.branches.push_back(std::move(nb));
  }
  return out;
}

TrimOutput trim_all(std::span<const SubtreeView> views, const EntitySet& seeds, unsigned workers) {
  TrimOutput out;
  out.per_ecu.resize(views.size());
  parallel_for(views.size(), workers, [&](std::size_t i) { out.per_ecu[i] = trim(views[i], seeds); });

  std::map<EntityId, TrimmedCandidate> merged;
  std::set<EntityId> ecus;
  for (const auto& t : out.per_ecu) {
    ecus.insert(t.ecu);
    out.report.per_ecu.push_back({t.ecu, t.nes, t.total_entries, t.kept.size(), t.dropped_entries()});
    for (const auto& k : t.kept) {
      auto& c = merged[k.entity];
      c.entity = k.entity;
      c.provenance.push_back({t.ecu, k.depth, k.subtree_root});
      c.rules |= k.rules;
      for (TrimRule r : kAllTrimRules) {
        if (k.rules & r) ++out.report.by_rule[trim_rule_name(r)];
      }
    }
  }
  std::sort(out.report.per_ecu.begin(), out.report.per_ecu.end(),
            [](const TrimReport::PerEcu& a, const TrimReport::PerEcu& b) { return a.ecu < b.ecu; });
  for (auto& [e, c] : merged) {
    std::sort(c.provenance.begin(), c.provenance.end());
    out.kept.push_back(std::move(c));
  }
  out.report.unique_kept = out.kept.size();
  out.report.ecu_count = ecus.size();
  std::uint64_t overlap = 0;
  for (EntityId e : ecus) overlap += merged.count(e);
  out.report.unique_with_ecu = out.kept.size() + ecus.size() - overlap;
  return out;
}

std::string trim_report_tsv(const TrimReport& report, const HierStore& store) {
  std::ostringstream out;
  out << "ecu\tnes\ttotal\tkept\tdropped\n";
  for (const auto& r : report.per_ecu) {
    out << store.iri(r.ecu) << '\t' << r.nes << '\t' << r.total << '\t' << r.kept << '\t' << r.dropped << '\n';
  }
  for (TrimRule r : kAllTrimRules) {
    auto it = report.by_rule.find(trim_rule_name(r));
    out << "#rule:" << trim_rule_name(r) << "\t\t\t" << (it == report.by_rule.end() ? 0 : it->second) << "\t\n";
  }
  out << "#unique_kept\t\t\t" << report.unique_kept << "\t\n";
  out << "#ecu\t\t\t" << report.ecu_count << "\t\n";
  out << "#unique_with_ecu\t\t\t" << report.unique_with_ecu << "\t\n";
  return out.str();
}

}  // namespace ontoseed
