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

#include "ontoseed/harvest.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ontoseed/parallel.hpp"

namespace ontoseed {

namespace {

std::optional<std::uint32_t> lookup(const std::vector<std::pair<EntityId, std::uint32_t>>& v, EntityId e) {
  auto it = std::lower_bound(v.begin(), v.end(), std::pair<EntityId, std::uint32_t>{e, 0});
  if (it == v.end() || it->first != e) return std::nullopt;
  return it->second;
}

template <typename Map>
std::vector<std::pair<EntityId, std::uint32_t>> sorted_pairs(const Map& m) {
  std::vector<std::pair<EntityId, std::uint32_t>> out(m.begin(), m.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::uint32_t ConceptCandidate::min_depth() const {
  std::uint32_t d = UINT32_MAX;
  for (const auto& p : provenance) d = std::min(d, p.depth);
  return d;
}

std::optional<std::uint32_t> Branch::depth_of(EntityId e) const { return lookup(depth, e); }
std::optional<std::uint32_t> Branch::expand_depth_of(EntityId e) const { return lookup(expand_depth, e); }

SubtreeView explore_branches(EntityId ecu, std::uint32_t nes, const HierStore& store) {
  if (nes == 0) throw std::invalid_argument("nes must be at least 1");
  const auto sc = store.predicates_with(Relation::kSubClassOf);
  const auto inst = store.predicates_with(Relation::kInstanceOf);

  std::map<EntityId, bool> roots;  // root -> reached through subClassOf
  for (PredicateId p : sc) {
    for (EntityId v : store.row(p, Direction::kDown, ecu)) roots[v] = true;
  }
  for (PredicateId p : inst) {
    for (EntityId v : store.row(p, Direction::kDown, ecu)) roots.emplace(v, false);
  }

  SubtreeView view;
  view.ecu = ecu;
  view.nes = nes;
  for (const auto& [root, via_sc] : roots) {
    Branch b;
    b.root = root;
    std::unordered_map<EntityId, std::uint32_t> depth{{root, 1}};
    std::unordered_map<EntityId, std::uint32_t> expand;
    std::deque<EntityId> queue;
    if (via_sc) {
      expand.emplace(root, 1);
      queue.push_back(root);
    }
    auto relax = [&](EntityId v, std::uint32_t d) {
      auto [it, fresh] = depth.emplace(v, d);
      if (!fresh) it->second = std::min(it->second, d);
    };
    while (!queue.empty()) {
      EntityId u = queue.front();
      queue.pop_front();
      const std::uint32_t d = expand.at(u);
      if (d >= nes) continue;
      for (PredicateId p : sc) {
        for (EntityId v : store.row(p, Direction::kDown, u)) {
          b.edges.push_back({u, v, Relation::kSubClassOf});
          relax(v, d + 1);
          if (expand.emplace(v, d + 1).second) queue.push_back(v);
        }
      }
      for (PredicateId p : inst) {
        for (EntityId v : store.row(p, Direction::kDown, u)) {
          b.edges.push_back({u, v, Relation::kInstanceOf});
          relax(v, d + 1);
        }
      }
    }
    b.depth = sorted_pairs(depth);
    b.expand_depth = sorted_pairs(expand);
    std::sort(b.edges.begin(), b.edges.end());
    b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
    view.branches.push_back(std::move(b));
  }
  return view;
}

std::vector<ConceptCandidate> candidates_of(const SubtreeView& view) {
  std::map<EntityId, std::vector<Provenance>> merged;
  for (const auto& b : view.branches) {
    for (const auto& [e, d] : b.depth) merged[e].push_back({view.ecu, d, b.root});
  }
  std::vector<ConceptCandidate> out;
  out.reserve(merged.size());
  for (auto& [e, prov] : merged) {
    std::sort(prov.begin(), prov.end());
    out.push_back({e, std::move(prov)});
  }
  return out;
}

std::vector<ConceptCandidate> expand_down(EntityId ecu, std::uint32_t nes, const HierStore& store) {
  return candidates_of(explore_branches(ecu, nes, store));
}

std::vector<ConceptCandidate> merge_harvests(std::span<const std::vector<ConceptCandidate>> parts) {
  std::map<EntityId, std::vector<Provenance>> merged;
  for (const auto& part : parts) {
    for (const auto& c : part) {
      auto& prov = merged[c.entity];
      prov.insert(prov.end(), c.provenance.begin(), c.provenance.end());
    }
  }
  std::vector<ConceptCandidate> out;
  out.reserve(merged.size());
  for (auto& [e, prov] : merged) {
    std::sort(prov.begin(), prov.end());
    prov.erase(std::unique(prov.begin(), prov.end()), prov.end());
    out.push_back({e, std::move(prov)});
  }
  return out;
}

HarvestReport make_harvest_report(std::span<const HarvestTarget> targets,
                                  std::span<const ConceptCandidate> candidates) {
  HarvestReport r;
  std::map<EntityId, std::size_t> slot;
  std::vector<HarvestTarget> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const HarvestTarget& a, const HarvestTarget& b) { return a.ecu < b.ecu; });
  std::uint32_t max_nes = 0;
  for (const auto& t : sorted) {
    if (slot.count(t.ecu)) continue;
    slot[t.ecu] = r.per_ecu.size();
    r.per_ecu.push_back({t.ecu, t.nes, std::vector<std::uint64_t>(t.nes, 0), 0});
    max_nes = std::max(max_nes, t.nes);
  }
  std::vector<std::uint64_t> at_min(max_nes + 1, 0);
  for (const auto& c : candidates) {
    std::map<EntityId, std::uint32_t> depth_by_ecu;
    for (const auto& p : c.provenance) {
      auto [it, fresh] = depth_by_ecu.emplace(p.ecu, p.depth);
      if (!fresh) it->second = std::min(it->second, p.depth);
    }
    std::set<std::uint32_t> nes_values;
    for (const auto& [ecu, d] : depth_by_ecu) {
      auto it = slot.find(ecu);
      if (it == slot.end()) continue;
      auto& pe = r.per_ecu[it->second];
      if (d >= 1 && d <= pe.by_depth.size()) ++pe.by_depth[d - 1];
      ++pe.total;
      nes_values.insert(pe.nes);
    }
    if (nes_values.empty()) continue;
    ++r.unique;
    for (std::uint32_t n : nes_values) ++r.by_nes[n];
    ++at_min[*nes_values.begin()];
  }
  std::uint64_t running = 0;
  for (std::uint32_t n = 1; n <= max_nes; ++n) {
    running += at_min[n];
    r.cumulative[n] = running;
  }
  return r;
}

Harvest harvest_all(std::span<const HarvestTarget> targets, const HierStore& store, unsigned workers) {
  Harvest h;
  h.views.resize(targets.size());
  std::vector<std::vector<ConceptCandidate>> parts(targets.size());
  parallel_for(targets.size(), workers, [&](std::size_t i) {
    h.views[i] = explore_branches(targets[i].ecu, targets[i].nes, store);
    parts[i] = candidates_of(h.views[i]);
  });
  h.candidates = merge_harvests(parts);
  h.report = make_harvest_report(targets, h.candidates);
  return h;
}

std::string harvest_report_tsv(const HarvestReport& report, const HierStore& store) {
  std::ostringstream out;
  out << "ecu\tnes\tdepth\tcount\n";
  for (const auto& pe : report.per_ecu) {
    for (std::size_t k = 0; k < pe.by_depth.size(); ++k) {
      out << store.iri(pe.ecu) << '\t' << pe.nes << '\t' << (k + 1) << '\t' << pe.by_depth[k] << '\n';
    }
    out << store.iri(pe.ecu) << '\t' << pe.nes << "\tall\t" << pe.total << '\n';
  }
  for (const auto& [n, c] : report.by_nes) out << "#by_nes\t" << n << "\t\t" << c << '\n';
  for (const auto& [n, c] : report.cumulative) out << "#cumulative\t" << n << "\t\t" << c << '\n';
  out << "#unique\t\t\t" << report.unique << '\n';
  return out.str();
}

namespace {

bool plain_local(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

std::string shorten(std::string_view iri, const PrefixMap& prefixes) {
  for (const auto& [name, ns] : prefixes) {
    if (iri.size() > ns.size() && iri.substr(0, ns.size()) == ns && plain_local(iri.substr(ns.size()))) {
      return name + ":" + std::string(iri.substr(ns.size()));
    }
  }
  return "<" + std::string(iri) + ">";
}

std::string alternatives(const std::vector<std::string>& terms) {
  if (terms.size() == 1) return terms[0];
  std::string out = "(";
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? "|" : "") + terms[i];
  return out + ")";
}

}  // namespace

std::string emit_sparql(std::string_view ecu_iri, std::uint32_t k, std::span<const std::string> subclass_iris,
                        std::span<const std::string> instance_iris, const PrefixMap& prefixes) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (subclass_iris.empty() || instance_iris.empty()) {
    throw std::invalid_argument("need at least one subClassOf and one instanceOf predicate");
  }
  std::vector<std::string> sc, any;
  for (const auto& p : subclass_iris) sc.push_back(shorten(p, prefixes));
  any = sc;
  for (const auto& p : instance_iris) any.push_back(shorten(p, prefixes));

  std::string path;
  for (std::uint32_t i = 1; i < k; ++i) path += "^" + alternatives(sc) + "/";
  path += "^" + alternatives(any);

  std::ostringstream q;
  for (const auto& [name, ns] : prefixes) q << "PREFIX " << name << ": <" << ns << ">\n";
  q << "SELECT DISTINCT ?item WHERE {\n  " << shorten(ecu_iri, prefixes) << ' ' << path << " ?item .\n}\n";
  return q.str();
}

std::string emit_sparql(const HierStore& store, EntityId ecu, std::uint32_t k, const PrefixMap& prefixes) {
  std::vector<std::string> sc, inst;
  for (PredicateId p : store.predicates_with(Relation::kSubClassOf)) sc.push_back(store.predicate_iri(p));
  for (PredicateId p : store.predicates_with(Relation::kInstanceOf)) inst.push_back(store.predicate_iri(p));
  return emit_sparql(store.iri(ecu), k, sc, inst, prefixes);
}

}  // namespace ontoseed
