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

#include "ontoseed/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include "ontoseed/text.hpp"

namespace ontoseed {

GroundTruth build_ground_truth(const TermList& index, const HierStore& store) {
  GroundTruth truth;
  truth.index_terms = index.terms;
  for (const auto& term : index.terms) {
    if (!store.lookup_label(term, {LabelKind::kRepresentative, LabelKind::kAlias}).empty()) {
      truth.matched.push_back(normalize_term(term, store.filter().normalize));
    }
  }
  std::sort(truth.matched.begin(), truth.matched.end());
  truth.matched.erase(std::unique(truth.matched.begin(), truth.matched.end()), truth.matched.end());
  if (truth.matched.empty()) {
    truth.warnings.push_back("ground truth is empty: no index term matches a label or alias");
  }
  return truth;
}

std::vector<EvalCandidate> eval_candidates(std::span<const ConceptCandidate> candidates,
                                           std::span<const HarvestTarget> ecus) {
  std::map<EntityId, std::uint32_t> nes;
  for (const auto& t : ecus) nes[t.ecu] = t.nes;
  std::vector<EvalCandidate> out;
  for (const auto& c : candidates) {
    std::uint32_t best = UINT32_MAX;
    for (const auto& p : c.provenance) {
      auto it = nes.find(p.ecu);
      if (it != nes.end()) best = std::min(best, it->second);
    }
    if (best != UINT32_MAX) out.push_back({c.entity, best});
  }
  return out;
}

std::vector<EvalRow> evaluate(std::span<const EvalCandidate> candidates, std::span<const HarvestTarget> ecus,
                              const GroundTruth& truth, const HierStore& store,
                              std::vector<std::uint32_t> cutoffs) {
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());

  std::vector<EvalCandidate> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), [](const EvalCandidate& a, const EvalCandidate& b) {
    return std::tie(a.min_nes, a.entity) < std::tie(b.min_nes, b.entity);
  });
  std::map<EntityId, std::uint32_t> ecu_nes;
  for (const auto& t : ecus) ecu_nes[t.ecu] = t.nes;

  // Candidate sets are nested in the cutoff, so one sweep suffices.
  std::unordered_set<EntityId> concepts;
  std::unordered_set<std::string_view> terms;
  std::uint64_t matched = 0;
  std::size_t next = 0;
  std::vector<EvalRow> rows;
  for (std::uint32_t cutoff : cutoffs) {
    for (; next < order.size() && order[next].min_nes <= cutoff; ++next) {
      if (!concepts.insert(order[next].entity).second) continue;
      for (std::string_view label : store.labels_of(order[next].entity)) {
        if (terms.insert(label).second &&
            std::binary_search(truth.matched.begin(), truth.matched.end(), label)) {
          ++matched;
        }
      }
    }
    EvalRow row;
    row.cutoff = cutoff;
    for (const auto& [e, n] : ecu_nes) row.ecu_count += n <= cutoff;
    row.concept_count = concepts.size();
    row.term_count = terms.size();
    row.matched = matched;
    row.recall = truth.total() == 0 ? 0.0 : static_cast<double>(matched) / truth.total();
    row.precision = terms.empty() ? 0.0 : static_cast<double>(matched) / terms.size();
    rows.push_back(row);
  }
  return rows;
}

std::string format_percent(double fraction) {
  double pct = fraction * 100.0;
  if (pct == 0.0) return "0.00";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%#.3g", pct);
  std::string s = buf;
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

namespace {

void sort_rows(std::vector<EvalRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("evaluation report needs at least one row");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const EvalRow& a, const EvalRow& b) { return a.cutoff < b.cutoff; });
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string eval_tsv(std::vector<EvalRow> rows) {
  sort_rows(rows);
  std::ostringstream out;
  out << "cutoff\tecuCount\tconceptCount\ttermCount\tmatched\trecall\tprecision\n";
  for (const auto& r : rows) {
    out << r.cutoff << '\t' << r.ecu_count << '\t' << r.concept_count << '\t' << r.term_count << '\t'
        << r.matched << '\t' << fixed6(r.recall) << '\t' << fixed6(r.precision) << '\n';
  }
  return out.str();
}

std::string eval_table(std::vector<EvalRow> rows, const GroundTruth& truth) {
  sort_rows(rows);
  std::vector<std::vector<std::string>> cells{
      {"NES<=", "ECUs", "concepts", "terms", "matched", "recall %", "precision %"}};
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.cutoff), std::to_string(r.ecu_count), std::to_string(r.concept_count),
                     std::to_string(r.term_count), std::to_string(r.matched), format_percent(r.recall),
                     format_percent(r.precision)});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream out;
  out << "ground truth: " << truth.total() << " of " << truth.index_terms.size() << " index terms\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      if (i) out << "  ";
      out << std::string(width[i] - cells[r][i].size(), ' ') << cells[r][i];
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

std::string eval_csv(std::vector<EvalRow> rows) {
  sort_rows(rows);
  std::ostringstream out;
  out << "cutoff,recall_pct,precision_pct,concepts,terms\n";
  for (const auto& r : rows) {
    out << r.cutoff << ',' << format_percent(r.recall) << ',' << format_percent(r.precision) << ','
        << r.concept_count << ',' << r.term_count << '\n';
  }
  return out.str();
}

}  // namespace ontoseed
