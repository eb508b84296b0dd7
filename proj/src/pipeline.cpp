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

#include "ontoseed/pipeline.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "ontoseed/artifacts.hpp"
#include "ontoseed/checksum.hpp"
#include "ontoseed/ecu.hpp"
#include "ontoseed/evaluate.hpp"
#include "ontoseed/export.hpp"
#include "ontoseed/harvest.hpp"
#include "ontoseed/iri.hpp"
#include "ontoseed/linker.hpp"
#include "ontoseed/parallel.hpp"
#include "ontoseed/trim.hpp"
#include "ontoseed/upper_graph.hpp"

namespace ontoseed {

namespace fs = std::filesystem;
using nlohmann::json;

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kIngest: return "ingest";
    case Stage::kLink: return "link";
    case Stage::kUpper: return "upper";
    case Stage::kEcu: return "ecu";
    case Stage::kHarvest: return "harvest";
    case Stage::kTrim: return "trim";
    case Stage::kEval: return "eval";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (name == stage_name(s)) return s;
  }
  return std::nullopt;
}

namespace {

constexpr const char* kToolVersion = "0.1.0";

void write_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError(path);
  return in;
}

void require(const fs::path& path) {
  if (path.empty() || !fs::exists(path)) throw MissingInputError(path);
}

bool under(const fs::path& p, const fs::path& dir) {
  auto rel = p.lexically_relative(dir);
  return !rel.empty() && *rel.begin() != "..";
}

std::string local_file_name(std::string_view iri) {
  std::string out;
  for (char c : iri_local_name(iri)) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  }
  return out.empty() ? "entity" : out;
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config, std::ostream* log) : config_(std::move(config)), log_(log) {
  config_.paths.out = fs::absolute(config_.paths.out).lexically_normal();
}

Pipeline::~Pipeline() = default;

const HierStore& Pipeline::store() {
  if (!store_) {
    fs::path snap = config_.snapshot_path();
    require(snap);
    store_ = std::make_unique<HierStore>(load_snapshot(snap, config_.filter.fingerprint()));
  }
  return *store_;
}

StageRecord Pipeline::run(Stage stage) {
  auto start = std::chrono::steady_clock::now();
  StageRecord rec;
  try {
    rec = dispatch(stage);
  } catch (const MissingInputError&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  record(rec);
  if (log_) {
    *log_ << "[" << rec.stage << "] done in " << rec.seconds << " s, " << rec.outputs.size() << " outputs\n";
    for (const auto& w : rec.warnings) *log_ << "[" << rec.stage << "] warning: " << w << "\n";
  }
  return rec;
}

std::vector<StageRecord> Pipeline::run_all() {
  std::vector<StageRecord> out;
  for (Stage s : kAllStages) out.push_back(run(s));
  return out;
}

StageRecord Pipeline::dispatch(Stage stage) {
  const fs::path out = config_.paths.out;
  const fs::path snap = config_.snapshot_path();
  StageRecord rec;
  rec.stage = stage_name(stage);

  auto display = [&](const fs::path& p) {
    fs::path abs = fs::absolute(p).lexically_normal();
    if (under(abs, out)) return abs.lexically_relative(out).generic_string();
    fs::path rel = abs.lexically_relative(fs::absolute(config_.base_dir).lexically_normal());
    return (rel.empty() ? abs : rel).generic_string();
  };
  auto input = [&](const fs::path& p) {
    require(p);
    rec.inputs.push_back({display(p), sha256_file(p)});
  };
  auto output = [&](const fs::path& p, std::string_view content) {
    write_file(p, content);
    rec.outputs.push_back({display(p), sha256_hex(content)});
  };
  auto output_file = [&](const fs::path& p) { rec.outputs.push_back({display(p), sha256_file(p)}); };
  const unsigned workers = config_.workers;

  switch (stage) {
    case Stage::kIngest: {
      input(config_.paths.dump);
      IngestOptions opts;
      opts.workers = workers;
      opts.chunk_bytes = config_.chunk_bytes;
      if (log_) opts.progress = [this](std::uint64_t lines) { *log_ << "[ingest] " << lines << " lines\n"; };
      IngestResult r = ingest_file(config_.paths.dump, config_.filter, opts);
      fs::create_directories(snap.parent_path());
      save_snapshot(r.store, snap);
      output_file(snap);
      output(out / "ingest_report.tsv", ingest_report_tsv(r.stats));
      rec.warnings = r.stats.warnings;
      if (r.stats.malformed > 0) rec.warnings.push_back(std::to_string(r.stats.malformed) + " malformed lines skipped");
      store_ = std::make_unique<HierStore>(std::move(r.store));
      break;
    }
    case Stage::kLink: {
      input(snap);
      input(config_.paths.terms);
      const HierStore& s = store();
      try {
        config_.exclusion.validate(s);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("exclusion", e.what());
      }
      TermList terms = load_terms_file(config_.paths.terms.string(), s.filter().normalize);
      SearchEntitySet set = apply_exclusions(link_terms(terms, s), config_.exclusion, s);
      output(out / "seeds.txt", seeds_text(set.seeds, s));
      output(out / "search_entities.tsv", audit_tsv(set, s));
      std::size_t unmatched = 0;
      for (const auto& [term, ids] : set.entries) unmatched += ids.empty();
      if (unmatched) rec.warnings.push_back(std::to_string(unmatched) + " terms without a search entity");
      if (set.seeds.size() < 2) rec.warnings.push_back("fewer than two search entities; no CU entity can exist");
      break;
    }
    case Stage::kUpper: {
      input(snap);
      input(out / "seeds.txt");
      const HierStore& s = store();
      std::ifstream in = open_in(out / "seeds.txt");
      std::vector<std::string> missing;
      EntitySet seeds = parse_seeds(in, s, &missing);
      if (!missing.empty()) throw std::runtime_error("seed not in store: " + missing.front());
      AnalysisOptions opts{config_.cu_threshold, config_.max_depth, workers};
      UpperAnalysis a = analyze_upper(s, seeds, opts);
      output(out / "upper_graph.json", upper_json(a, opts, s));
      output(out / "integrated.dot", integrated_dot(a.graph, a.cu, a.common, a.ecu, s));
      output(out / "integrated.graphml", integrated_graphml(a.graph, a.cu, a.common, a.ecu, s));
      output(out / "integrated.tsv", integrated_tsv(a.graph, s));
      if (a.truncated() > 0) {
        rec.warnings.push_back(std::to_string(a.truncated()) + " nodes beyond max_depth were not traced");
      }
      break;
    }
    case Stage::kEcu: {
      input(snap);
      input(out / "upper_graph.json");
      const HierStore& s = store();
      std::ifstream in = open_in(out / "upper_graph.json");
      UpperArtifact up = read_upper_json(in, s);
      PartitionedGraph part = remove_common_paths(up.graph, up.common);
      std::vector<EcuRecord> ecu = find_ecu(part, up.cu);
      output(out / "ecu.json", ecu_json(part, ecu, s));
      output(out / "ecu.tsv", ecu_tsv(ecu, s));
      output(out / "residual.dot", residual_dot(part, ecu, s));
      if (ecu.empty()) rec.warnings.push_back("no ECU entity found");
      break;
    }
    case Stage::kHarvest: {
      input(snap);
      input(out / "ecu.json");
      const HierStore& s = store();
      std::ifstream in = open_in(out / "ecu.json");
      EcuArtifact ecu = read_ecu_json(in, s);
      auto targets = ecu.targets();
      Harvest h = harvest_all(targets, s, workers);
      output(out / "candidates.jsonl", candidates_jsonl(h.candidates, s));
      output(out / "harvest_counts.tsv", harvest_report_tsv(h.report, s));
      fs::remove_all(out / "sparql");
      std::size_t index = 0;
      for (const auto& t : targets) {
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "%04zu_", index++);
        for (std::uint32_t k = 1; k <= t.nes; ++k) {
          std::string name = prefix + local_file_name(s.iri(t.ecu)) + "_k" + std::to_string(k) + ".rq";
          output(out / "sparql" / name, emit_sparql(s, t.ecu, k, config_.sparql_prefixes));
        }
      }
      break;
    }
    case Stage::kTrim: {
      if (!config_.trim) {
        rec.warnings.push_back("skipped: trimming disabled by run.trim");
        break;
      }
      input(snap);
      input(out / "ecu.json");
      input(out / "seeds.txt");
      input(out / "candidates.jsonl");
      const HierStore& s = store();
      std::ifstream ein = open_in(out / "ecu.json");
      auto targets = read_ecu_json(ein, s).targets();
      std::ifstream sin = open_in(out / "seeds.txt");
      std::vector<std::string> missing;
      EntitySet seeds = parse_seeds(sin, s, &missing);
      if (!missing.empty()) throw std::runtime_error("seed not in store: " + missing.front());
      std::vector<SubtreeView> views(targets.size());
      parallel_for(targets.size(), workers,
                   [&](std::size_t i) { views[i] = explore_branches(targets[i].ecu, targets[i].nes, s); });
      TrimOutput t = trim_all(views, seeds, workers);
      output(out / "trimmed.jsonl", trimmed_jsonl(t.kept, s));
      output(out / "trim_report.tsv", trim_report_tsv(t.report, s));
      break;
    }
    case Stage::kEval: {
      const fs::path cand = out / (config_.trim ? "trimmed.jsonl" : "candidates.jsonl");
      input(snap);
      input(out / "ecu.json");
      input(cand);
      input(config_.paths.ground_truth);
      const HierStore& s = store();
      std::ifstream ein = open_in(out / "ecu.json");
      auto targets = read_ecu_json(ein, s).targets();
      std::ifstream cin = open_in(cand);
      auto candidates = read_candidates_jsonl(cin, s);
      TermList index = load_terms_file(config_.paths.ground_truth.string(), s.filter().normalize, true);
      GroundTruth truth = build_ground_truth(index, s);
      auto rows = evaluate(eval_candidates(candidates, targets), targets, truth, s, config_.cutoffs);
      output(out / "eval.tsv", eval_tsv(rows));
      output(out / "eval.txt", eval_table(rows, truth));
      output(out / "eval_series.csv", eval_csv(rows));
      rec.warnings = truth.warnings;
      break;
    }
  }
  return rec;
}

void Pipeline::record(const StageRecord& rec) {
  const fs::path manifest_path = config_.paths.out / "manifest.json";
  const fs::path timings_path = config_.paths.out / "run_timings.tsv";
  std::map<std::string, json> stages;
  std::map<std::string, std::string> timings;
  const std::string fingerprint = config_.fingerprint();
  if (fs::exists(manifest_path)) {
    try {
      std::ifstream in(manifest_path);
      json old = json::parse(in);
      if (old.value("configFingerprint", "") == fingerprint) {
        for (const auto& s : old.at("stages")) stages[s.at("stage").get<std::string>()] = s;
      }
    } catch (const std::exception&) {
      stages.clear();
    }
  }
  if (fs::exists(timings_path)) {
    std::ifstream in(timings_path);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      auto tab = line.find('\t');
      if (tab != std::string::npos) timings[line.substr(0, tab)] = line.substr(tab + 1);
    }
  }

  auto digests = [](const std::vector<FileDigest>& files) {
    json a = json::array();
    for (const auto& f : files) a.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return a;
  };
  stages[rec.stage] = {{"stage", rec.stage},
                       {"inputs", digests(rec.inputs)},
                       {"outputs", digests(rec.outputs)},
                       {"warnings", rec.warnings}};
  std::ostringstream secs;
  secs << rec.seconds;
  timings[rec.stage] = secs.str();

  json m;
  m["tool"] = "ontoseed";
  m["toolVersion"] = kToolVersion;
  m["configFingerprint"] = fingerprint;
  m["filterFingerprint"] = config_.filter.fingerprint();
  m["artifactVersions"] = {{"snapshot", kSnapshotVersion}, {"json", kArtifactVersion}};
  json list = json::array();
  for (Stage s : kAllStages) {
    auto it = stages.find(stage_name(s));
    if (it != stages.end()) list.push_back(it->second);
  }
  m["stages"] = std::move(list);
  write_file(manifest_path, m.dump(1, '\t', false, json::error_handler_t::replace) + "\n");

  std::ostringstream t;
  t << "stage\tseconds\n";
  for (Stage s : kAllStages) {
    auto it = timings.find(stage_name(s));
    if (it != timings.end()) t << it->first << '\t' << it->second << '\n';
  }
  write_file(timings_path, t.str());
}

}  // namespace ontoseed
