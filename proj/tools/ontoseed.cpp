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

// ontoseed command-line front end.
//
// Exit codes: 0 ok, 1 usage or config error, 2 missing input, 3 stage failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ontoseed/artifacts.hpp"
#include "ontoseed/config.hpp"
#include "ontoseed/export.hpp"
#include "ontoseed/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ontoseed;

namespace {

struct Options {
  std::string config;
  std::optional<unsigned> workers;
  std::string snapshot;
  std::string out;
  bool quiet = false;
  std::string dump;
  std::string terms;
  std::string ground_truth;
  std::string cutoffs;
  std::string export_what;
  std::string export_format;
  std::string export_output;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PipelineConfig make_config(const Options& o) {
  if (o.config.empty()) throw ConfigError("--config", "a config file is required");
  PipelineConfig cfg = load_config(o.config);
  if (o.workers) {
    if (*o.workers == 0) throw ConfigError("--workers", "must be at least 1");
    cfg.workers = *o.workers;
  }
  if (!o.snapshot.empty()) cfg.paths.snapshot = fs::absolute(o.snapshot);
  if (!o.out.empty()) cfg.paths.out = fs::absolute(o.out);
  if (!o.dump.empty()) cfg.paths.dump = fs::absolute(o.dump);
  if (!o.terms.empty()) cfg.paths.terms = fs::absolute(o.terms);
  if (!o.ground_truth.empty()) cfg.paths.ground_truth = fs::absolute(o.ground_truth);
  if (!o.cutoffs.empty()) {
    std::istringstream in("[run]\ncutoffs = " + o.cutoffs + "\n");
    cfg.cutoffs = parse_config(in, cfg.base_dir).cutoffs;
  }
  return cfg;
}

std::ifstream open(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw MissingInputError(p);
  return in;
}

int run_export(const Options& o, const PipelineConfig& cfg) {
  static const std::map<std::string, std::set<std::string>> formats{
      {"graph", {"dot", "graphml", "tsv"}},
      {"residual", {"dot", "graphml"}},
      {"ecu", {"tsv"}},
      {"candidates", {"jsonl", "tsv"}},
      {"trimmed", {"jsonl", "tsv"}},
  };
  static const std::set<std::string> known_formats{"dot", "graphml", "tsv", "jsonl"};
  if (!known_formats.count(o.export_format)) throw ConfigError("--format", "unknown format '" + o.export_format + "'");
  auto it = formats.find(o.export_what);
  if (it == formats.end()) throw ConfigError("artifact", "unknown artifact '" + o.export_what + "'");
  if (!it->second.count(o.export_format)) {
    throw ConfigError("--format", "format " + o.export_format + " is not available for " + o.export_what);
  }

  const fs::path out = cfg.paths.out;
  const fs::path snap = cfg.snapshot_path();
  if (!fs::exists(snap)) throw MissingInputError(snap);
  std::string text;
  try {
    HierStore store = load_snapshot(snap, cfg.filter.fingerprint());
    auto ecu_records = [&]() -> std::vector<EcuRecord> {
      if (!fs::exists(out / "ecu.json")) return {};
      std::ifstream in = open(out / "ecu.json");
      return read_ecu_json(in, store).ecu;
    };
    if (o.export_what == "graph" || o.export_what == "residual") {
      std::ifstream in = open(out / "upper_graph.json");
      UpperArtifact up = read_upper_json(in, store);
      auto ecu = ecu_records();
      if (o.export_what == "graph") {
        if (o.export_format == "dot") text = integrated_dot(up.graph, up.cu, up.common, ecu, store);
        if (o.export_format == "graphml") text = integrated_graphml(up.graph, up.cu, up.common, ecu, store);
        if (o.export_format == "tsv") text = integrated_tsv(up.graph, store);
      } else {
        PartitionedGraph part = remove_common_paths(up.graph, up.common);
        if (o.export_format == "dot") text = residual_dot(part, ecu, store);
        if (o.export_format == "graphml") text = residual_graphml(part, ecu, store);
      }
    } else if (o.export_what == "ecu") {
      if (!fs::exists(out / "ecu.json")) throw MissingInputError(out / "ecu.json");
      text = ecu_tsv(ecu_records(), store);
    } else {
      fs::path src = out / (o.export_what == "candidates" ? "candidates.jsonl" : "trimmed.jsonl");
      std::ifstream in = open(src);
      if (o.export_format == "jsonl") {
        text.assign(std::istreambuf_iterator<char>(in), {});
      } else {
        text = candidates_tsv(read_candidates_jsonl(in, store), store);
      }
    }
  } catch (const MissingInputError&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("export: ") + e.what());
  }

  if (o.export_output == "-") {
    std::cout << text;
    return 0;
  }
  fs::path dest = o.export_output.empty() ? out / "export" / (o.export_what + "." + o.export_format)
                                          : fs::path(o.export_output);
  if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
  std::ofstream f(dest, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) throw std::runtime_error("export: cannot write " + dest.string());
  if (!o.quiet) std::cerr << "[export] wrote " << dest.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bootstraps a domain class hierarchy from an N-Triples dump"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "INI config file");
  app.add_option("--workers", o.workers, "worker threads (overrides run.workers)");
  app.add_option("--snapshot", o.snapshot, "store snapshot path (overrides paths.snapshot)");
  app.add_option("--out", o.out, "output directory (overrides paths.out)");
  app.add_flag("--quiet,-q", o.quiet, "no progress output");

  auto* ingest = app.add_subcommand("ingest", "filter the dump into a store snapshot");
  ingest->add_option("--dump", o.dump, "N-Triples dump (.nt or .nt.gz)");
  auto* link = app.add_subcommand("link", "link domain terms to search entities");
  link->add_option("--terms", o.terms, "term list");
  app.add_subcommand("upper", "trace and integrate upper-level concepts");
  app.add_subcommand("ecu", "find ECU entities and their NES");
  app.add_subcommand("harvest", "retrieve lower-level concepts");
  app.add_subcommand("trim", "prune harvested subtrees by seed occurrence");
  auto* eval = app.add_subcommand("eval", "recall and precision against an index");
  eval->add_option("--ground-truth", o.ground_truth, "index term list");
  eval->add_option("--cutoffs", o.cutoffs, "NES cutoffs, e.g. 1,2,3");
  auto* run_all = app.add_subcommand("run-all", "run every stage in order");
  run_all->add_option("--dump", o.dump, "N-Triples dump");
  run_all->add_option("--terms", o.terms, "term list");
  run_all->add_option("--ground-truth", o.ground_truth, "index term list");
  auto* exp = app.add_subcommand("export", "render an artifact as dot, graphml, tsv or jsonl");
  exp->add_option("artifact", o.export_what, "graph | residual | ecu | candidates | trimmed")->required();
  exp->add_option("--format", o.export_format, "dot | graphml | tsv | jsonl")->required();
  exp->add_option("--output,-o", o.export_output, "destination file, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::string current = app.get_subcommands().front()->get_name();
  try {
    PipelineConfig cfg = make_config(o);
    if (current == "export") return run_export(o, cfg);
    Pipeline pipeline(std::move(cfg), o.quiet ? nullptr : &std::cerr);
    if (current == "run-all") {
      pipeline.run_all();
    } else {
      pipeline.run(*parse_stage(current));
    }
    return 0;
  } catch (const MissingInputError& e) {
    std::cerr << "ontoseed: missing input: " << e.path().string() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "ontoseed: config error: " << e.what() << "\n";
    return 1;
  } catch (const StageError& e) {
    std::cerr << "ontoseed: stage " << stage_name(e.stage()) << " failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "ontoseed: stage " << current << " failed: " << e.what() << "\n";
    return 3;
  }
}
