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

#include "ontoseed/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ontoseed/checksum.hpp"
#include "ontoseed/iri.hpp"

namespace ontoseed {

namespace {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::uint32_t parse_uint(const std::string& field, const std::string& v, std::uint32_t min) {
  std::size_t used = 0;
  unsigned long n = 0;
  try {
    n = std::stoul(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a number, got '" + v + "'");
  }
  if (used != v.size() || n > UINT32_MAX) throw ConfigError(field, "expected a number, got '" + v + "'");
  if (n < min) throw ConfigError(field, "must be at least " + std::to_string(min));
  return static_cast<std::uint32_t>(n);
}

bool parse_bool(const std::string& field, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError(field, "expected true or false, got '" + v + "'");
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"paths", {"dump", "snapshot", "terms", "ground_truth", "out"}},
      {"ingest", {"subclass_of", "instance_of", "label", "alias", "languages", "extra_predicates", "case_fold",
                  "chunk_mb"}},
      {"exclusion", {"adjacent_blacklist", "adjacency_predicates", "property_blacklist"}},
      {"analysis", {"cu_threshold", "max_depth"}},
      {"harvest", {"sparql_prefixes"}},
      {"run", {"trim", "cutoffs", "workers"}},
  };
  return keys;
}

void check_iris(const std::string& field, const std::set<std::string>& iris) {
  for (const auto& iri : iris) {
    if (!is_valid_iri(iri)) throw ConfigError(field, "invalid IRI " + iri);
  }
}

}  // namespace

std::string PipelineConfig::canonical_text() const {
  std::ostringstream out;
  out << filter.canonical_text() << "chunk_bytes=" << chunk_bytes << "\n";
  for (const auto& v : exclusion.adjacent_blacklist) out << "adjacent_blacklist=" << v << "\n";
  for (const auto& v : exclusion.adjacency_predicates) out << "adjacency_predicates=" << v << "\n";
  for (const auto& v : exclusion.property_blacklist) out << "property_blacklist=" << v << "\n";
  out << "cu_threshold=" << cu_threshold << "\nmax_depth=" << max_depth << "\n";
  for (const auto& [name, ns] : sparql_prefixes) out << "prefix=" << name << "=" << ns << "\n";
  out << "trim=" << (trim ? "true" : "false") << "\ncutoffs=";
  for (auto c : cutoffs) out << c << ' ';
  out << "\n";
  return out.str();
}

std::string PipelineConfig::fingerprint() const { return sha256_hex(canonical_text()).substr(0, 16); }

fs::path PipelineConfig::snapshot_path() const {
  return paths.snapshot.empty() ? paths.out / "store.snap" : paths.snapshot;
}

PipelineConfig parse_config(std::istream& in, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  const auto& known = known_keys();
  for (const auto& [section, body] : tree) {
    auto it = known.find(section);
    if (it == known.end()) throw ConfigError(section, "unknown section");
    if (!body.data().empty() && body.empty()) throw ConfigError(section, "key outside of a section");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
    }
  }
  auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    auto v = tree.get_optional<std::string>(pt::ptree::path_type(section + "." + key, '.'));
    if (!v) return std::nullopt;
    return *v;
  };

  PipelineConfig cfg;
  cfg.base_dir = base_dir;
  auto path_of = [&](const std::string& key) -> fs::path {
    auto v = get("paths", key);
    if (!v || v->empty()) return {};
    fs::path p(*v);
    return p.is_absolute() ? p : (base_dir / p).lexically_normal();
  };
  cfg.paths.dump = path_of("dump");
  cfg.paths.snapshot = path_of("snapshot");
  cfg.paths.terms = path_of("terms");
  cfg.paths.ground_truth = path_of("ground_truth");
  cfg.paths.out = path_of("out");
  if (cfg.paths.out.empty()) cfg.paths.out = (base_dir / "out").lexically_normal();

  // Ingest filter.
  auto list = [&](const std::string& section, const std::string& key) {
    auto v = get(section, key);
    return v ? split_list(*v) : std::vector<std::string>{};
  };
  for (const auto& iri : list("ingest", "subclass_of")) cfg.filter.hierarchy_predicates[iri] = Relation::kSubClassOf;
  for (const auto& iri : list("ingest", "instance_of")) {
    if (cfg.filter.hierarchy_predicates.count(iri)) {
      throw ConfigError("ingest.instance_of", "predicate also listed as subclass_of: " + iri);
    }
    cfg.filter.hierarchy_predicates[iri] = Relation::kInstanceOf;
  }
  for (const auto& iri : list("ingest", "label")) cfg.filter.label_predicates[iri] = LabelKind::kRepresentative;
  for (const auto& iri : list("ingest", "alias")) {
    if (cfg.filter.label_predicates.count(iri)) {
      throw ConfigError("ingest.alias", "predicate also listed as label: " + iri);
    }
    cfg.filter.label_predicates[iri] = LabelKind::kAlias;
  }
  for (const auto& l : list("ingest", "languages")) cfg.filter.languages.insert(l);
  for (const auto& iri : list("ingest", "extra_predicates")) cfg.filter.extra_predicates.insert(iri);
  if (auto v = get("ingest", "case_fold")) cfg.filter.normalize.case_fold = parse_bool("ingest.case_fold", *v);
  if (auto v = get("ingest", "chunk_mb")) cfg.chunk_bytes = std::size_t{parse_uint("ingest.chunk_mb", *v, 1)} << 20;
  try {
    cfg.filter.validate();
  } catch (const std::invalid_argument& e) {
    static const std::map<std::string, std::string> field_of{
        {"hierarchy_predicates", "ingest.subclass_of"},
        {"label_predicates", "ingest.label"},
        {"extra_predicates", "ingest.extra_predicates"},
        {"languages", "ingest.languages"},
    };
    std::string msg = e.what();
    std::string field = msg.substr(0, msg.find(':'));
    auto it = field_of.find(field);
    throw ConfigError(it == field_of.end() ? "ingest" : it->second,
                      msg.find(": ") == std::string::npos ? msg : msg.substr(msg.find(": ") + 2));
  }

  // Exclusion policy.
  for (const auto& v : list("exclusion", "adjacent_blacklist")) cfg.exclusion.adjacent_blacklist.insert(v);
  for (const auto& v : list("exclusion", "adjacency_predicates")) cfg.exclusion.adjacency_predicates.insert(v);
  for (const auto& v : list("exclusion", "property_blacklist")) cfg.exclusion.property_blacklist.insert(v);
  check_iris("exclusion.adjacent_blacklist", cfg.exclusion.adjacent_blacklist);
  check_iris("exclusion.adjacency_predicates", cfg.exclusion.adjacency_predicates);
  check_iris("exclusion.property_blacklist", cfg.exclusion.property_blacklist);
  auto kept = [&](const std::string& iri) {
    return cfg.filter.hierarchy_predicates.count(iri) || cfg.filter.extra_predicates.count(iri);
  };
  for (const auto& p : cfg.exclusion.adjacency_predicates) {
    if (!kept(p)) throw ConfigError("exclusion.adjacency_predicates", "predicate not kept by [ingest]: " + p);
  }
  for (const auto& p : cfg.exclusion.property_blacklist) {
    if (!kept(p)) throw ConfigError("exclusion.property_blacklist", "predicate not kept by [ingest]: " + p);
  }
  if (!cfg.exclusion.adjacent_blacklist.empty() && cfg.exclusion.adjacency_predicates.empty()) {
    throw ConfigError("exclusion.adjacency_predicates", "required when adjacent_blacklist is set");
  }

  if (auto v = get("analysis", "cu_threshold")) cfg.cu_threshold = parse_uint("analysis.cu_threshold", *v, 1);
  if (auto v = get("analysis", "max_depth")) cfg.max_depth = parse_uint("analysis.max_depth", *v, 1);

  for (const auto& entry : list("harvest", "sparql_prefixes")) {
    auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || !is_valid_iri(entry.substr(eq + 1))) {
      throw ConfigError("harvest.sparql_prefixes", "expected name=IRI, got '" + entry + "'");
    }
    cfg.sparql_prefixes.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
  }

  if (auto v = get("run", "trim")) cfg.trim = parse_bool("run.trim", *v);
  if (auto v = get("run", "cutoffs")) {
    cfg.cutoffs.clear();
    for (const auto& c : split_list(*v)) cfg.cutoffs.push_back(parse_uint("run.cutoffs", c, 1));
    if (cfg.cutoffs.empty()) throw ConfigError("run.cutoffs", "must list at least one cutoff");
  }
  if (auto v = get("run", "workers")) cfg.workers = parse_uint("run.workers", *v, 1);
  return cfg;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError(path);
  fs::path base = fs::absolute(path).parent_path();
  return parse_config(in, base);
}

}  // namespace ontoseed
