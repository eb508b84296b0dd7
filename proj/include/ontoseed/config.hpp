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

// Pipeline configuration: an INI file with [paths], [ingest], [exclusion],
// [analysis], [harvest] and [run] sections. List values are separated by
// spaces or commas. Relative paths resolve against the config file's
// directory.

#ifndef ONTOSEED_CONFIG_HPP_
#define ONTOSEED_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontoseed/ecu.hpp"
#include "ontoseed/harvest.hpp"
#include "ontoseed/linker.hpp"
#include "ontoseed/store.hpp"

namespace ontoseed {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class MissingInputError : public std::runtime_error {
 public:
  explicit MissingInputError(const std::filesystem::path& path)
      : std::runtime_error("missing input: " + path.string()), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct PipelinePaths {
  std::filesystem::path dump;
  std::filesystem::path snapshot;  // empty: <out>/store.snap
  std::filesystem::path terms;
  std::filesystem::path ground_truth;
  std::filesystem::path out;
};

struct PipelineConfig {
  std::filesystem::path base_dir;
  PipelinePaths paths;
  IngestFilter filter;
  std::size_t chunk_bytes = 4u << 20;
  ExclusionPolicy exclusion;
  std::uint32_t cu_threshold = 2;
  std::uint32_t max_depth = kDefaultMaxDepth;
  PrefixMap sparql_prefixes;
  bool trim = true;
  std::vector<std::uint32_t> cutoffs{1, 2, 3, 4, 5, 6, 7};
  unsigned workers = 1;

  // Everything that shapes results; paths and worker count are left out.
  std::string canonical_text() const;
  std::string fingerprint() const;
  std::filesystem::path snapshot_path() const;
};

// Throws ConfigError naming the field on bad syntax, unknown keys or values
// that fail validation.
PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
// Also throws MissingInputError when the file does not exist.
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace ontoseed

#endif  // ONTOSEED_CONFIG_HPP_
