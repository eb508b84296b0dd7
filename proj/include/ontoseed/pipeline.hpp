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

// Stage orchestration. Each stage reads persisted upstream artifacts from
// the output directory, writes its own, and records input and output
// digests in manifest.json.

#ifndef ONTOSEED_PIPELINE_HPP_
#define ONTOSEED_PIPELINE_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoseed/config.hpp"
#include "ontoseed/store.hpp"

namespace ontoseed {

enum class Stage { kIngest, kLink, kUpper, kEcu, kHarvest, kTrim, kEval };

inline constexpr Stage kAllStages[] = {Stage::kIngest, Stage::kLink,  Stage::kUpper, Stage::kEcu,
                                       Stage::kHarvest, Stage::kTrim, Stage::kEval};

const char* stage_name(Stage s);
std::optional<Stage> parse_stage(std::string_view name);

class StageError : public std::runtime_error {
 public:
  StageError(Stage stage, const std::string& what)
      : std::runtime_error(std::string(stage_name(stage)) + ": " + what), stage_(stage) {}
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

struct FileDigest {
  std::string path;  // relative to the output dir, or to the config dir for outside inputs
  std::string sha256;
};

struct StageRecord {
  std::string stage;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::vector<std::string> warnings;
  double seconds = 0;
};

class Pipeline {
 public:
  // `log` receives progress lines; may be null.
  Pipeline(PipelineConfig config, std::ostream* log = nullptr);
  ~Pipeline();

  // Throws MissingInputError, ConfigError, or StageError for anything else.
  StageRecord run(Stage stage);
  std::vector<StageRecord> run_all();

  const PipelineConfig& config() const { return config_; }
  std::filesystem::path out_dir() const { return config_.paths.out; }

 private:
  PipelineConfig config_;
  std::ostream* log_;
  std::unique_ptr<HierStore> store_;

  const HierStore& store();
  StageRecord dispatch(Stage stage);
  void record(const StageRecord& rec);
};

}  // namespace ontoseed

#endif  // ONTOSEED_PIPELINE_HPP_
