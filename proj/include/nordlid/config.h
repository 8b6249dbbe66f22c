// Pipeline configuration: every tunable of every stage, serializable to JSON
// with full defaulting. Missing keys take defaults; unknown keys are errors.
// A top-level "invocation" object (written by the CLI) is ignored on load.

#ifndef NORDLID_CONFIG_H_
#define NORDLID_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "nordlid/augment.h"
#include "nordlid/featurizer.h"
#include "nordlid/normalize.h"
#include "nordlid/train.h"

namespace nordlid {

struct PipelinePaths {
  std::string train;
  std::string valid;
  std::string test;
  std::string model;
  friend bool operator==(const PipelinePaths&, const PipelinePaths&) = default;
};

struct PipelineConfig {
  NormalizeConfig normalize = {true, true, true, true, true};
  PunctConfig punct;
  FeaturizerConfig featurizer;
  TrainConfig train;
  PipelinePaths paths;
};

// Throws DataError naming the offending key.
PipelineConfig ConfigFromJson(const std::string& json_text);
PipelineConfig LoadConfig(const std::filesystem::path& path);
// `invocation_json`, if given, is embedded under "invocation".
std::string ConfigToJson(const PipelineConfig& config,
                         std::string_view invocation_json = {});
void WriteConfig(const PipelineConfig& config,
                 const std::filesystem::path& path,
                 std::string_view invocation_json = {});

// "<output>.config.json" next to an output file.
std::filesystem::path ResolvedConfigPath(const std::filesystem::path& output);

}  // namespace nordlid

#endif  // NORDLID_CONFIG_H_
