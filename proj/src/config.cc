#include "nordlid/config.h"

#include <fstream>
#include <iterator>
#include <set>

#include "json.hpp"

namespace nordlid {

namespace {

using Json = nlohmann::ordered_json;

void RejectUnknown(const Json& j, const std::string& section,
                   const std::set<std::string>& known) {
  if (!j.is_object()) throw DataError("config section '" + section + "' must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) {
      throw DataError("unknown config key '" + section + "." + key + "'");
    }
  }
}

template <typename T>
void Read(const Json& j, const char* key, T& out, const std::string& section) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError("config key '" + section + "." + key +
                    "' has the wrong type");
  }
}

}  // namespace

PipelineConfig ConfigFromJson(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed config JSON: ") + e.what());
  }
  PipelineConfig cfg;
  RejectUnknown(root, "config",
                {"normalize", "punct", "featurizer", "train", "paths",
                 "invocation"});

  if (root.contains("normalize")) {
    const auto& j = root["normalize"];
    RejectUnknown(j, "normalize",
                  {"replace_urls", "replace_emails", "replace_numbers",
                   "lowercase", "ascii_placeholders"});
    auto& n = cfg.normalize;
    Read(j, "replace_urls", n.replace_urls, "normalize");
    Read(j, "replace_emails", n.replace_emails, "normalize");
    Read(j, "replace_numbers", n.replace_numbers, "normalize");
    Read(j, "lowercase", n.lowercase, "normalize");
    Read(j, "ascii_placeholders", n.ascii_placeholders, "normalize");
  }
  if (root.contains("punct")) {
    const auto& j = root["punct"];
    RejectUnknown(j, "punct",
                  {"rate", "end_marks", "start_marks", "space_prob", "seed"});
    auto& p = cfg.punct;
    Read(j, "rate", p.rate, "punct");
    Read(j, "end_marks", p.end_marks, "punct");
    Read(j, "start_marks", p.start_marks, "punct");
    Read(j, "space_prob", p.space_prob, "punct");
    Read(j, "seed", p.seed, "punct");
    p.Validate();
  }
  if (root.contains("featurizer")) {
    const auto& j = root["featurizer"];
    RejectUnknown(j, "featurizer",
                  {"preset", "min_n", "max_n", "bucket_count",
                   "include_word_unigrams", "embed_dim"});
    auto& f = cfg.featurizer;
    if (j.contains("preset")) {
      const std::string preset = j["preset"].get<std::string>();
      if (preset == "paper-head") {
        f = FeaturizerConfig::PaperHead();
      } else if (preset != "default") {
        throw DataError("unknown featurizer preset '" + preset + "'");
      }
    }
    Read(j, "min_n", f.min_n, "featurizer");
    Read(j, "max_n", f.max_n, "featurizer");
    Read(j, "bucket_count", f.bucket_count, "featurizer");
    Read(j, "include_word_unigrams", f.include_word_unigrams, "featurizer");
    Read(j, "embed_dim", f.embed_dim, "featurizer");
    try {
      f.Validate();
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("featurizer: ") + e.what());
    }
  }
  if (root.contains("train")) {
    const auto& j = root["train"];
    RejectUnknown(j, "train",
                  {"epochs", "batch_size", "learning_rate", "momentum", "seed",
                   "eval_interval", "patience", "selection_metric"});
    auto& t = cfg.train;
    Read(j, "epochs", t.epochs, "train");
    Read(j, "batch_size", t.batch_size, "train");
    Read(j, "learning_rate", t.learning_rate, "train");
    Read(j, "momentum", t.momentum, "train");
    Read(j, "seed", t.seed, "train");
    Read(j, "eval_interval", t.eval_interval, "train");
    Read(j, "patience", t.patience, "train");
    if (j.contains("selection_metric")) {
      try {
        t.selection_metric =
            ParseSelectionMetric(j["selection_metric"].get<std::string>());
      } catch (const std::exception& e) {
        throw DataError(std::string("train.selection_metric: ") + e.what());
      }
    }
    try {
      t.Validate();
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("train: ") + e.what());
    }
  }
  if (root.contains("paths")) {
    const auto& j = root["paths"];
    RejectUnknown(j, "paths", {"train", "valid", "test", "model"});
    Read(j, "train", cfg.paths.train, "paths");
    Read(j, "valid", cfg.paths.valid, "paths");
    Read(j, "test", cfg.paths.test, "paths");
    Read(j, "model", cfg.paths.model, "paths");
  }
  return cfg;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open config '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return ConfigFromJson(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string ConfigToJson(const PipelineConfig& cfg,
                         std::string_view invocation_json) {
  Json root;
  const auto& n = cfg.normalize;
  root["normalize"] = {{"replace_urls", n.replace_urls},
                       {"replace_emails", n.replace_emails},
                       {"replace_numbers", n.replace_numbers},
                       {"lowercase", n.lowercase},
                       {"ascii_placeholders", n.ascii_placeholders}};
  const auto& p = cfg.punct;
  root["punct"] = {{"rate", p.rate},
                   {"end_marks", p.end_marks},
                   {"start_marks", p.start_marks},
                   {"space_prob", p.space_prob},
                   {"seed", p.seed}};
  const auto& f = cfg.featurizer;
  root["featurizer"] = {{"min_n", f.min_n},
                        {"max_n", f.max_n},
                        {"bucket_count", f.bucket_count},
                        {"include_word_unigrams", f.include_word_unigrams},
                        {"embed_dim", f.embed_dim}};
  const auto& t = cfg.train;
  root["train"] = {{"epochs", t.epochs},
                   {"batch_size", t.batch_size},
                   {"learning_rate", t.learning_rate},
                   {"momentum", t.momentum},
                   {"seed", t.seed},
                   {"eval_interval", t.eval_interval},
                   {"patience", t.patience},
                   {"selection_metric", SelectionMetricName(t.selection_metric)}};
  root["paths"] = {{"train", cfg.paths.train},
                   {"valid", cfg.paths.valid},
                   {"test", cfg.paths.test},
                   {"model", cfg.paths.model}};
  if (!invocation_json.empty()) root["invocation"] = Json::parse(invocation_json);
  return root.dump(2) + "\n";
}

void WriteConfig(const PipelineConfig& config,
                 const std::filesystem::path& path,
                 std::string_view invocation_json) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write config '" + path.string() + "'");
  out << ConfigToJson(config, invocation_json);
  if (!out) throw DataError("I/O error writing '" + path.string() + "'");
}

std::filesystem::path ResolvedConfigPath(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".config.json";
  return p;
}

}  // namespace nordlid
