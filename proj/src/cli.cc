#include "nordlid/cli.h"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nordlid/augment.h"
#include "nordlid/config.h"
#include "nordlid/eval.h"
#include "nordlid/ingest.h"
#include "nordlid/model_io.h"
#include "nordlid/normalize.h"
#include "nordlid/silverlabel.h"
#include "nordlid/train.h"
#include "nordlid/utf8.h"

namespace nordlid {

namespace {

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::string subcommand;
  std::vector<std::string> args;

  void Log(const std::string& message) const {
    err << "[nordlid " << subcommand << "] " << message << '\n';
  }

  std::string InvocationJson() const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["args"] = args;
    return j.dump();
  }

  // Every output file gets the resolved config written next to it.
  void WriteResolvedConfig(const PipelineConfig& cfg,
                           const std::filesystem::path& output) const {
    const auto path = ResolvedConfigPath(output);
    const std::string json = ConfigToJson(cfg, InvocationJson());
    Log("resolved config: " + nlohmann::json::parse(json).dump());
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << json;
    if (!file.flush()) throw DataError("cannot write '" + path.string() + "'");
    Log("resolved config written to " + path.string());
  }
};

std::vector<std::string> ReadLines(std::istream& in, const std::string& name) {
  std::vector<std::string> lines;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::FindInvalid(line)) {
      throw DataError(name + ":" + std::to_string(line_no) +
                      ": malformed UTF-8");
    }
    if (!TrimWhitespace(line).empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> ReadLinesFrom(const std::string& path,
                                       std::istream& stdin_stream) {
  if (path.empty() || path == "-") return ReadLines(stdin_stream, "<stdin>");
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open '" + path + "' for reading");
  return ReadLines(file, path);
}

// Output stream that is either a file or the context's stdout.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw DataError("cannot open '" + path + "' for writing");
      use_file_ = true;
    }
  }
  std::ostream& stream() { return use_file_ ? file_ : fallback_; }
  void Close(const std::string& path) {
    stream().flush();
    if (!stream()) throw DataError("I/O error writing '" + path + "'");
  }

 private:
  std::ostream& fallback_;
  std::ofstream file_;
  bool use_file_ = false;
};

PipelineConfig BaseConfig(const std::string& config_path) {
  return config_path.empty() ? PipelineConfig{} : LoadConfig(config_path);
}

// --- ingest -----------------------------------------------------------------

struct IngestArgs {
  std::string config;
  std::vector<std::string> sources;
  std::optional<size_t> other_samples;
  uint64_t seed = 0;
  bool dedupe = false;
  std::string split = "train";
  std::string out;
  std::string stats_of;
};

CorpusSource ParseSourceSpec(const std::string& spec) {
  const size_t a = spec.find(':');
  const size_t b = a == std::string::npos ? a : spec.find(':', a + 1);
  if (b == std::string::npos) {
    throw UsageError("--source expects FORMAT:LABELS:PATH, got '" + spec + "'");
  }
  CorpusSource source;
  try {
    source.format = ParseSourceFormat(spec.substr(0, a));
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  const std::string labels = spec.substr(a + 1, b - a - 1);
  if (labels != "-" && !labels.empty()) {
    source.assigned_labels = LabelSet::ParseString(labels);
  }
  source.path = spec.substr(b + 1);
  if (source.format != SourceFormat::kJsonl && !source.assigned_labels) {
    throw UsageError("source '" + spec + "' needs labels (e.g. conllu:nb:PATH)");
  }
  return source;
}

int RunIngest(const Context& ctx, const IngestArgs& a) {
  const PipelineConfig cfg = BaseConfig(a.config);
  if (!a.stats_of.empty()) {
    ctx.out << DatasetStats(ReadDataset(a.stats_of)).ToJson() << '\n';
    return kExitOk;
  }
  if (a.sources.empty()) throw UsageError("ingest needs at least one --source");
  if (a.out.empty()) throw UsageError("ingest needs --out");
  ComposeOptions options;
  for (const auto& spec : a.sources) options.sources.push_back(ParseSourceSpec(spec));
  options.other_sample_size = a.other_samples;
  options.seed = a.seed;
  options.deduplicate = a.dedupe;
  options.split = ParseSplit(a.split);
  const Dataset dataset = ComposeTrainingSet(options);
  WriteDataset(dataset, std::filesystem::path(a.out));
  ctx.Log("wrote " + std::to_string(dataset.size()) + " sentences to " + a.out);
  ctx.WriteResolvedConfig(cfg, a.out);
  ctx.out << DatasetStats(dataset).ToJson() << '\n';
  return kExitOk;
}

// --- normalize --------------------------------------------------------------

struct NormalizeArgs {
  std::string config;
  std::string in;
  std::string out;
  std::string format = "jsonl";
  bool no_urls = false;
  bool no_emails = false;
  bool no_numbers = false;
  bool lowercase = false;
  bool no_lowercase = false;
  bool glyphs = false;
};

int RunNormalize(const Context& ctx, const NormalizeArgs& a) {
  PipelineConfig cfg = BaseConfig(a.config);
  auto& n = cfg.normalize;
  if (a.no_urls) n.replace_urls = false;
  if (a.no_emails) n.replace_emails = false;
  if (a.no_numbers) n.replace_numbers = false;
  if (a.lowercase) n.lowercase = true;
  if (a.no_lowercase) n.lowercase = false;
  if (a.glyphs) n.ascii_placeholders = false;

  if (a.format == "plaintext") {
    Output out(a.out, ctx.out);
    for (const auto& line : ReadLinesFrom(a.in, ctx.in)) {
      out.stream() << Normalize(line, n) << '\n';
    }
    out.Close(a.out);
  } else if (a.format == "jsonl") {
    if (a.in.empty() || a.out.empty()) {
      throw UsageError("normalize --format jsonl needs --in and --out");
    }
    Dataset d = ReadDataset(a.in);
    for (auto& item : d.items) item.text = Normalize(item.text, n);
    WriteDataset(d, std::filesystem::path(a.out));
    ctx.Log("normalized " + std::to_string(d.size()) + " sentences");
  } else {
    throw UsageError("unknown --format '" + a.format + "'");
  }
  if (!a.out.empty() && a.out != "-") ctx.WriteResolvedConfig(cfg, a.out);
  return kExitOk;
}

// --- augment ----------------------------------------------------------------

struct AugmentArgs {
  std::string config;
  std::string in;
  std::string out;
  std::string split = "train";
  std::optional<double> rate;
  std::optional<double> space_prob;
  std::optional<uint64_t> seed;
  bool no_punct = false;
  std::string ner_annotations;
  uint64_t ner_seed = 0;
  std::string alphabet_source;
  std::string letters;
  std::string alphabet_label;
};

int RunAugment(const Context& ctx, const AugmentArgs& a) {
  PipelineConfig cfg = BaseConfig(a.config);
  if (a.rate) cfg.punct.rate = *a.rate;
  if (a.space_prob) cfg.punct.space_prob = *a.space_prob;
  if (a.seed) cfg.punct.seed = *a.seed;
  cfg.punct.Validate();

  const Split split = ParseSplit(a.split);
  if (split == Split::kValidation || split == Split::kTest) {
    throw DataError("augment refuses to modify a " +
                    std::string(SplitName(split)) +
                    " split; augmentation is for training data only");
  }
  Dataset d = ReadDataset(a.in, split);
  if (!a.ner_annotations.empty()) {
    d = NerSwap(d, ReadAnnotations(a.ner_annotations), a.ner_seed);
    ctx.Log("swapped entities using " + a.ner_annotations);
  }
  if (!a.alphabet_source.empty()) {
    if (a.letters.empty() || a.alphabet_label.empty()) {
      throw UsageError("--alphabet-source needs --letters and --alphabet-label");
    }
    CorpusSource source{a.alphabet_source, SourceFormat::kPlaintext,
                        LabelSet::ParseString(a.alphabet_label)};
    const auto sentences = ReadSourceSentences(source);
    Dataset variants = ExtractAlphabetVariants(
        sentences, utf8::Decode(a.letters), *source.assigned_labels, split);
    ctx.Log("harvested " + std::to_string(variants.size()) + " of " +
            std::to_string(sentences.size()) + " alphabet-variant sentences");
    for (auto& item : variants.items) {
      item.source = std::filesystem::path(a.alphabet_source).filename().string();
      d.items.push_back(std::move(item));
    }
  }
  if (!a.no_punct) {
    PunctSummary summary;
    d = PunctuationAugment(d, cfg.punct, &summary);
    ctx.Log("punctuation-augmented " + std::to_string(summary.augmented) +
            " of " + std::to_string(summary.eligible) + " eligible sentences");
  }
  WriteDataset(d, std::filesystem::path(a.out));
  ctx.WriteResolvedConfig(cfg, a.out);
  return kExitOk;
}

// --- silver-label -----------------------------------------------------------

struct SilverArgs {
  std::string config;
  std::string in;
  std::string out;
  std::string translations;
  std::string translator_cmd;
  std::string targets = "da,nb,nn,sv";
  std::string records_out;
};

int RunSilverLabel(const Context& ctx, const SilverArgs& a) {
  const PipelineConfig cfg = BaseConfig(a.config);
  const Dataset d = ReadDataset(a.in);
  std::vector<TranslationRecord> records;
  size_t failed = 0;
  if (!a.translations.empty() == !a.translator_cmd.empty()) {
    throw UsageError("give exactly one of --translations or --translator-cmd");
  }
  if (!a.translations.empty()) {
    records = ReadTranslations(a.translations);
  } else {
    const LabelSet targets = LabelSet::ParseString(a.targets);
    if (targets.IsOther()) throw UsageError("--targets cannot be 'other'");
    for (size_t i = 0; i < d.size(); ++i) {
      const auto& item = d.items[i];
      if (item.labels.IsOther()) continue;
      for (Language target : targets.Languages()) {
        if (item.labels.Contains(target)) continue;
        auto translation = RunTranslatorCommand(a.translator_cmd, target, item.text);
        if (!translation) {
          ++failed;
          continue;
        }
        records.push_back({i, target, std::move(*translation)});
      }
    }
    if (!a.records_out.empty()) {
      Output out(a.records_out, ctx.out);
      for (const auto& r : records) out.stream() << ToJsonLine(r) << '\n';
      out.Close(a.records_out);
    }
  }
  SilverResult result = ExtendLabels(d, records);
  result.summary.failed = failed;
  WriteDataset(result.dataset, std::filesystem::path(a.out));
  ctx.WriteResolvedConfig(cfg, a.out);
  ctx.out << result.summary.ToJson() << '\n';
  return kExitOk;
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
  std::string config;
  std::string train;
  std::string valid;
  std::string model;
  std::string preset;
  std::optional<int> epochs;
  std::optional<int> batch_size;
  std::optional<double> learning_rate;
  std::optional<double> momentum;
  std::optional<uint64_t> seed;
  std::optional<int> eval_interval;
  std::optional<int> patience;
  std::optional<int> embed_dim;
  std::optional<uint32_t> buckets;
  std::optional<int> min_n;
  std::optional<int> max_n;
  bool no_word_unigrams = false;
};

int RunTrain(const Context& ctx, const TrainArgs& a) {
  PipelineConfig cfg = BaseConfig(a.config);
  if (!a.preset.empty()) {
    if (a.preset == "paper-head") {
      cfg.featurizer = FeaturizerConfig::PaperHead();
    } else if (a.preset != "default") {
      throw UsageError("unknown --preset '" + a.preset + "'");
    }
  }
  auto& f = cfg.featurizer;
  if (a.embed_dim) f.embed_dim = *a.embed_dim;
  if (a.buckets) f.bucket_count = *a.buckets;
  if (a.min_n) f.min_n = *a.min_n;
  if (a.max_n) f.max_n = *a.max_n;
  if (a.no_word_unigrams) f.include_word_unigrams = false;
  auto& t = cfg.train;
  if (a.epochs) t.epochs = *a.epochs;
  if (a.batch_size) t.batch_size = *a.batch_size;
  if (a.learning_rate) t.learning_rate = *a.learning_rate;
  if (a.momentum) t.momentum = *a.momentum;
  if (a.seed) t.seed = *a.seed;
  if (a.eval_interval) t.eval_interval = *a.eval_interval;
  if (a.patience) t.patience = *a.patience;
  if (!a.train.empty()) cfg.paths.train = a.train;
  if (!a.valid.empty()) cfg.paths.valid = a.valid;
  if (!a.model.empty()) cfg.paths.model = a.model;
  if (cfg.paths.train.empty()) throw UsageError("train needs --train (or paths.train)");
  if (cfg.paths.model.empty()) throw UsageError("train needs --model (or paths.model)");
  try {
    f.Validate();
    t.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  auto load = [&](const std::string& path, Split split) {
    Dataset d = ReadDataset(path, split);
    for (auto& item : d.items) item.text = Normalize(item.text, cfg.normalize);
    return d;
  };
  const Dataset train = load(cfg.paths.train, Split::kTrain);
  const Dataset valid = cfg.paths.valid.empty()
                            ? Dataset{Split::kValidation, {}}
                            : load(cfg.paths.valid, Split::kValidation);
  ctx.Log("training on " + std::to_string(train.size()) + " sentences, " +
          std::to_string(valid.size()) + " for validation; " +
          std::to_string(HeadParameterCount(f.embed_dim)) + " head parameters");

  FastModel initial = FastModel::Initialize(f, t.seed);
  initial.normalize = cfg.normalize;
  const TrainResult result = TrainFrom(
      std::move(initial), train, valid, t, [&](const EvalPoint& p) {
        std::ostringstream msg;
        msg << "step " << p.step << " epoch " << p.epoch << " train_loss "
            << p.train_loss << " valid_loss " << p.valid_loss << " exact "
            << p.valid_exact_match << " loose " << p.valid_loose;
        ctx.Log(msg.str());
      });
  SaveModel(result.model, cfg.paths.model);
  ctx.Log("best checkpoint at step " + std::to_string(result.best_step) +
          " written to " + cfg.paths.model);

  nlohmann::ordered_json history;
  history["best_step"] = result.best_step;
  history["best_metric"] = result.best_metric;
  history["selection_metric"] = SelectionMetricName(t.selection_metric);
  history["total_steps"] = result.total_steps;
  history["stopped_early"] = result.stopped_early;
  history["head_parameters"] = result.model.HeadParameterCount();
  auto& points = history["history"] = nlohmann::ordered_json::array();
  for (const auto& p : result.history) {
    points.push_back({{"step", p.step},
                      {"epoch", p.epoch},
                      {"train_loss", p.train_loss},
                      {"valid_loss", p.valid_loss},
                      {"valid_exact_match", p.valid_exact_match},
                      {"valid_loose", p.valid_loose}});
  }
  std::ofstream hist(cfg.paths.model + ".history.json", std::ios::trunc);
  hist << history.dump(2) << '\n';
  ctx.WriteResolvedConfig(cfg, cfg.paths.model);
  return kExitOk;
}

// --- predict ----------------------------------------------------------------

struct PredictArgs {
  std::string model;
  std::string in;
  std::string out;
  std::string format = "tsv";
};

std::string PredictionJson(const std::string& text, const Prediction& p) {
  nlohmann::ordered_json j;
  j["text"] = text;
  j["labels"] = p.labels.Tags();
  j["top1"] = p.top1.Tags().front();
  j["probs"] = {{"da", p.probs[0]}, {"nb", p.probs[1]},
                {"nn", p.probs[2]}, {"sv", p.probs[3]}};
  return j.dump();
}

int RunPredict(const Context& ctx, const PredictArgs& a) {
  if (a.format != "tsv" && a.format != "jsonl") {
    throw UsageError("unknown --format '" + a.format + "'");
  }
  const FastModel model = LoadModel(a.model);
  Output out(a.out, ctx.out);
  for (const auto& line : ReadLinesFrom(a.in, ctx.in)) {
    const Prediction p = PredictText(model, line);
    if (a.format == "tsv") {
      out.stream() << line << '\t' << p.labels.ToString() << '\n';
    } else {
      out.stream() << PredictionJson(line, p) << '\n';
    }
  }
  out.Close(a.out);
  return kExitOk;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::string gold;
  std::string pred;
  std::string model;
  bool table = false;
  bool bench = false;
  int runs = 3;
  std::string name = "model";
};

int RunEvaluate(const Context& ctx, const EvaluateArgs& a) {
  if (a.pred.empty() == a.model.empty()) {
    throw UsageError("give exactly one of --pred or --model");
  }
  const Dataset gold = ReadDataset(a.gold, Split::kTest);
  std::vector<EvalPair> pairs;
  std::vector<LabelSet> top1;
  std::optional<BenchmarkResult> bench;
  if (!a.model.empty()) {
    const FastModel model = LoadModel(a.model);
    for (const auto& item : gold.items) {
      const Prediction p = PredictText(model, item.text);
      pairs.push_back({p.labels, item.labels});
      top1.push_back(p.top1);
    }
    if (a.bench) {
      std::vector<std::string> texts;
      for (const auto& item : gold.items) texts.push_back(item.text);
      bench = Benchmark([&](const std::string& s) { PredictText(model, s); },
                        texts, a.runs);
    }
  } else {
    std::ifstream in(a.pred, std::ios::binary);
    if (!in) throw DataError("cannot open '" + a.pred + "' for reading");
    std::string line;
    size_t line_no = 0;
    bool all_have_top1 = true;
    while (std::getline(in, line)) {
      ++line_no;
      if (TrimWhitespace(line).empty()) continue;
      const std::string where = a.pred + ":" + std::to_string(line_no) + ": ";
      const size_t k = pairs.size();
      if (k >= gold.size()) throw DataError(where + "more predictions than gold items");
      try {
        const auto j = nlohmann::json::parse(line);
        const auto tags = j.at("labels").get<std::vector<std::string>>();
        if (j.contains("text") && j["text"].get<std::string>() != gold.items[k].text) {
          throw DataError("text differs from gold item " + std::to_string(k + 1));
        }
        pairs.push_back({LabelSet::Parse(tags), gold.items[k].labels});
        if (j.contains("top1")) {
          top1.push_back(LabelSet::ParseString(j["top1"].get<std::string>()));
        } else {
          all_have_top1 = false;
        }
      } catch (const nlohmann::json::exception& e) {
        throw DataError(where + "malformed prediction: " + e.what());
      } catch (const DataError& e) {
        throw DataError(where + e.what());
      }
    }
    if (pairs.size() != gold.size()) {
      throw DataError(a.pred + ": " + std::to_string(pairs.size()) +
                      " predictions for " + std::to_string(gold.size()) +
                      " gold items");
    }
    if (!all_have_top1) top1.clear();
  }
  EvalReport report = Evaluate(pairs, top1);
  report.throughput = bench;
  if (a.table) {
    ctx.out << report.ToTable(a.name);
  } else {
    ctx.out << report.ToJson() << '\n';
  }
  return kExitOk;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string model;
  std::string in;
  std::string format = "plaintext";
  int runs = 3;
  size_t max_chars = 200;
};

int RunBench(const Context& ctx, const BenchArgs& a) {
  const FastModel model = LoadModel(a.model);
  std::vector<std::string> sentences;
  if (a.format == "jsonl") {
    for (auto& item : ReadDataset(a.in).items) sentences.push_back(std::move(item.text));
  } else if (a.format == "plaintext") {
    sentences = ReadLinesFrom(a.in, ctx.in);
  } else {
    throw UsageError("unknown --format '" + a.format + "'");
  }
  std::vector<std::string> kept;
  for (auto& s : sentences) {
    if (utf8::Decode(s).size() <= a.max_chars) kept.push_back(std::move(s));
  }
  if (kept.empty()) throw DataError("no sentences of at most " +
                                    std::to_string(a.max_chars) + " characters");
  const BenchmarkResult r = Benchmark(
      [&](const std::string& s) { PredictText(model, s); }, kept, a.runs);
  nlohmann::ordered_json j;
  j["sentences"] = kept.size();
  j["runs"] = a.runs;
  j["batch_size"] = 1;
  j["ms_per_sample"] = r.mean_ms_per_sample;
  j["ms_per_sample_runs"] = r.per_run_ms_per_sample;
  ctx.out << j.dump(2) << '\n';
  return kExitOk;
}

std::optional<std::string> ConfigArgument(const std::vector<std::string>& args) {
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// A config written by a previous run records that run's arguments. When it
// is passed to the same subcommand, those arguments are replayed first and
// the current ones appended, so explicit flags still take precedence.
std::vector<std::string> WithReplayedInvocation(
    const std::vector<std::string>& args) {
  if (args.empty()) return args;
  const auto config = ConfigArgument(args);
  if (!config) return args;
  std::ifstream file(*config, std::ios::binary);
  if (!file) return args;  // reported later by LoadConfig
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception&) {
    return args;  // reported later by LoadConfig
  }
  if (!j.is_object() || !j.contains("invocation")) return args;
  const auto& inv = j["invocation"];
  if (!inv.is_object() || inv.value("subcommand", "") != args[0] ||
      !inv.contains("args") || !inv["args"].is_array()) {
    return args;
  }
  const auto recorded = inv["args"].get<std::vector<std::string>>();
  std::vector<std::string> out = {args[0]};
  for (size_t i = 1; i < recorded.size(); ++i) {
    if (recorded[i] == "--config") {
      ++i;
      continue;
    }
    if (recorded[i].rfind("--config=", 0) == 0) continue;
    out.push_back(recorded[i]);
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-label language identification for Danish, Bokmål, "
               "Nynorsk and Swedish",
               "nordlid"};
  app.require_subcommand(1);
  // Later flags win, so a replayed invocation can be overridden.
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Compose a JSONL dataset from corpora");
  ingest_cmd->add_option("--config", ingest.config, "Pipeline config JSON");
  ingest_cmd->add_option("--source", ingest.sources,
                         "FORMAT:LABELS:PATH, e.g. conllu:nb:train.conllu or "
                         "conllu:other:de.conllu (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ingest_cmd->add_option("--other-samples", ingest.other_samples,
                         "Sentences drawn from the pooled 'other' sources");
  ingest_cmd->add_option("--seed", ingest.seed, "Sampling seed");
  ingest_cmd->add_flag("--dedupe", ingest.dedupe, "Drop repeated texts");
  ingest_cmd->add_option("--split", ingest.split, "Split of the output dataset");
  ingest_cmd->add_option("--out", ingest.out, "Output JSONL dataset");
  ingest_cmd->add_option("--stats", ingest.stats_of,
                         "Only print label statistics of this JSONL dataset");

  NormalizeArgs norm;
  auto* norm_cmd = app.add_subcommand("normalize", "Normalize URLs, e-mails, numbers and case");
  norm_cmd->add_option("--config", norm.config, "Pipeline config JSON");
  norm_cmd->add_option("--in", norm.in, "Input (JSONL dataset or text lines; - for stdin)");
  norm_cmd->add_option("--out", norm.out, "Output (- for stdout)");
  norm_cmd->add_option("--format", norm.format, "jsonl or plaintext");
  norm_cmd->add_flag("--no-urls", norm.no_urls);
  norm_cmd->add_flag("--no-emails", norm.no_emails);
  norm_cmd->add_flag("--no-numbers", norm.no_numbers);
  norm_cmd->add_flag("--lowercase", norm.lowercase);
  norm_cmd->add_flag("--no-lowercase", norm.no_lowercase);
  norm_cmd->add_flag("--glyph-placeholders", norm.glyphs,
                     "Write ⟨URL⟩/⟨mail⟩/⟨num⟩ instead of <URL>/<mail>/<num>");

  AugmentArgs aug;
  auto* aug_cmd = app.add_subcommand("augment", "Augment a training dataset");
  aug_cmd->add_option("--config", aug.config, "Pipeline config JSON");
  aug_cmd->add_option("--in", aug.in, "Input JSONL dataset")->required();
  aug_cmd->add_option("--out", aug.out, "Output JSONL dataset")->required();
  aug_cmd->add_option("--split", aug.split, "Split of the input (train or unsplit)");
  aug_cmd->add_option("--punct-rate", aug.rate, "Fraction of sentences to alter");
  aug_cmd->add_option("--space-prob", aug.space_prob, "Chance of a space before/after the mark");
  aug_cmd->add_option("--seed", aug.seed, "Punctuation seed");
  aug_cmd->add_flag("--no-punct", aug.no_punct, "Skip punctuation augmentation");
  aug_cmd->add_option("--ner-annotations", aug.ner_annotations,
                      "Entity annotation JSONL; enables entity swaps");
  aug_cmd->add_option("--ner-seed", aug.ner_seed, "Entity swap seed");
  aug_cmd->add_option("--alphabet-source", aug.alphabet_source,
                      "Plain-text sentences to harvest alphabet variants from");
  aug_cmd->add_option("--letters", aug.letters, "Letters to look for, e.g. äö");
  aug_cmd->add_option("--alphabet-label", aug.alphabet_label,
                      "Labels for harvested sentences, e.g. nb");

  SilverArgs silver;
  auto* silver_cmd = app.add_subcommand("silver-label",
                                        "Add labels from unchanged translations");
  silver_cmd->add_option("--config", silver.config, "Pipeline config JSON");
  silver_cmd->add_option("--in", silver.in, "Input JSONL dataset")->required();
  silver_cmd->add_option("--out", silver.out, "Output JSONL dataset")->required();
  silver_cmd->add_option("--translations", silver.translations,
                         "Translation records JSONL");
  silver_cmd->add_option("--translator-cmd", silver.translator_cmd,
                         "Shell command reading '<tag>\\t<text>' on stdin");
  silver_cmd->add_option("--targets", silver.targets, "Target languages for --translator-cmd");
  silver_cmd->add_option("--records-out", silver.records_out,
                         "Save generated translation records");

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train the fast classifier");
  train_cmd->add_option("--config", tr.config, "Pipeline config JSON");
  train_cmd->add_option("--train", tr.train, "Training JSONL");
  train_cmd->add_option("--valid", tr.valid, "Validation JSONL");
  train_cmd->add_option("--model", tr.model, "Output model file");
  train_cmd->add_option("--preset", tr.preset, "default or paper-head");
  train_cmd->add_option("--epochs", tr.epochs);
  train_cmd->add_option("--batch-size", tr.batch_size);
  train_cmd->add_option("--lr", tr.learning_rate);
  train_cmd->add_option("--momentum", tr.momentum);
  train_cmd->add_option("--seed", tr.seed);
  train_cmd->add_option("--eval-interval", tr.eval_interval);
  train_cmd->add_option("--patience", tr.patience);
  train_cmd->add_option("--embed-dim", tr.embed_dim);
  train_cmd->add_option("--buckets", tr.buckets);
  train_cmd->add_option("--min-n", tr.min_n);
  train_cmd->add_option("--max-n", tr.max_n);
  train_cmd->add_flag("--no-word-unigrams", tr.no_word_unigrams);

  PredictArgs pred;
  auto* pred_cmd = app.add_subcommand("predict", "Label sentences, one per line");
  pred_cmd->add_option("--model", pred.model, "Model file")->required();
  pred_cmd->add_option("--in", pred.in, "Input text file (default stdin)");
  pred_cmd->add_option("--out", pred.out, "Output file (default stdout)");
  pred_cmd->add_option("--format", pred.format, "tsv or jsonl");

  EvaluateArgs ev;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against gold labels");
  eval_cmd->add_option("--gold", ev.gold, "Gold JSONL dataset")->required();
  eval_cmd->add_option("--pred", ev.pred, "Prediction JSONL (from predict --format jsonl)");
  eval_cmd->add_option("--model", ev.model, "Model file to predict with");
  eval_cmd->add_flag("--table", ev.table, "Print a table instead of JSON");
  eval_cmd->add_flag("--bench", ev.bench, "Also time the model (needs --model)");
  eval_cmd->add_option("--runs", ev.runs, "Benchmark runs");
  eval_cmd->add_option("--name", ev.name, "System name in the table");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time batch-size-1 prediction");
  bench_cmd->add_option("--model", bench.model, "Model file")->required();
  bench_cmd->add_option("--in", bench.in, "Sentences (default stdin)");
  bench_cmd->add_option("--format", bench.format, "plaintext or jsonl");
  bench_cmd->add_option("--runs", bench.runs, "Timed passes");
  bench_cmd->add_option("--max-chars", bench.max_chars, "Skip longer sentences");

  std::vector<std::string> effective;
  try {
    effective = WithReplayedInvocation(args);
  } catch (const std::exception& e) {
    err << "nordlid: " << e.what() << '\n';
    return kExitData;
  }
  std::vector<std::string> reversed(effective.rbegin(), effective.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nordlid: " << e.what() << '\n';
    err << "Run 'nordlid --help' for usage.\n";
    return kExitUsage;
  }

  Context ctx{in, out, err, app.get_subcommands().front()->get_name(),
              effective};
  try {
    if (ingest_cmd->parsed()) return RunIngest(ctx, ingest);
    if (norm_cmd->parsed()) return RunNormalize(ctx, norm);
    if (aug_cmd->parsed()) return RunAugment(ctx, aug);
    if (silver_cmd->parsed()) return RunSilverLabel(ctx, silver);
    if (train_cmd->parsed()) return RunTrain(ctx, tr);
    if (pred_cmd->parsed()) return RunPredict(ctx, pred);
    if (eval_cmd->parsed()) return RunEvaluate(ctx, ev);
    if (bench_cmd->parsed()) return RunBench(ctx, bench);
  } catch (const UsageError& e) {
    err << "nordlid " << ctx.subcommand << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "nordlid " << ctx.subcommand << ": error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int RunCli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return RunCli(args, std::cin, std::cout, std::cerr);
}

}  // namespace nordlid
