// Multi-label evaluation: loose accuracy, exact-match accuracy and
// per-language F1, plus a batch-size-1 latency benchmark.

#ifndef NORDLID_EVAL_H_
#define NORDLID_EVAL_H_

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nordlid/core.h"

namespace nordlid {

struct EvalPair {
  LabelSet predicted;
  LabelSet gold;
};

enum class LooseMode : uint8_t {
  // The predictor is single-label; a multi-label prediction is an error.
  kSingle,
  // The caller passes a multi-label predictor's highest-probability label.
  kTop1,
};

// Fraction of pairs whose singleton prediction is among the gold labels.
// Throws std::invalid_argument for a non-singleton prediction: scoring a
// multi-label prediction by intersection would reward predicting everything.
double LooseAccuracy(std::span<const EvalPair> pairs, LooseMode mode);

double ExactMatchAccuracy(std::span<const EvalPair> pairs);

struct LanguageScore {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  // 0/0 precision or recall is reported as 0. f1 is nullopt when the label
  // occurs in neither predictions nor gold; such labels are left out of the
  // macro average.
  double precision = 0.0;
  double recall = 0.0;
  std::optional<double> f1;
};

struct F1Scores {
  std::array<LanguageScore, kNumLanguages> per_language;
  double macro_f1 = 0.0;

  const LanguageScore& operator[](Language lang) const {
    return per_language[Index(lang)];
  }
};

F1Scores PerLanguageF1(std::span<const EvalPair> pairs);

struct BenchmarkResult {
  double mean_ms_per_sample = 0.0;
  std::vector<double> per_run_ms_per_sample;
};

// Times `predict` one sentence at a time after one untimed warm-up pass and
// averages ms/sample over `runs` passes.
BenchmarkResult Benchmark(const std::function<void(const std::string&)>& predict,
                          std::span<const std::string> sentences, int runs = 3);

struct EvalReport {
  size_t n = 0;
  // Absent when no single-label or top-1 predictions were supplied.
  std::optional<double> loose_accuracy;
  double exact_match_accuracy = 0.0;
  F1Scores f1;
  std::optional<BenchmarkResult> throughput;

  std::string ToJson() const;
  // Aligned table: loose, exact, F1 per language, ms/sample.
  std::string ToTable(std::string_view system_name = "model") const;
};

// `top1` (optional) holds one singleton per pair for loose accuracy. When it
// is empty and every prediction is a singleton, the predictions are used.
EvalReport Evaluate(std::span<const EvalPair> pairs,
                    std::span<const LabelSet> top1 = {});

}  // namespace nordlid

#endif  // NORDLID_EVAL_H_
