#include "nordlid/eval.h"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nordlid {

double LooseAccuracy(std::span<const EvalPair> pairs, LooseMode mode) {
  if (pairs.empty()) return 0.0;
  size_t correct = 0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto& pair = pairs[i];
    if (pair.predicted.size() != 1) {
      throw std::invalid_argument(
          std::string("loose accuracy needs single-label predictions") +
          (mode == LooseMode::kTop1 ? " (pass the top-1 label)" : "") +
          "; pair " + std::to_string(i) + " predicts '" +
          pair.predicted.ToString() + "'");
    }
    if (pair.gold.IsSupersetOf(pair.predicted)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

double ExactMatchAccuracy(std::span<const EvalPair> pairs) {
  if (pairs.empty()) return 0.0;
  size_t correct = 0;
  for (const auto& pair : pairs) {
    if (pair.predicted == pair.gold) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

F1Scores PerLanguageF1(std::span<const EvalPair> pairs) {
  F1Scores scores;
  for (const auto& pair : pairs) {
    for (Language lang : kAllLanguages) {
      const bool p = pair.predicted.Contains(lang);
      const bool g = pair.gold.Contains(lang);
      auto& s = scores.per_language[Index(lang)];
      if (p && g) ++s.tp;
      if (p && !g) ++s.fp;
      if (!p && g) ++s.fn;
    }
  }
  double sum = 0.0;
  int defined = 0;
  for (auto& s : scores.per_language) {
    if (s.tp + s.fp > 0) s.precision = static_cast<double>(s.tp) / (s.tp + s.fp);
    if (s.tp + s.fn > 0) s.recall = static_cast<double>(s.tp) / (s.tp + s.fn);
    if (s.tp + s.fp + s.fn == 0) continue;
    const double denom = s.precision + s.recall;
    s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
    sum += *s.f1;
    ++defined;
  }
  scores.macro_f1 = defined ? sum / defined : 0.0;
  return scores;
}

BenchmarkResult Benchmark(const std::function<void(const std::string&)>& predict,
                          std::span<const std::string> sentences, int runs) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (sentences.empty()) throw std::invalid_argument("no sentences to time");
  using Clock = std::chrono::steady_clock;
  for (const auto& s : sentences) predict(s);  // warm-up

  BenchmarkResult result;
  double total = 0.0;
  for (int r = 0; r < runs; ++r) {
    Clock::duration elapsed{0};
    for (const auto& s : sentences) {
      const auto start = Clock::now();
      predict(s);
      elapsed += Clock::now() - start;
    }
    const double ms =
        std::chrono::duration<double, std::milli>(elapsed).count() /
        static_cast<double>(sentences.size());
    result.per_run_ms_per_sample.push_back(ms);
    total += ms;
  }
  result.mean_ms_per_sample = total / runs;
  return result;
}

EvalReport Evaluate(std::span<const EvalPair> pairs,
                    std::span<const LabelSet> top1) {
  EvalReport report;
  report.n = pairs.size();
  report.exact_match_accuracy = ExactMatchAccuracy(pairs);
  report.f1 = PerLanguageF1(pairs);
  if (!top1.empty()) {
    if (top1.size() != pairs.size()) {
      throw std::invalid_argument("top-1 labels must match the pair count");
    }
    std::vector<EvalPair> loose;
    loose.reserve(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      loose.push_back({top1[i], pairs[i].gold});
    }
    report.loose_accuracy = LooseAccuracy(loose, LooseMode::kTop1);
  } else {
    bool single = true;
    for (const auto& p : pairs) single = single && p.predicted.size() == 1;
    if (single) report.loose_accuracy = LooseAccuracy(pairs, LooseMode::kSingle);
  }
  return report;
}

std::string EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["loose_accuracy"] =
      loose_accuracy ? nlohmann::ordered_json(*loose_accuracy) : nullptr;
  j["exact_match_accuracy"] = exact_match_accuracy;
  nlohmann::ordered_json per;
  for (Language lang : kAllLanguages) {
    const auto& s = f1[lang];
    per[std::string(LanguageTag(lang))] = {
        {"precision", s.precision},
        {"recall", s.recall},
        {"f1", s.f1 ? nlohmann::ordered_json(*s.f1) : nullptr},
        {"tp", s.tp},
        {"fp", s.fp},
        {"fn", s.fn}};
  }
  j["per_language"] = per;
  j["macro_f1"] = f1.macro_f1;
  j["f1_convention"] =
      "labels absent from both predictions and gold are excluded from "
      "macro_f1; a 0/0 precision or recall counts as 0";
  if (throughput) {
    j["ms_per_sample"] = throughput->mean_ms_per_sample;
    j["ms_per_sample_runs"] = throughput->per_run_ms_per_sample;
  }
  return j.dump(2);
}

std::string EvalReport::ToTable(std::string_view system_name) const {
  auto pct = [](std::optional<double> v) {
    if (!v) return std::string("-");
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * *v);
    return std::string(buf);
  };
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line),
                "%-16s %7s %7s %7s %7s %7s %7s %7s %9s\n", "System", "Loose",
                "Exact", "DA F1", "NB F1", "NN F1", "SV F1", "Oth F1",
                "ms/sample");
  out << line;
  std::string ms = "-";
  if (throughput) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", throughput->mean_ms_per_sample);
    ms = buf;
  }
  std::snprintf(line, sizeof(line),
                "%-16.16s %7s %7s %7s %7s %7s %7s %7s %9s\n",
                std::string(system_name).c_str(), pct(loose_accuracy).c_str(),
                pct(exact_match_accuracy).c_str(),
                pct(f1[Language::kDa].f1).c_str(),
                pct(f1[Language::kNb].f1).c_str(),
                pct(f1[Language::kNn].f1).c_str(),
                pct(f1[Language::kSv].f1).c_str(),
                pct(f1[Language::kOther].f1).c_str(), ms.c_str());
  out << line;
  return out.str();
}

}  // namespace nordlid
