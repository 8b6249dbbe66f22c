#include "nordlid/ingest.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "nordlid/random.h"
#include "nordlid/utf8.h"

namespace nordlid {

namespace {

std::string Located(const std::string& name, size_t line,
                    const std::string& message) {
  return name + ":" + std::to_string(line) + ": " + message;
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Matches "# text = payload" but not "# text_en = ...".
std::optional<std::string_view> TextComment(std::string_view line) {
  if (line.empty() || line.front() != '#') return std::nullopt;
  size_t i = 1;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (line.substr(i, 4) != "text") return std::nullopt;
  i += 4;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i >= line.size() || line[i] != '=') return std::nullopt;
  return TrimWhitespace(line.substr(i + 1));
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::vector<std::string> ReadPlaintext(std::istream& in,
                                       const std::string& name) {
  std::vector<std::string> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (utf8::FindInvalid(line)) {
      throw DataError(Located(name, line_no, "malformed UTF-8"));
    }
    std::string_view trimmed = TrimWhitespace(line);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  }
  return out;
}

}  // namespace

ConlluText ParseConllu(std::istream& in) {
  ConlluText result;
  std::string line;
  size_t line_no = 0;
  bool in_block = false;
  std::optional<std::string> text;

  auto close_block = [&] {
    if (!in_block) return;
    if (text && !text->empty()) {
      result.sentences.push_back(std::move(*text));
    } else {
      ++result.blocks_without_text;
    }
    text.reset();
    in_block = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (auto bad = utf8::FindInvalid(line)) {
      throw DataError("line " + std::to_string(line_no) +
                      ": malformed UTF-8 at byte " + std::to_string(*bad));
    }
    if (TrimWhitespace(line).empty()) {
      close_block();
      continue;
    }
    in_block = true;
    if (!text) {
      if (auto payload = TextComment(line)) text = std::string(*payload);
    }
  }
  close_block();
  return result;
}

std::string ToJsonLine(const LabeledSentence& sentence) {
  nlohmann::ordered_json j;
  j["text"] = sentence.text;
  j["labels"] = sentence.labels.Tags();
  if (sentence.source) j["source"] = *sentence.source;
  return j.dump();
}

LabeledSentence FromJsonLine(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("record is not a JSON object");
  if (!j.contains("text") || !j["text"].is_string()) {
    throw DataError("record lacks a string field 'text'");
  }
  if (!j.contains("labels") || !j["labels"].is_array()) {
    throw DataError("record lacks an array field 'labels'");
  }
  std::vector<std::string> tags;
  for (const auto& tag : j["labels"]) {
    if (!tag.is_string()) throw DataError("labels must be strings");
    tags.push_back(tag.get<std::string>());
  }
  LabeledSentence sentence{j["text"].get<std::string>(), LabelSet::Parse(tags),
                           std::nullopt};
  if (j.contains("source") && !j["source"].is_null()) {
    if (!j["source"].is_string()) throw DataError("'source' must be a string");
    sentence.source = j["source"].get<std::string>();
  }
  ValidateSentence(sentence);
  return sentence;
}

Dataset ReadDataset(std::istream& in, const std::string& name, Split split) {
  Dataset dataset;
  dataset.split = split;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (TrimWhitespace(line).empty()) continue;
    try {
      dataset.items.push_back(FromJsonLine(line));
    } catch (const DataError& e) {
      throw DataError(Located(name, line_no, e.what()));
    }
  }
  if (in.bad()) throw DataError("I/O error while reading '" + name + "'");
  return dataset;
}

Dataset ReadDataset(const std::filesystem::path& path, Split split) {
  std::ifstream in = OpenInput(path);
  return ReadDataset(in, path.string(), split);
}

void WriteDataset(const Dataset& dataset, std::ostream& out) {
  for (const auto& item : dataset.items) out << ToJsonLine(item) << '\n';
}

void WriteDataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  WriteDataset(dataset, out);
  out.flush();
  if (!out) throw DataError("I/O error while writing '" + path.string() + "'");
}

SourceFormat ParseSourceFormat(std::string_view name) {
  if (name == "conllu") return SourceFormat::kConllu;
  if (name == "jsonl") return SourceFormat::kJsonl;
  if (name == "plaintext" || name == "txt") return SourceFormat::kPlaintext;
  throw DataError("unknown source format '" + std::string(name) +
                  "' (expected conllu, jsonl or plaintext)");
}

std::vector<std::string> ReadSourceSentences(const CorpusSource& source) {
  std::ifstream in = OpenInput(source.path);
  const std::string name = source.path.string();
  switch (source.format) {
    case SourceFormat::kConllu:
      try {
        return ParseConllu(in).sentences;
      } catch (const DataError& e) {
        throw DataError(name + ": " + e.what());
      }
    case SourceFormat::kPlaintext:
      return ReadPlaintext(in, name);
    case SourceFormat::kJsonl: {
      std::vector<std::string> out;
      for (auto& item : ReadDataset(in, name).items) {
        out.push_back(std::move(item.text));
      }
      return out;
    }
  }
  return {};
}

Dataset ComposeTrainingSet(const ComposeOptions& options) {
  std::vector<std::vector<LabeledSentence>> per_source;
  per_source.reserve(options.sources.size());
  size_t other_pool = 0;

  for (const auto& source : options.sources) {
    std::vector<LabeledSentence> items;
    const std::string source_name = source.path.filename().string();
    if (source.format == SourceFormat::kJsonl) {
      std::ifstream in = OpenInput(source.path);
      items = ReadDataset(in, source.path.string()).items;
      for (auto& item : items) {
        if (!item.source) item.source = source_name;
      }
    } else {
      if (!source.assigned_labels) {
        throw DataError("source '" + source.path.string() +
                        "' needs assigned labels");
      }
      for (auto& text : ReadSourceSentences(source)) {
        items.push_back({std::move(text), *source.assigned_labels, source_name});
      }
      if (source.assigned_labels->IsOther()) other_pool += items.size();
    }
    per_source.push_back(std::move(items));
  }

  // Choose which pooled `other` sentences survive: a uniformly random subset
  // of the requested size, kept in pool order.
  std::vector<bool> keep_other(other_pool, true);
  if (options.other_sample_size && *options.other_sample_size < other_pool) {
    std::vector<size_t> order(other_pool);
    for (size_t i = 0; i < other_pool; ++i) order[i] = i;
    Rng rng(options.seed);
    rng.Shuffle(order);
    std::fill(keep_other.begin(), keep_other.end(), false);
    for (size_t i = 0; i < *options.other_sample_size; ++i) {
      keep_other[order[i]] = true;
    }
  }

  Dataset out;
  out.split = options.split;
  std::unordered_set<std::string> seen;
  size_t pool_index = 0;
  for (size_t s = 0; s < options.sources.size(); ++s) {
    const auto& source = options.sources[s];
    const bool pooled = source.format != SourceFormat::kJsonl &&
                        source.assigned_labels->IsOther();
    for (auto& item : per_source[s]) {
      if (pooled && !keep_other[pool_index++]) continue;
      if (options.deduplicate && !seen.insert(item.text).second) continue;
      out.items.push_back(std::move(item));
    }
  }
  return out;
}

size_t LabelDistribution::LabelSum() const {
  size_t sum = 0;
  for (size_t c : counts) sum += c;
  return sum;
}

double LabelDistribution::Share(Language lang) const {
  const size_t sum = LabelSum();
  return sum == 0 ? 0.0
                  : static_cast<double>(count(lang)) / static_cast<double>(sum);
}

std::string LabelDistribution::ToJson() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json counts_json, shares_json;
  for (Language lang : kAllLanguages) {
    counts_json[std::string(LanguageTag(lang))] = count(lang);
    shares_json[std::string(LanguageTag(lang))] = Share(lang);
  }
  j["counts"] = counts_json;
  j["shares"] = shares_json;
  j["total"] = total;
  return j.dump(2);
}

LabelDistribution DatasetStats(const Dataset& dataset) {
  LabelDistribution dist;
  for (const auto& item : dataset.items) {
    for (Language lang : item.labels.Languages()) ++dist.counts[Index(lang)];
  }
  dist.total = dataset.size();
  return dist;
}

}  // namespace nordlid
