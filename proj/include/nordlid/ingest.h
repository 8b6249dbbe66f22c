// Corpus ingestion: CoNLL-U sentence extraction, the JSONL dataset format,
// training-set composition with `other` sampling, and label statistics.

#ifndef NORDLID_INGEST_H_
#define NORDLID_INGEST_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nordlid/core.h"

namespace nordlid {

struct ConlluText {
  std::vector<std::string> sentences;
  // Blocks that had no `# text =` comment (or an empty one).
  size_t blocks_without_text = 0;
};

// Extracts the `# text = ...` payload of every sentence block. Only comment
// lines and blank-line block separation are interpreted. Throws DataError on
// malformed UTF-8, naming the line.
ConlluText ParseConllu(std::istream& in);

// JSONL dataset records: {"text": ..., "labels": [...], "source": ...}.
// `name` is used in error messages.
Dataset ReadDataset(std::istream& in, const std::string& name,
                    Split split = Split::kUnsplit);
Dataset ReadDataset(const std::filesystem::path& path,
                    Split split = Split::kUnsplit);

std::string ToJsonLine(const LabeledSentence& sentence);
LabeledSentence FromJsonLine(const std::string& line);
void WriteDataset(const Dataset& dataset, std::ostream& out);
void WriteDataset(const Dataset& dataset, const std::filesystem::path& path);

enum class SourceFormat : uint8_t { kConllu, kJsonl, kPlaintext };

SourceFormat ParseSourceFormat(std::string_view name);

struct CorpusSource {
  std::filesystem::path path;
  SourceFormat format = SourceFormat::kConllu;
  // Required for conllu and plaintext; applies to every extracted sentence.
  // JSONL sources carry their own labels and ignore this.
  std::optional<LabelSet> assigned_labels;
};

struct ComposeOptions {
  std::vector<CorpusSource> sources;
  // Number of sentences drawn (uniformly, without replacement) from the pool
  // of all sources assigned {other}. Unset keeps the whole pool.
  std::optional<size_t> other_sample_size;
  uint64_t seed = 0;
  // Drops later items whose text already appeared. Off by default.
  bool deduplicate = false;
  Split split = Split::kTrain;
};

// Concatenates all sources in declared order. Deterministic in (options).
Dataset ComposeTrainingSet(const ComposeOptions& options);

// Reads the sentences of one conllu/plaintext source without labels.
std::vector<std::string> ReadSourceSentences(const CorpusSource& source);

// Per-language counts where a k-label item counts once toward each of its k
// languages, plus the number of items.
struct LabelDistribution {
  std::array<size_t, kNumLanguages> counts{};
  size_t total = 0;

  size_t count(Language lang) const { return counts[Index(lang)]; }
  size_t LabelSum() const;
  // count / LabelSum(), 0 when empty.
  double Share(Language lang) const;
  std::string ToJson() const;
};

LabelDistribution DatasetStats(const Dataset& dataset);

}  // namespace nordlid

#endif  // NORDLID_INGEST_H_
