#include "nordlid/silverlabel.h"

#include <sys/wait.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unistd.h>

#include <csignal>
#include <cstring>
#include <fstream>
#include <istream>

#include "json.hpp"
#include "nordlid/utf8.h"

namespace nordlid {

std::vector<TranslationRecord> ReadTranslations(std::istream& in,
                                                const std::string& name) {
  std::vector<TranslationRecord> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (TrimWhitespace(line).empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      TranslationRecord r;
      r.item_index = j.at("item_index").get<size_t>();
      r.target = ParseLanguage(j.at("target").get<std::string>());
      r.translation = j.at("translation").get<std::string>();
      if (r.target == Language::kOther) {
        throw DataError("translation target cannot be 'other'");
      }
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + "malformed translation record: " + e.what());
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  return out;
}

std::vector<TranslationRecord> ReadTranslations(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return ReadTranslations(in, path.string());
}

std::string ToJsonLine(const TranslationRecord& record) {
  nlohmann::ordered_json j;
  j["item_index"] = record.item_index;
  j["target"] = LanguageTag(record.target);
  j["translation"] = record.translation;
  return j.dump();
}

std::string CanonicalForm(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  std::string composed;
  if (U_SUCCESS(status)) {
    icu::UnicodeString src = icu::UnicodeString::fromUTF8(
        icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    icu::UnicodeString dst = nfc->normalize(src, status);
    if (U_SUCCESS(status)) dst.toUTF8String(composed);
  }
  if (U_FAILURE(status)) composed.assign(text);

  std::string out;
  out.reserve(composed.size());
  bool pending_space = false;
  for (char32_t cp : utf8::Decode(composed)) {
    if (utf8::IsWhitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8::AppendCodePoint(cp, out);
  }
  return out;
}

bool CanonicalCompare(std::string_view a, std::string_view b) {
  if (a == b) return true;
  return CanonicalForm(a) == CanonicalForm(b);
}

size_t SilverSummary::TotalAdded() const {
  size_t total = 0;
  for (size_t n : added) total += n;
  return total;
}

std::string SilverSummary::ToJson() const {
  nlohmann::ordered_json j;
  j["records_seen"] = records_seen;
  j["unchanged"] = unchanged;
  j["skipped_other"] = skipped_other;
  j["failed"] = failed;
  nlohmann::ordered_json per;
  for (Language lang : kScandinavian) {
    per[std::string(LanguageTag(lang))] = added[Index(lang)];
  }
  j["labels_added"] = per;
  return j.dump(2);
}

SilverResult ExtendLabels(const Dataset& dataset,
                          std::span<const TranslationRecord> records) {
  // Validate everything before touching the output.
  for (const auto& r : records) {
    if (r.item_index >= dataset.size()) {
      throw DataError("translation record index " +
                      std::to_string(r.item_index) + " out of range (" +
                      std::to_string(dataset.size()) + " items)");
    }
    if (r.target == Language::kOther) {
      throw DataError("translation record targets 'other'");
    }
  }

  SilverResult result{dataset, {}};
  auto& summary = result.summary;
  for (const auto& r : records) {
    ++summary.records_seen;
    auto& item = result.dataset.items[r.item_index];
    if (item.labels.IsOther()) {
      ++summary.skipped_other;
      continue;
    }
    if (!CanonicalCompare(item.text, r.translation)) continue;
    ++summary.unchanged;
    if (!item.labels.Contains(r.target)) {
      item.labels = item.labels.With(r.target);
      ++summary.added[Index(r.target)];
    }
  }
  return result;
}

std::optional<std::string> RunTranslatorCommand(const std::string& command,
                                                Language target,
                                                std::string_view text) {
  std::signal(SIGPIPE, SIG_IGN);
  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0) return std::nullopt;
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    return std::nullopt;
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      close(fd);
    }
    return std::nullopt;
  }
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      close(fd);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);

  std::string request(LanguageTag(target));
  request += '\t';
  request += text;
  request += '\n';
  size_t written = 0;
  while (written < request.size()) {
    const ssize_t n = write(to_child[1], request.data() + written,
                            request.size() - written);
    if (n <= 0) break;
    written += static_cast<size_t>(n);
  }
  close(to_child[1]);

  std::string response;
  char buf[4096];
  for (;;) {
    const ssize_t n = read(from_child[0], buf, sizeof(buf));
    if (n <= 0) break;
    response.append(buf, static_cast<size_t>(n));
  }
  close(from_child[0]);

  int status = 0;
  if (waitpid(pid, &status, 0) < 0) return std::nullopt;
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return std::nullopt;
  const size_t newline = response.find('\n');
  if (newline != std::string::npos) response.resize(newline);
  if (!response.empty() && response.back() == '\r') response.pop_back();
  return response;
}

}  // namespace nordlid
