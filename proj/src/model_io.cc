#include "nordlid/model_io.h"

#include <zlib.h>

#include <bit>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace nordlid {

namespace {

using Kind = ModelFormatError::Kind;

void PutU16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

uint32_t GetU32(std::string_view bytes, size_t at) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<uint8_t>(bytes[at + i])) << (8 * i);
  }
  return v;
}

uint16_t GetU16(std::string_view bytes, size_t at) {
  return static_cast<uint16_t>(static_cast<uint8_t>(bytes[at]) |
                               (static_cast<uint8_t>(bytes[at + 1]) << 8));
}

void PutFloats(std::string& out, const std::vector<float>& values) {
  out.reserve(out.size() + values.size() * 4);
  for (float f : values) PutU32(out, std::bit_cast<uint32_t>(f));
}

uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  size_t offset = 0;
  while (offset < bytes.size()) {
    const size_t chunk = std::min<size_t>(bytes.size() - offset, 1u << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + offset),
                static_cast<uInt>(chunk));
    offset += chunk;
  }
  return static_cast<uint32_t>(crc);
}

std::string Printable(std::string_view bytes) {
  std::string out;
  for (char c : bytes) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) {
      out.push_back(c);
    } else {
      static const char* kHex = "0123456789abcdef";
      out += "\\x";
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 0xf]);
    }
  }
  return out;
}

nlohmann::ordered_json HeaderFor(const FastModel& m) {
  nlohmann::ordered_json h;
  const auto& f = m.featurizer;
  h["featurizer"] = {{"min_n", f.min_n},
                     {"max_n", f.max_n},
                     {"bucket_count", f.bucket_count},
                     {"include_word_unigrams", f.include_word_unigrams},
                     {"embed_dim", f.embed_dim},
                     {"hash", "fnv1a64"}};
  const auto& n = m.normalize;
  h["normalize"] = {{"replace_urls", n.replace_urls},
                    {"replace_emails", n.replace_emails},
                    {"replace_numbers", n.replace_numbers},
                    {"lowercase", n.lowercase},
                    {"ascii_placeholders", n.ascii_placeholders}};
  h["hidden"] = kHiddenSize;
  h["labels"] = {"da", "nb", "nn", "sv"};
  h["threshold"] = m.threshold;
  const int dim = f.embed_dim;
  h["arrays"] = nlohmann::ordered_json::array(
      {{{"name", "embeddings"}, {"shape", {f.bucket_count, dim}}},
       {{"name", "w1"}, {"shape", {kHiddenSize, dim}}},
       {{"name", "b1"}, {"shape", {kHiddenSize}}},
       {{"name", "w2"}, {"shape", {kNumOutputs, kHiddenSize}}},
       {{"name", "b2"}, {"shape", {kNumOutputs}}}});
  return h;
}

}  // namespace

std::string SerializeModel(const FastModel& model) {
  model.Validate();
  const std::string header = HeaderFor(model).dump();
  std::string out;
  out.append(kModelMagic);
  PutU16(out, kModelVersion);
  PutU32(out, static_cast<uint32_t>(header.size()));
  out += header;
  PutFloats(out, model.params.embeddings);
  PutFloats(out, model.params.w1);
  PutFloats(out, model.params.b1);
  PutFloats(out, model.params.w2);
  PutFloats(out, model.params.b2);
  PutU32(out, Crc32(out));
  return out;
}

FastModel DeserializeModel(std::string_view bytes) {
  const std::string_view found = bytes.substr(0, kModelMagic.size());
  if (found != kModelMagic) {
    throw ModelFormatError(Kind::kMagic,
                           "not a model file: expected magic '" +
                               std::string(kModelMagic) + "', found '" +
                               Printable(found) + "'");
  }
  constexpr size_t kFixedPrefix = 4 + 2 + 4;
  if (bytes.size() < kFixedPrefix + 4) {
    throw ModelFormatError(Kind::kChecksum,
                           "checksum mismatch: model file truncated");
  }
  const uint16_t version = GetU16(bytes, 4);
  if (version != kModelVersion) {
    throw ModelFormatError(Kind::kVersion,
                           "unsupported model version: expected " +
                               std::to_string(kModelVersion) + ", found " +
                               std::to_string(version));
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  const uint32_t stored = GetU32(bytes, bytes.size() - 4);
  const uint32_t actual = Crc32(body);
  if (stored != actual) {
    std::ostringstream msg;
    msg << "checksum mismatch: stored crc32 " << std::hex << stored
        << ", computed " << actual;
    throw ModelFormatError(Kind::kChecksum, msg.str());
  }

  const uint32_t header_len = GetU32(bytes, 6);
  if (kFixedPrefix + header_len > body.size()) {
    throw ModelFormatError(Kind::kMalformed, "header length exceeds file");
  }
  FastModel m;
  try {
    const auto h = nlohmann::json::parse(body.substr(kFixedPrefix, header_len));
    const auto& f = h.at("featurizer");
    if (f.at("hash").get<std::string>() != "fnv1a64") {
      throw ModelFormatError(Kind::kMalformed, "unsupported hash function");
    }
    m.featurizer.min_n = f.at("min_n").get<int>();
    m.featurizer.max_n = f.at("max_n").get<int>();
    m.featurizer.bucket_count = f.at("bucket_count").get<uint32_t>();
    m.featurizer.include_word_unigrams =
        f.at("include_word_unigrams").get<bool>();
    m.featurizer.embed_dim = f.at("embed_dim").get<int>();
    const auto& n = h.at("normalize");
    m.normalize.replace_urls = n.at("replace_urls").get<bool>();
    m.normalize.replace_emails = n.at("replace_emails").get<bool>();
    m.normalize.replace_numbers = n.at("replace_numbers").get<bool>();
    m.normalize.lowercase = n.at("lowercase").get<bool>();
    m.normalize.ascii_placeholders = n.at("ascii_placeholders").get<bool>();
    if (h.at("hidden").get<int>() != kHiddenSize) {
      throw ModelFormatError(Kind::kMalformed, "unsupported hidden width");
    }
    if (h.at("labels") != nlohmann::json({"da", "nb", "nn", "sv"})) {
      throw ModelFormatError(Kind::kMalformed, "unexpected label order");
    }
    m.threshold = h.at("threshold").get<double>();
    m.featurizer.Validate();
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(Kind::kMalformed,
                           std::string("malformed model header: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(Kind::kMalformed, e.what());
  }

  m.params.Resize(m.featurizer.bucket_count, m.featurizer.embed_dim);
  size_t at = kFixedPrefix + header_len;
  const size_t floats = m.params.embeddings.size() + m.params.w1.size() +
                        m.params.b1.size() + m.params.w2.size() +
                        m.params.b2.size();
  if (body.size() - at != floats * 4) {
    throw ModelFormatError(Kind::kMalformed,
                           "weight section size does not match the header");
  }
  for (auto* v : {&m.params.embeddings, &m.params.w1, &m.params.b1,
                  &m.params.w2, &m.params.b2}) {
    for (float& x : *v) {
      x = std::bit_cast<float>(GetU32(bytes, at));
      at += 4;
    }
  }
  try {
    m.Validate();
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(Kind::kMalformed, e.what());
  }
  return m;
}

void SaveModel(const FastModel& model, const std::filesystem::path& path) {
  const std::string bytes = SerializeModel(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ModelFormatError(Kind::kIo,
                           "cannot open '" + path.string() + "' for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw ModelFormatError(Kind::kIo, "I/O error writing '" + path.string() + "'");
  }
}

FastModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ModelFormatError(Kind::kIo,
                           "cannot open '" + path.string() + "' for reading");
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw ModelFormatError(Kind::kIo, "I/O error reading '" + path.string() + "'");
  }
  return DeserializeModel(bytes);
}

}  // namespace nordlid
