// Binary model files.
//
//   "SLFX" | u16 version | u32 header length | UTF-8 JSON header |
//   f32 embeddings | f32 W1 | f32 b1 | f32 W2 | f32 b2 | u32 CRC32
//
// All integers and floats are little-endian; the CRC covers every preceding
// byte.

#ifndef NORDLID_MODEL_IO_H_
#define NORDLID_MODEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nordlid/model.h"

namespace nordlid {

inline constexpr std::string_view kModelMagic = "SLFX";
inline constexpr uint16_t kModelVersion = 1;

class ModelFormatError : public std::runtime_error {
 public:
  enum class Kind { kIo, kMagic, kVersion, kChecksum, kMalformed };

  ModelFormatError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string SerializeModel(const FastModel& model);
FastModel DeserializeModel(std::string_view bytes);

void SaveModel(const FastModel& model, const std::filesystem::path& path);
FastModel LoadModel(const std::filesystem::path& path);

}  // namespace nordlid

#endif  // NORDLID_MODEL_IO_H_
