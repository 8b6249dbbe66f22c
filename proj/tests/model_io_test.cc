#include "nordlid/model_io.h"

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include <unistd.h>

namespace nordlid {
namespace {

FastModel SmallModel() {
  FeaturizerConfig cfg;
  cfg.bucket_count = 1u << 8;
  cfg.embed_dim = 6;
  FastModel m = FastModel::Initialize(cfg, 11);
  m.normalize = NormalizeConfig::Training();
  m.threshold = 0.4;
  return m;
}

ModelFormatError::Kind KindOf(std::string_view bytes) {
  try {
    DeserializeModel(bytes);
  } catch (const ModelFormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted a bad model";
  return ModelFormatError::Kind::kIo;
}

TEST(ModelIoTest, RoundTripIsExact) {
  const FastModel m = SmallModel();
  const std::string bytes = SerializeModel(m);
  EXPECT_EQ(bytes.substr(0, 4), "SLFX");
  const FastModel back = DeserializeModel(bytes);
  EXPECT_EQ(back, m);
  EXPECT_EQ(SerializeModel(back), bytes);
}

TEST(ModelIoTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("nordlid_io_" + std::to_string(::getpid()) + ".slfx");
  SaveModel(SmallModel(), path);
  EXPECT_EQ(LoadModel(path), SmallModel());
  std::filesystem::remove(path);
  try {
    LoadModel(path);
    FAIL();
  } catch (const ModelFormatError& e) {
    EXPECT_EQ(e.kind(), ModelFormatError::Kind::kIo);
  }
}

TEST(ModelIoTest, RejectsCorruption) {
  const std::string good = SerializeModel(SmallModel());
  using K = ModelFormatError::Kind;

  std::string magic = good;
  magic[0] = 'X';
  EXPECT_EQ(KindOf(magic), K::kMagic);
  try {
    DeserializeModel(magic);
  } catch (const ModelFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("SLFX"), std::string::npos) << e.what();
  }

  std::string version = good;
  version[4] = 9;
  EXPECT_EQ(KindOf(version), K::kVersion);

  EXPECT_EQ(KindOf(good.substr(0, good.size() - 100)), K::kChecksum);
  EXPECT_EQ(KindOf(good.substr(0, 3)), K::kMagic);

  // Flip one bit anywhere after the version field.
  for (size_t pos : {size_t{7}, size_t{20}, good.size() / 2, good.size() - 5,
                     good.size() - 1}) {
    std::string flipped = good;
    flipped[pos] ^= 0x10;
    EXPECT_EQ(KindOf(flipped), K::kChecksum) << pos;
  }
}

}  // namespace
}  // namespace nordlid
