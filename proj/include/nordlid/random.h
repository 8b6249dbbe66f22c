// Portable deterministic randomness. The standard distributions are
// implementation-defined, so everything here is built on SplitMix64 to keep
// outputs identical across standard libraries.

#ifndef NORDLID_RANDOM_H_
#define NORDLID_RANDOM_H_

#include <cstdint>
#include <utility>
#include <vector>

namespace nordlid {

constexpr uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double ToUnitDouble(uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Stateless draws keyed by (seed, item, draw). Results do not depend on the
// order in which items are processed.
class CounterRng {
 public:
  explicit constexpr CounterRng(uint64_t seed) : seed_(seed) {}

  constexpr uint64_t Bits(uint64_t item, uint64_t draw) const {
    return SplitMix64(SplitMix64(SplitMix64(seed_) ^ item) ^
                      (draw * 0xd1b54a32d192ed03ULL));
  }
  constexpr double Uniform(uint64_t item, uint64_t draw) const {
    return ToUnitDouble(Bits(item, draw));
  }
  // Uniform integer in [0, n), n > 0. Uses 128-bit multiply-shift.
  constexpr uint64_t Below(uint64_t item, uint64_t draw, uint64_t n) const {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(Bits(item, draw)) * n) >> 64);
  }

 private:
  uint64_t seed_;
};

// Sequential generator for training-time shuffles and initialization.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double Uniform() { return ToUnitDouble(Next()); }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  uint64_t Below(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(Next()) * n) >> 64);
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace nordlid

#endif  // NORDLID_RANDOM_H_
