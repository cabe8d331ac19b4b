#pragma once

#include <cstdint>

namespace sigw {

// Philox2x64-10 counter-based generator. A (seed, stream) pair opens an
// independent substream in O(1); draws walk the 64-bit block counter. This
// makes Monte Carlo runs reproducible under any parallel schedule: trial t
// always reads from stream t, no matter which thread runs it.
class Philox2x64 {
 public:
  Philox2x64(std::uint64_t seed, std::uint64_t stream)
      : key_(seed), stream_(stream) {}

  std::uint64_t next_u64() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    std::uint64_t x0 = block_++;
    std::uint64_t x1 = stream_;
    std::uint64_t k = key_;
    for (int r = 0; r < 10; ++r) {
      const auto prod = static_cast<unsigned __int128>(kMul) * x0;
      const auto hi = static_cast<std::uint64_t>(prod >> 64);
      const auto lo = static_cast<std::uint64_t>(prod);
      x0 = hi ^ k ^ x1;
      x1 = lo;
      k += kWeyl;
    }
    spare_ = x1;
    has_spare_ = true;
    return x0;
  }

  // uniform on [0,1) with 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ull;
  static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::uint64_t spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace sigw
