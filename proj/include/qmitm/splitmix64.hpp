#pragma once
#include <cstdint>

namespace qmitm {

// Deterministic 64-bit generator. Every random choice in the project flows
// through one stream per run so traces replay bit-for-bit across machines.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, bound), bound >= 1; modulo bias is negligible at the
  // bounds used here (all far below 2^32)
  uint64_t next_below(uint64_t bound) { return next() % bound; }

 private:
  uint64_t state_;
};

}  // namespace qmitm
