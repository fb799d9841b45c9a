#pragma once

#include <cstdint>

namespace ifsaddr {

/// SplitMix64. Monte Carlo kernels derive one stream per sample index, so
/// estimates do not depend on how samples are scheduled across workers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t base = mix.next();
    SplitMix64 child(base + index * 0xd1b54a32d192ed03ULL);
    child.next();
    return child;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ifsaddr
