#pragma once

#include <cmath>
#include <cstdint>

namespace crpldp {

// Counter-based stream: the n-th output is a pure function of
// (seed, stream_index, n), so replicates are reproducible independently
// of scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : key_(mix(mix(seed) ^ (0x9E3779B97F4A7C15ULL * (stream_index + 0x632BE59BD9B4E019ULL)))) {}

  std::uint64_t next_u64() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++ctr_); }

  // Uniform in the open interval (0, 1).
  double u01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal (Box-Muller).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = u01();
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace crpldp
