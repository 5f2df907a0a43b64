#pragma once

#include <cmath>
#include <cstdint>

namespace prospect {

// Keyed counter generator: output i of stream (seed, s1, s2) is a fixed
// mixing of the tuple, so substreams are independent of scheduling order
// and worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream1 = 0,
               std::uint64_t stream2 = 0)
      : key_(mix(mix(mix(0x9e3779b97f4a7c15ULL ^ seed) ^ stream1) ^ stream2)),
        counter_(0) {}

  std::uint64_t next_u64() { return mix(key_ ^ ++counter_); }

  // uniform in [0,1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal, Box-Muller
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace prospect
