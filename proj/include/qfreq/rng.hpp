#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qfreq {

// Deterministic random source. mt19937_64 has a standard-mandated sequence;
// the double conversions below avoid the implementation-defined std
// distributions so seeded runs reproduce byte-for-byte.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(gen_() % span);
  }

  std::uint64_t raw() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace qfreq
