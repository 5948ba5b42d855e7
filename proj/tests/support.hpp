#pragma once

#include <random>

namespace testsupport {

// 53-bit uniform doubles from a seeded mt19937_64; keeps the property tests
// reproducible across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) {
    return a + (b - a) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }

  int pick(const int* values, int count) {
    return values[rng_() % static_cast<std::uint64_t>(count)];
  }

  std::uint64_t raw() { return rng_(); }

private:
  std::mt19937_64 rng_;
};

}  // namespace testsupport
