#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace f2w {

// Seeded generator with explicit Box-Muller normals (std::normal_distribution
// sequences are implementation-defined; reports must be reproducible).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  double uniform() {
    return (static_cast<double>(s_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

  std::complex<double> cnormal() {
    const double re = normal(), im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  std::uint64_t integer(std::uint64_t bound) { return s_() % bound; }

 private:
  std::mt19937_64 s_;
  bool have_ = false;
  double spare_ = 0.0;
};

}  // namespace f2w
