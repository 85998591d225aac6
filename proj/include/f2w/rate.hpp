#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "f2w/wavelet.hpp"

namespace f2w {

struct RatePoint {
  std::int64_t N = 0;
  std::int64_t M1 = 0, M2 = 0;
  std::int64_t total = 0;  // (2 M1 + 1)(2 M2 + 1)
  double sigma_min = 0.0;
};

struct RateCurve {
  double theta_inv = 0.0;
  double epsilon = 0.0;
  std::vector<RatePoint> points;
  std::vector<std::string> trace;
};

class RateSearchError : public std::runtime_error {
 public:
  RateSearchError(const std::string& what, std::int64_t M1, std::int64_t M2, double sigma)
      : std::runtime_error(what), M1(M1), M2(M2), sigma_min(sigma) {}
  std::int64_t M1, M2;
  double sigma_min;
};

struct RateSearchOptions {
  std::int64_t scalar_cap = 65536;  // largest scalar step along the aspect
  bool refine_axes = false;         // greedy per-axis decrements after the bisection
};

// sigma_min of the cross-Gramian for ladder entry N at half-widths (M1, M2).
using SigmaFn = std::function<double(std::int64_t N, std::int64_t M1, std::int64_t M2)>;

// For each ladder entry: bisect the scalar step S along the aspect direction
// (M(S) = ceil(S * aspect / max(aspect))) for the least M with
// sigma_min >= theta_inv, optionally followed by greedy unit decrements of
// each axis. Monotonicity of sigma_min under sample-set growth makes the
// bisection sound.
RateCurve stable_sampling_rate(const std::vector<std::int64_t>& ladder,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& aspects,
                               const SigmaFn& sigma, double theta_inv, double epsilon,
                               const RateSearchOptions& opts = {});

void write_rate_csv(std::ostream& os, const RateCurve& curve);

// Least S with inf over the [-1/2,1/2]^2 test grid of
// sum_{|s|,|t|<S} |phi_hat(xi+(s,t))|^2 >= 1/theta (separable families).
int tail_mass_S(const FrequencyEvaluator& eval, double theta, int grid_points = 257,
                int S_cap = 64);

// Sample-count transfer between sampling rates:
// K_i = ceil(C(gamma) M_i eps1 / eps2), valid once
// sqrt(1/theta^2 - 16/(pi^4 (C-1)^2)) - sqrt(1 - 1/theta) > 1/gamma.
struct EpsilonTransfer {
  std::int64_t K1 = 0, K2 = 0;
  double margin = 0.0;  // left side of the constraint minus 1/gamma
};

EpsilonTransfer epsilon_transfer(double gamma, double eps1, double eps2, std::int64_t M1,
                                 std::int64_t M2, double theta_gamma, double C_gamma);

}  // namespace f2w
