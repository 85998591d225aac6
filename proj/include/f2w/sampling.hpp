#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace f2w {

enum class SamplingDomain : std::uint8_t { Interior, Boundary };

// Uniform Fourier sampling grid: s_l = eps e^{2 pi i eps <l, .>} on the
// domain rectangle, l in [-M1,M1] x [-M2,M2], flattened row-major (l1 outer,
// l2 inner). Measurements are m(f)_l = eps fhat(eps l) with
// fhat(w) = int f(x) e^{-2 pi i <w,x>} dx.
struct SamplingScheme {
  double epsilon = 1.0;
  std::int64_t M1 = 0, M2 = 0;
  SamplingDomain domain = SamplingDomain::Interior;
  double T1 = 0.0, T2 = 1.0;  // interior mode: support box [-T1, T2]^2

  static SamplingScheme interior(double epsilon, std::int64_t M1, std::int64_t M2,
                                 double T1, double T2);
  static SamplingScheme boundary(double epsilon, std::int64_t M1, std::int64_t M2);

  std::int64_t total() const { return (2 * M1 + 1) * (2 * M2 + 1); }
  std::int64_t flat_index(std::int64_t l1, std::int64_t l2) const {
    return (l1 + M1) * (2 * M2 + 1) + (l2 + M2);
  }
  std::pair<std::int64_t, std::int64_t> unflatten(std::int64_t row) const {
    const std::int64_t w = 2 * M2 + 1;
    return {row / w - M1, row % w - M2};
  }
};

using FrequencyFunction = std::function<std::complex<double>(double, double)>;

// m(f)_l = eps fhat(eps l) over the sample grid.
Eigen::VectorXcd measure(const FrequencyFunction& fhat, const SamplingScheme& scheme);

// Test signals from the reconstruction experiments, on [0,1]^2:
// f1(x,y) = cos^2(x) e^{-y},  f2(x,y) = (1+x^2)(2y-1).
double f1_value(double x, double y);
double f2_value(double x, double y);
std::complex<double> f1_hat(double w1, double w2);
std::complex<double> f2_hat(double w1, double w2);
double f1_l2_norm();
double f2_l2_norm();

// 1D separable factors (used by projection oracles).
double f1_factor_x(double x);
double f1_factor_y(double y);
double f2_factor_x(double x);
double f2_factor_y(double y);

}  // namespace f2w
