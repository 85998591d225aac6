#include "f2w/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace f2w {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// int_0^1 e^{i theta x} dx = e^{i theta/2} sin(theta/2)/(theta/2).
cplx cis_integral(double theta) {
  if (theta == 0.0) return {1.0, 0.0};
  const double h = 0.5 * theta;
  return cplx(std::cos(h), std::sin(h)) * (std::sin(h) / h);
}

// int_0^1 x^k e^{i theta x} dx.
cplx poly_exp_integral(int k, double theta) {
  if (std::abs(theta) < 0.5) {
    // sum_m (i theta)^m / (m! (k+m+1))
    cplx term(1.0, 0.0), acc(0.0, 0.0);
    const cplx it(0.0, theta);
    for (int m = 0; m < 40; ++m) {
      acc += term / static_cast<double>(k + m + 1);
      term *= it / static_cast<double>(m + 1);
      if (std::abs(term) < 1e-18) break;
    }
    return acc;
  }
  const cplx it(0.0, theta);
  const cplx eit(std::cos(theta), std::sin(theta));
  cplx P = cis_integral(theta);
  for (int j = 1; j <= k; ++j) P = (eit - static_cast<double>(j) * P) / it;
  return P;
}

}  // namespace

SamplingScheme SamplingScheme::interior(double epsilon, std::int64_t M1, std::int64_t M2,
                                        double T1, double T2) {
  if (epsilon <= 0.0 || epsilon > 1.0 / (T1 + T2) + 1e-12)
    throw std::invalid_argument("interior sampling needs 0 < eps <= 1/(T1+T2)");
  if (M1 < 0 || M2 < 0) throw std::invalid_argument("sampling half-widths must be >= 0");
  return SamplingScheme{epsilon, M1, M2, SamplingDomain::Interior, T1, T2};
}

SamplingScheme SamplingScheme::boundary(double epsilon, std::int64_t M1, std::int64_t M2) {
  if (epsilon <= 0.0 || epsilon > 1.0 + 1e-12)
    throw std::invalid_argument("boundary sampling needs 0 < eps <= 1");
  if (M1 < 0 || M2 < 0) throw std::invalid_argument("sampling half-widths must be >= 0");
  return SamplingScheme{epsilon, M1, M2, SamplingDomain::Boundary, 0.0, 1.0};
}

Eigen::VectorXcd measure(const FrequencyFunction& fhat, const SamplingScheme& scheme) {
  Eigen::VectorXcd m(scheme.total());
  std::int64_t row = 0;
  for (std::int64_t l1 = -scheme.M1; l1 <= scheme.M1; ++l1)
    for (std::int64_t l2 = -scheme.M2; l2 <= scheme.M2; ++l2)
      m(row++) = scheme.epsilon *
                 fhat(scheme.epsilon * static_cast<double>(l1),
                      scheme.epsilon * static_cast<double>(l2));
  return m;
}

double f1_value(double x, double y) {
  const double c = std::cos(x);
  return c * c * std::exp(-y);
}

double f2_value(double x, double y) { return (1.0 + x * x) * (2.0 * y - 1.0); }

double f1_factor_x(double x) {
  const double c = std::cos(x);
  return c * c;
}
double f1_factor_y(double y) { return std::exp(-y); }
double f2_factor_x(double x) { return 1.0 + x * x; }
double f2_factor_y(double y) { return 2.0 * y - 1.0; }

std::complex<double> f1_hat(double w1, double w2) {
  // cos^2(x) = 1/2 + (e^{2ix} + e^{-2ix})/4.
  const double t = -kTwoPi * w1;
  const cplx X = 0.5 * cis_integral(t) + 0.25 * (cis_integral(t + 2.0) + cis_integral(t - 2.0));
  const cplx d(1.0, kTwoPi * w2);
  const cplx Y = (1.0 - std::exp(-d)) / d;
  return X * Y;
}

std::complex<double> f2_hat(double w1, double w2) {
  const double t1 = -kTwoPi * w1;
  const double t2 = -kTwoPi * w2;
  const cplx X = poly_exp_integral(0, t1) + poly_exp_integral(2, t1);
  const cplx Y = 2.0 * poly_exp_integral(1, t2) - poly_exp_integral(0, t2);
  return X * Y;
}

double f1_l2_norm() {
  const double ix = 3.0 / 8.0 + std::sin(2.0) / 4.0 + std::sin(4.0) / 32.0;
  const double iy = 0.5 * (1.0 - std::exp(-2.0));
  return std::sqrt(ix * iy);
}

double f2_l2_norm() { return std::sqrt(28.0 / 45.0); }

}  // namespace f2w
