#include "f2w/wavelet.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace f2w {

namespace {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;
constexpr double kPi = std::numbers::pi;

std::vector<cplx> polynomial_roots(const std::vector<double>& coeff) {
  // coeff[k] multiplies z^k; leading coefficient nonzero.
  const int n = static_cast<int>(coeff.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeff[i] / coeff[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
  std::vector<cplx> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
  // Newton polish in extended precision.
  std::vector<cplxl> cl(coeff.begin(), coeff.end());
  for (cplx& r : roots) {
    cplxl z(r.real(), r.imag());
    for (int it = 0; it < 50; ++it) {
      cplxl f = 0, df = 0;
      for (int k = n; k >= 0; --k) {
        df = df * z + f;
        f = f * z + cl[static_cast<std::size_t>(k)];
      }
      if (std::abs(df) == 0.0L) break;
      const cplxl step = f / df;
      z -= step;
      if (std::abs(step) < 1e-30L * (1.0L + std::abs(z))) break;
    }
    r = cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return roots;
}

void check_family_invariants(int p, const std::vector<double>& h) {
  const int n = static_cast<int>(h.size());
  if (n != 2 * p) throw std::invalid_argument("filter length must be 2p");
  double sum = 0.0;
  for (double v : h) sum += v;
  if (std::abs(sum - std::numbers::sqrt2) > 1e-10)
    throw std::invalid_argument("filter must sum to sqrt(2)");
  for (int k = 1; k < p; ++k) {
    double s = 0.0;
    for (int i = 0; i + 2 * k < n; ++i) s += h[i] * h[i + 2 * k];
    if (std::abs(s) > 1e-12)
      throw std::invalid_argument("filter violates shift orthogonality");
  }
  double s0 = 0.0;
  for (double v : h) s0 += v * v;
  if (std::abs(s0 - 1.0) > 1e-12)
    throw std::invalid_argument("filter is not unit norm");
  for (int q = 0; q < p; ++q) {
    double s = 0.0, scale = 1.0;
    for (int i = 0; i < n; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      const double pw = (q == 0) ? 1.0 : std::pow(static_cast<double>(i), q);
      s += sign * pw * h[i];
      scale = std::max(scale, std::abs(pw * h[i]));
    }
    // Tolerance tracks the size of the cancelling terms (n^q grows fast).
    if (std::abs(s) > 1e-10 * scale)
      throw std::invalid_argument("filter violates vanishing-moment condition");
  }
}

}  // namespace

std::vector<double> daubechies_filter(int p) {
  if (p < 1 || p > 10) throw std::invalid_argument("daubechies_filter: 1 <= p <= 10");
  if (p == 1) return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};

  // |m0(xi)|^2 = cos^{2p}(pi xi) P(sin^2(pi xi)), P(y) = sum C(p-1+k,k) y^k.
  // In z = e^{-2 pi i xi}: sin^2(pi xi) = (2 - z - 1/z)/4. The Laurent
  // polynomial z^{p-1} P((2-z-1/z)/4) has the p-1 root pairs (r, 1/r); the
  // factor built from the roots inside the unit circle gives the extremal
  // phase branch.
  std::vector<double> P(static_cast<std::size_t>(p), 0.0);
  double binom = 1.0;
  for (int k = 0; k < p; ++k) {
    P[static_cast<std::size_t>(k)] = binom;  // C(p-1+k, k)
    binom = binom * static_cast<double>(p + k) / static_cast<double>(k + 1);
  }
  // Expand q(z) = z^{p-1} P((2 - z - 1/z)/4) as a polynomial of degree 2p-2.
  const int deg = 2 * (p - 1);
  std::vector<double> q(static_cast<std::size_t>(deg + 1), 0.0);
  std::vector<double> base{1.0};  // (2 - z - 1/z)/4 powers, offset tracked below
  // Power k occupies z^{-k}..z^{k}; store centered at index k.
  for (int k = 0; k < p; ++k) {
    for (int i = 0; i < static_cast<int>(base.size()); ++i) {
      // base holds coefficients of w^k over z^{i-k}
      const int e = i - k + (p - 1);
      q[static_cast<std::size_t>(e)] += P[static_cast<std::size_t>(k)] * base[static_cast<std::size_t>(i)];
    }
    if (k + 1 < p) {
      std::vector<double> next(base.size() + 2, 0.0);
      for (int i = 0; i < static_cast<int>(base.size()); ++i) {
        next[static_cast<std::size_t>(i)] += -0.25 * base[static_cast<std::size_t>(i)];
        next[static_cast<std::size_t>(i + 1)] += 0.5 * base[static_cast<std::size_t>(i)];
        next[static_cast<std::size_t>(i + 2)] += -0.25 * base[static_cast<std::size_t>(i)];
      }
      base = std::move(next);
    }
  }

  std::vector<cplx> roots = polynomial_roots(q);
  std::vector<cplx> inside;
  for (const cplx& r : roots)
    if (std::abs(r) < 1.0) inside.push_back(r);
  if (static_cast<int>(inside.size()) != p - 1)
    throw std::runtime_error("daubechies_filter: spectral factorization failed");
  std::sort(inside.begin(), inside.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  // H(z) = c ((1+z)/2)^p prod (z - r_i), normalized so H(1) = sqrt(2).
  std::vector<cplxl> poly{1.0L};
  auto mul_linear = [&poly](cplxl a0, cplxl a1) {
    // multiply by (a0 + a1 z)
    std::vector<cplxl> out(poly.size() + 1, cplxl(0.0L, 0.0L));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      out[i] += poly[i] * a0;
      out[i + 1] += poly[i] * a1;
    }
    poly = std::move(out);
  };
  for (int i = 0; i < p; ++i) mul_linear(0.5L, 0.5L);
  for (const cplx& r : inside) mul_linear(cplxl(-r.real(), -r.imag()), 1.0L);
  cplxl at_one = 0.0L;
  for (const cplxl& c : poly) at_one += c;
  const cplxl scale = static_cast<long double>(std::numbers::sqrt2) / at_one;
  std::vector<double> h(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const cplxl v = poly[i] * scale;
    h[i] = static_cast<double>(v.real());
  }
  return h;
}

WaveletFamily::WaveletFamily(int p) : WaveletFamily(p, daubechies_filter(p)) {}

WaveletFamily::WaveletFamily(int p, std::vector<double> filter)
    : p_(p), h_(std::move(filter)) {
  if (p < 1) throw std::invalid_argument("WaveletFamily: p >= 1");
  check_family_invariants(p_, h_);
}

std::vector<double> WaveletFamily::mirror_filter() const {
  const int n = static_cast<int>(h_.size());
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    g[static_cast<std::size_t>(i)] = sign * h_[static_cast<std::size_t>(n - 1 - i)];
  }
  return g;
}

FrequencyEvaluator::FrequencyEvaluator(WaveletFamily family, int k_trunc, double tau_phi)
    : family_(std::move(family)), k_trunc_(k_trunc), tau_phi_(tau_phi) {
  double s = 0.0;
  const auto& h = family_.filter();
  for (std::size_t n = 0; n < h.size(); ++n)
    s += static_cast<double>(n) * std::abs(h[n]);
  symbol_lipschitz_ = 2.0 * kPi * s / std::numbers::sqrt2;
}

std::complex<double> FrequencyEvaluator::refinement_symbol(double xi) const {
  const auto& h = family_.filter();
  // Reduce mod 1 so the polar arguments stay small.
  const double xr = xi - std::floor(xi);
  cplx acc(0.0, 0.0);
  for (std::size_t n = 0; n < h.size(); ++n) {
    double a = -2.0 * kPi * std::fmod(static_cast<double>(n) * xr, 1.0);
    acc += h[n] * cplx(std::cos(a), std::sin(a));
  }
  return acc / std::numbers::sqrt2;
}

std::complex<double> FrequencyEvaluator::mirror_symbol(double xi) const {
  const double w = static_cast<double>(2 * family_.p() - 1) * xi;
  const double a = -2.0 * kPi * (w - std::floor(w));
  return -cplx(std::cos(a), std::sin(a)) * std::conj(refinement_symbol(xi + 0.5));
}

std::complex<double> FrequencyEvaluator::phi_hat(double xi) const {
  // Tail of the product after K factors is bounded by L |xi| 2^{-K}.
  int K = k_trunc_;
  const double need = symbol_lipschitz_ * std::max(1.0, std::abs(xi)) / tau_phi_;
  if (need > 1.0) {
    const int k2 = static_cast<int>(std::ceil(std::log2(need))) + 1;
    K = std::max(K, k2);
  }
  cplx acc(1.0, 0.0);
  double x = xi;
  for (int k = 0; k < K; ++k) {
    x *= 0.5;
    acc *= refinement_symbol(x);
    if (std::abs(acc) < 1e-300) break;
  }
  return acc;
}

std::complex<double> FrequencyEvaluator::psi_hat(double xi) const {
  return mirror_symbol(0.5 * xi) * phi_hat(0.5 * xi);
}

std::complex<double> FrequencyEvaluator::phi_hat_2d(double x1, double x2) const {
  return phi_hat(x1) * phi_hat(x2);
}

std::complex<double> FrequencyEvaluator::wavelet_hat_2d(int k, double x1, double x2) const {
  switch (k) {
    case 1: return phi_hat(x1) * psi_hat(x2);
    case 2: return psi_hat(x1) * phi_hat(x2);
    case 3: return psi_hat(x1) * psi_hat(x2);
    default: throw std::invalid_argument("wavelet_hat_2d: generator k in {1,2,3}");
  }
}

std::complex<double> haar_phi_hat(double xi) {
  if (xi == 0.0) return {1.0, 0.0};
  const double s = std::sin(kPi * xi) / (kPi * xi);
  const cplx ph(std::cos(kPi * xi), -std::sin(kPi * xi));
  return ph * s;
}

std::complex<double> haar_psi_hat(double xi) {
  if (xi == 0.0) return {0.0, 0.0};
  const double h = std::sin(0.5 * kPi * xi);
  const double s = h * h / (0.5 * kPi * xi);
  const cplx ph(std::cos(kPi * xi), -std::sin(kPi * xi));
  return cplx(0.0, 1.0) * ph * s;
}

CascadeTable cascade_evaluate(const WaveletFamily& family, int levels, double tol,
                              int max_iterations) {
  if (levels < 1) throw std::invalid_argument("cascade_evaluate: levels >= 1");
  const int width = family.support_width();
  const std::int64_t grid = static_cast<std::int64_t>(width) << levels;
  const std::int64_t scale = std::int64_t{1} << levels;
  CascadeTable t;
  t.levels = levels;
  t.values.assign(static_cast<std::size_t>(grid + 1), 0.0);
  // Start from the box on [0,1).
  for (std::int64_t n = 0; n < scale; ++n) t.values[static_cast<std::size_t>(n)] = 1.0;

  const auto& h = family.filter();
  std::vector<double> next(t.values.size(), 0.0);
  const double sq2 = std::numbers::sqrt2;
  for (int it = 1; it <= max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t n = 0; n <= grid; ++n) {
      double acc = 0.0;
      const std::int64_t two_n = 2 * n;
      for (std::size_t m = 0; m < h.size(); ++m) {
        const std::int64_t src = two_n - static_cast<std::int64_t>(m) * scale;
        if (src >= 0 && src <= grid) acc += h[m] * t.values[static_cast<std::size_t>(src)];
      }
      next[static_cast<std::size_t>(n)] = sq2 * acc;
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i)
      diff = std::max(diff, std::abs(next[i] - t.values[i]));
    t.values.swap(next);
    t.iterations = it;
    if (diff < tol) return t;
  }
  throw std::runtime_error("cascade_evaluate: fixed-point iteration did not converge");
}

}  // namespace f2w
