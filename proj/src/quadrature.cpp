#include "f2w/quadrature.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace f2w {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename T>
T simpson_rec(const std::function<T(double)>& f, double a, double b, T fa, T fb, T fm,
              T whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const T flm = f(lm), frm = f(rm);
  const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const T delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

template <typename T>
T simpson(const std::function<T(double)>& f, double a, double b, double tol, int max_depth) {
  const T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fb, fm, whole, tol, max_depth);
}

// int_a^b e^{-2 pi i w x} dx, exact.
cplx segment_transform(double a, double b, double w) {
  if (w == 0.0) return {b - a, 0.0};
  const double th = -kTwoPi * w;
  // (e^{i th b} - e^{i th a}) / (i th)
  const double hm = 0.5 * th * (b - a);
  const double hc = 0.5 * th * (b + a);
  return cplx(std::cos(hc), std::sin(hc)) * (2.0 * std::sin(hm) / th);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  return simpson<double>(f, a, b, tol, max_depth);
}

std::complex<double> adaptive_simpson_cplx(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, double tol, int max_depth) {
  return simpson<cplx>(f, a, b, tol, max_depth);
}

DyadicQuadrature::DyadicQuadrature(const WaveletFamily& family, int levels)
    : family_(family) {
  if (levels <= 0) levels = family.p() <= 2 ? 18 : (family.p() <= 4 ? 15 : 12);
  levels_ = levels;
  CascadeTable t = cascade_evaluate(family_, levels_);
  phi_ = std::move(t.values);
  // psi(x) = sqrt(2) sum g_n phi(2x - n) on the same grid.
  const auto g = family_.mirror_filter();
  const std::int64_t scale = std::int64_t{1} << levels_;
  const std::int64_t grid = static_cast<std::int64_t>(family_.support_width()) * scale;
  psi_.assign(phi_.size(), 0.0);
  for (std::int64_t k = 0; k <= grid; ++k) {
    double acc = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      const std::int64_t src = 2 * k - static_cast<std::int64_t>(n) * scale;
      if (src >= 0 && src <= grid) acc += g[n] * phi_[static_cast<std::size_t>(src)];
    }
    psi_[static_cast<std::size_t>(k)] = std::numbers::sqrt2 * acc;
  }
}

std::complex<double> DyadicQuadrature::transform_at_level(const std::vector<double>& samples,
                                                          int level, double eta,
                                                          std::int64_t cut_index) const {
  // Trapezoid over the dyadic grid; half weight at the cut (principal-value
  // convention at the jump) and at the support ends.
  const int stride_pow = levels_ - level;
  const std::int64_t stride = std::int64_t{1} << stride_pow;
  const double h = 1.0 / static_cast<double>(std::int64_t{1} << level);
  const std::int64_t last = static_cast<std::int64_t>(samples.size()) - 1;
  cplx acc(0.0, 0.0);
  double comp_re = 0.0, comp_im = 0.0;  // Neumaier compensation
  auto add = [&acc, &comp_re, &comp_im](cplx v) {
    const double tr = acc.real() + v.real();
    comp_re += (std::abs(acc.real()) >= std::abs(v.real())) ? (acc.real() - tr) + v.real()
                                                            : (v.real() - tr) + acc.real();
    const double ti = acc.imag() + v.imag();
    comp_im += (std::abs(acc.imag()) >= std::abs(v.imag())) ? (acc.imag() - ti) + v.imag()
                                                            : (v.imag() - ti) + acc.imag();
    acc = cplx(tr, ti);
  };
  for (std::int64_t k = cut_index; k <= last; k += stride) {
    const double x = static_cast<double>(k) / static_cast<double>(std::int64_t{1} << levels_);
    const double ph = eta * x;
    const double a = -kTwoPi * (ph - std::floor(ph));
    double w = samples[static_cast<std::size_t>(k)];
    if (k == cut_index || k == last) w *= 0.5;
    add(w * cplx(std::cos(a), std::sin(a)));
  }
  return (acc + cplx(comp_re, comp_im)) * h;
}

std::complex<double> DyadicQuadrature::phi_transform(double eta, double cut) const {
  const std::int64_t scale = std::int64_t{1} << levels_;
  const double ci = cut * static_cast<double>(scale);
  const std::int64_t cut_index = static_cast<std::int64_t>(std::llround(ci));
  if (std::abs(ci - static_cast<double>(cut_index)) > 1e-9)
    throw std::invalid_argument("phi_transform: cut must sit on the cascade grid");
  // Aitken extrapolation over levels L-2, L-1, L.
  cplx q0 = transform_at_level(phi_, levels_ - 2, eta, cut_index);
  cplx q1 = transform_at_level(phi_, levels_ - 1, eta, cut_index);
  cplx q2 = transform_at_level(phi_, levels_, eta, cut_index);
  auto aitken = [](double a, double b, double c) {
    const double d2 = c - 2.0 * b + a;
    if (std::abs(d2) < 1e-14 * (std::abs(c) + 1.0)) return c;
    return c - (c - b) * (c - b) / d2;
  };
  return {aitken(q0.real(), q1.real(), q2.real()), aitken(q0.imag(), q1.imag(), q2.imag())};
}

std::complex<double> DyadicQuadrature::psi_transform(double eta) const {
  cplx q0 = transform_at_level(psi_, levels_ - 2, eta, 0);
  cplx q1 = transform_at_level(psi_, levels_ - 1, eta, 0);
  cplx q2 = transform_at_level(psi_, levels_, eta, 0);
  auto aitken = [](double a, double b, double c) {
    const double d2 = c - 2.0 * b + a;
    if (std::abs(d2) < 1e-14 * (std::abs(c) + 1.0)) return c;
    return c - (c - b) * (c - b) / d2;
  };
  return {aitken(q0.real(), q1.real(), q2.real()), aitken(q0.imag(), q1.imag(), q2.imag())};
}

double DyadicQuadrature::overlap(int shift) const {
  const std::int64_t scale = std::int64_t{1} << levels_;
  const std::int64_t off = static_cast<std::int64_t>(shift) * scale;
  const std::int64_t last = static_cast<std::int64_t>(phi_.size()) - 1;
  double acc = 0.0;
  for (std::int64_t k = 0; k <= last; ++k) {
    const std::int64_t k2 = k - off;
    if (k2 < 0 || k2 > last) continue;
    acc += phi_[static_cast<std::size_t>(k)] * phi_[static_cast<std::size_t>(k2)];
  }
  return acc / static_cast<double>(scale);
}

double DyadicQuadrature::halfline_overlap_centered(int s, int t) const {
  // phi_c(v - s) = phi(v - s + p - 1); integrate over v >= 0.
  const int p = family_.p();
  const std::int64_t scale = std::int64_t{1} << levels_;
  const std::int64_t last = static_cast<std::int64_t>(phi_.size()) - 1;
  const std::int64_t off_s = static_cast<std::int64_t>(s - (p - 1)) * scale;
  const std::int64_t off_t = static_cast<std::int64_t>(t - (p - 1)) * scale;
  // v ranges over [0, inf); supports end at v = s + p and t + p.
  const std::int64_t vmax = std::max(off_s, off_t) + last;
  double acc = 0.0;
  for (std::int64_t v = 0; v <= vmax; ++v) {
    const std::int64_t ks = v - off_s;
    const std::int64_t kt = v - off_t;
    if (ks < 0 || ks > last || kt < 0 || kt > last) continue;
    double w = phi_[static_cast<std::size_t>(ks)] * phi_[static_cast<std::size_t>(kt)];
    if (v == 0) w *= 0.5;
    acc += w;
  }
  return acc / static_cast<double>(scale);
}

GramianOracle::GramianOracle(const WaveletFamily& family) : family_(family) {
  if (family_.p() > 1) quad_ = std::make_unique<DyadicQuadrature>(family_);
}

std::complex<double> GramianOracle::factor(bool wavelet_axis, int j, std::int64_t m,
                                           double w) const {
  // 1D transform of 2^{j/2} f(2^j x - m) at frequency w:
  // 2^{-j/2} e^{-2 pi i w m / 2^j} F(w / 2^j).
  const double scale = static_cast<double>(std::int64_t{1} << j);
  const double eta = w / scale;
  const double ph = eta * static_cast<double>(m);
  const double a = -kTwoPi * (ph - std::floor(ph));
  const cplx phase(std::cos(a), std::sin(a));
  cplx F;
  if (family_.p() == 1) {
    // Piecewise-constant closed forms: phi = 1 on [0,1), psi = +-1 on halves.
    F = wavelet_axis ? segment_transform(0.0, 0.5, eta) - segment_transform(0.5, 1.0, eta)
                     : segment_transform(0.0, 1.0, eta);
  } else {
    F = wavelet_axis ? quad_->psi_transform(eta) : quad_->phi_transform(eta);
  }
  return phase * F / std::sqrt(scale);
}

std::complex<double> GramianOracle::entry(const BasisIndex& idx, std::int64_t l1,
                                          std::int64_t l2,
                                          const SamplingScheme& scheme) const {
  const double w1 = scheme.epsilon * static_cast<double>(l1);
  const double w2 = scheme.epsilon * static_cast<double>(l2);
  bool wav1 = false, wav2 = false;
  int j = 0;
  if (idx.kind == BasisKind::Wavelet) {
    j = idx.scale;
    wav1 = idx.generator == 2 || idx.generator == 3;
    wav2 = idx.generator == 1 || idx.generator == 3;
  }
  return scheme.epsilon * factor(wav1, j, idx.m1, w1) * factor(wav2, j, idx.m2, w2);
}

}  // namespace f2w
