#include "f2w/boundary.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace f2w {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

cplx unit_phase(double turns) {
  const double a = -kTwoPi * (turns - std::floor(turns));
  return {std::cos(a), std::sin(a)};
}

}  // namespace

BoundaryFamily::BoundaryFamily(int p, int j_top)
    : p_(p),
      j0_(0),
      j_top_(j_top),
      base_(p),
      quad_(base_),
      eval_(std::make_shared<FrequencyEvaluator>(base_)) {
  while ((1 << j0_) < 2 * p_) ++j0_;
  if (j_top_ < j0_) throw std::invalid_argument("BoundaryFamily: J below coarsest scale J0");
  j_deep_ = std::max(j_top_, j0_ + 1);

  // Half-line overlap table T(s,t) = int_0^inf phi_c(v-s) phi_c(v-t) dv for
  // s,t = -p+1 .. p-2 (the left-crossing translates).
  const int w = 2 * p_ - 2;
  halfline_.resize(w, w);
  for (int i = 0; i < w; ++i)
    for (int k = 0; k < w; ++k)
      halfline_(i, k) = quad_.halfline_overlap_centered(i - p_ + 1, k - p_ + 1);

  // Cascade samples of phi_c for pointwise evaluation and smooth quadrature.
  phic_samples_ = quad_.phi_samples();

  scaling_.resize(static_cast<std::size_t>(j_deep_) + 1);
  wavelet_.resize(static_cast<std::size_t>(j_deep_) + 1);
  for (int j = j0_; j <= j_deep_; ++j) build_scale(j);

  // Unit-scale orthonormal boundary rows for export and inspection: the MGS
  // weights are scale-free, so read them off the scale-J0 functions.
  const int rows = p_;
  left_ortho_ = Eigen::MatrixXd::Zero(rows, 2 * p_ - 1);
  right_ortho_ = Eigen::MatrixXd::Zero(rows, 2 * p_ - 1);
  // Recover combos over the raw translates by solving small linear systems in
  // the deep frame.
  {
    std::vector<DeepVec> raw_left, raw_right;
    const std::int64_t c = (std::int64_t{1} << j0_) - 1;
    for (std::int64_t s = -p_ + 1; s <= p_ - 1; ++s) {
      DeepVec t;
      t.lo = s;
      t.c = Eigen::VectorXd::Ones(1);
      raw_left.push_back(refine_to_deep(t, j0_));
      DeepVec r;
      r.lo = c - s;
      r.c = Eigen::VectorXd::Ones(1);
      raw_right.push_back(refine_to_deep(r, j0_));
    }
    auto solve_rows = [&](const std::vector<DeepVec>& raws,
                          const std::vector<const Element1D*>& funcs, Eigen::MatrixXd& out) {
      const int m = static_cast<int>(raws.size());
      Eigen::MatrixXd G(m, m);
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) G(i, k) = inner(raws[static_cast<std::size_t>(i)],
                                                    raws[static_cast<std::size_t>(k)]);
      for (int r = 0; r < p_; ++r) {
        Eigen::VectorXd b(m);
        for (int i = 0; i < m; ++i)
          b(i) = inner(raws[static_cast<std::size_t>(i)], funcs[static_cast<std::size_t>(r)]->v);
        out.row(r) = G.ldlt().solve(b).transpose();
      }
    };
    std::vector<const Element1D*> lf, rf;
    for (int k = 0; k < p_; ++k) {
      lf.push_back(&scaling(j0_, k));
      rf.push_back(&scaling(j0_, (1 << j0_) - 1 - k));
    }
    solve_rows(raw_left, lf, left_ortho_);
    solve_rows(raw_right, rf, right_ortho_);
  }
}

void BoundaryFamily::trim(DeepVec& v, int at_scale) const {
  // Translates entirely left of 0 or right of 1 restrict to zero.
  const std::int64_t smin = -p_ + 1;
  const std::int64_t smax = (std::int64_t{1} << at_scale) + p_ - 2;
  std::int64_t lo = v.lo, hi = v.lo + v.c.size() - 1;
  const std::int64_t nlo = std::max(lo, smin);
  const std::int64_t nhi = std::min(hi, smax);
  if (nlo > nhi) {
    v.lo = 0;
    v.c = Eigen::VectorXd::Zero(0);
    return;
  }
  Eigen::VectorXd c = v.c.segment(nlo - lo, nhi - nlo + 1);
  v.lo = nlo;
  v.c = c;
}

DeepVec BoundaryFamily::refine_once(const DeepVec& v, int from_scale) const {
  // phi_{c,j,s} = sum_n h_n phi_{c,j+1, 2s + n - p + 1}.
  const auto& h = base_.filter();
  DeepVec out;
  out.lo = 2 * v.lo - p_ + 1;
  out.c = Eigen::VectorXd::Zero(2 * (v.c.size() - 1) + static_cast<std::int64_t>(h.size()));
  for (Eigen::Index i = 0; i < v.c.size(); ++i) {
    if (v.c(i) == 0.0) continue;
    const std::int64_t s2 = 2 * (v.lo + i) - p_ + 1;
    for (std::size_t n = 0; n < h.size(); ++n)
      out.c(s2 + static_cast<std::int64_t>(n) - out.lo) += h[n] * v.c(i);
  }
  trim(out, from_scale + 1);
  return out;
}

DeepVec BoundaryFamily::refine_to_deep(const DeepVec& at_scale, int from_scale) const {
  DeepVec v = at_scale;
  trim(v, from_scale);
  for (int j = from_scale; j < j_deep_; ++j) v = refine_once(v, j);
  return v;
}

double BoundaryFamily::inner(const DeepVec& u, const DeepVec& v) const {
  if (u.c.size() == 0 || v.c.size() == 0) return 0.0;
  const std::int64_t lo = std::max(u.lo, v.lo);
  const std::int64_t hi = std::min(u.lo + u.c.size() - 1, v.lo + v.c.size() - 1);
  double acc = 0.0;
  for (std::int64_t s = lo; s <= hi; ++s) acc += u.c(s - u.lo) * v.c(s - v.lo);
  // Left-crossing correction: <.,.> = T(s,t) instead of delta_{st}.
  const std::int64_t lcut = p_ - 2;
  const std::int64_t base = -p_ + 1;
  for (std::int64_t s = u.lo; s <= std::min<std::int64_t>(lcut, u.lo + u.c.size() - 1); ++s)
    for (std::int64_t t = v.lo; t <= std::min<std::int64_t>(lcut, v.lo + v.c.size() - 1); ++t) {
      const double corr = halfline_(s - base, t - base) - (s == t ? 1.0 : 0.0);
      acc += u.c(s - u.lo) * v.c(t - v.lo) * corr;
    }
  // Right-crossing correction: <.,.> = delta_{st} - T(s - 2^{Jd}, t - 2^{Jd}).
  const std::int64_t shift = std::int64_t{1} << j_deep_;
  const std::int64_t rlo = shift - p_ + 1;
  for (std::int64_t s = std::max(rlo, u.lo); s <= u.lo + u.c.size() - 1; ++s)
    for (std::int64_t t = std::max(rlo, v.lo); t <= v.lo + v.c.size() - 1; ++t) {
      const double corr = -halfline_(s - shift - base, t - shift - base);
      acc += u.c(s - u.lo) * v.c(t - v.lo) * corr;
    }
  return acc;
}

double BoundaryFamily::norm(const DeepVec& u) const { return std::sqrt(std::max(0.0, inner(u, u))); }

Eigen::MatrixXd BoundaryFamily::edge_coefficients() const {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(p_, 2 * p_ - 1);
  for (int k = 0; k < p_; ++k)
    for (int s = -p_ + 1; s <= p_ - 1; ++s)
      e(k, s + p_ - 1) = binom(p_ - 1 - s, k);
  return e;
}

void BoundaryFamily::orthonormalize(std::vector<DeepVec>& vecs, const char* what) {
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < i; ++k) {
        const double c = inner(vecs[i], vecs[k]);
        // subtract c * vecs[k]
        DeepVec& u = vecs[i];
        const DeepVec& w = vecs[k];
        const std::int64_t lo = std::min(u.lo, w.lo);
        const std::int64_t hi = std::max(u.lo + u.c.size(), w.lo + w.c.size()) - 1;
        Eigen::VectorXd merged = Eigen::VectorXd::Zero(hi - lo + 1);
        merged.segment(u.lo - lo, u.c.size()) = u.c;
        merged.segment(w.lo - lo, w.c.size()) -= c * w.c;
        u.lo = lo;
        u.c = merged;
      }
    const double n = norm(vecs[i]);
    if (!(n > 1e-6))
      throw std::runtime_error(std::string("boundary construction: ") + what +
                               " Gram matrix numerically singular (norm " +
                               std::to_string(n) + ")");
    vecs[i].c /= n;
  }
}

void BoundaryFamily::build_scale(int j) {
  const int count = 1 << j;
  auto& sc = scaling_[static_cast<std::size_t>(j)];
  sc.resize(static_cast<std::size_t>(count));

  // Left edge: raw combos over translates s = -p+1 .. p-1 with binomial rows.
  std::vector<DeepVec> left(static_cast<std::size_t>(p_));
  for (int k = 0; k < p_; ++k) {
    DeepVec raw;
    raw.lo = -p_ + 1;
    raw.c = Eigen::VectorXd::Zero(2 * p_ - 1);
    for (int s = -p_ + 1; s <= p_ - 1; ++s) raw.c(s + p_ - 1) = binom(p_ - 1 - s, k);
    left[static_cast<std::size_t>(k)] = refine_to_deep(raw, j);
  }
  orthonormalize(left, "left edge");

  // Right edge: the reflected construction lands on translates
  // s' = 2^j - 1 - s with the same binomial weights.
  std::vector<DeepVec> right(static_cast<std::size_t>(p_));
  const std::int64_t cshift = (std::int64_t{1} << j) - 1;
  for (int k = 0; k < p_; ++k) {
    DeepVec raw;
    raw.lo = cshift - (p_ - 1);
    raw.c = Eigen::VectorXd::Zero(2 * p_ - 1);
    for (int s = -p_ + 1; s <= p_ - 1; ++s) raw.c(cshift - s - raw.lo) = binom(p_ - 1 - s, k);
    right[static_cast<std::size_t>(k)] = refine_to_deep(raw, j);
  }
  orthonormalize(right, "right edge");

  for (int n = 0; n < count; ++n) {
    Element1D e;
    e.scale = j;
    e.n = n;
    if (n < p_) {
      e.kind = Factor1DKind::LeftScaling;
      e.v = left[static_cast<std::size_t>(n)];
    } else if (n < count - p_) {
      e.kind = Factor1DKind::InteriorScaling;
      DeepVec t;
      t.lo = n;
      t.c = Eigen::VectorXd::Ones(1);
      e.v = refine_to_deep(t, j);
    } else {
      e.kind = Factor1DKind::RightScaling;
      e.v = right[static_cast<std::size_t>(count - 1 - n)];
    }
    sc[static_cast<std::size_t>(n)] = std::move(e);
  }

  // Wavelets at scale j-1 once both V_{j-1} and V_j exist.
  if (j > j0_) {
    const int jj = j - 1;
    const int wcount = 1 << jj;
    auto& wv = wavelet_[static_cast<std::size_t>(jj)];
    wv.resize(static_cast<std::size_t>(wcount));

    // Interior wavelets: psi_{c,jj,n} expanded one scale down, then refined.
    const auto g = base_.mirror_filter();
    for (int n = p_; n < wcount - p_; ++n) {
      DeepVec fine;
      fine.lo = 2 * static_cast<std::int64_t>(n) - p_ + 1;
      fine.c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()));
      for (std::size_t m = 0; m < g.size(); ++m) fine.c(static_cast<Eigen::Index>(m)) = g[m];
      Element1D e;
      e.kind = Factor1DKind::InteriorWavelet;
      e.scale = jj;
      e.n = n;
      e.v = refine_to_deep(fine, jj + 1);
      wv[static_cast<std::size_t>(n)] = std::move(e);
    }

    // Boundary wavelets: project the scale-j edge scaling functions onto
    // W_{jj} = V_j minus V_{jj} and orthonormalize.
    auto project_out = [&](DeepVec v, const std::vector<const DeepVec*>& dirs) {
      for (int pass = 0; pass < 2; ++pass)
        for (const DeepVec* d : dirs) {
          const double c = inner(v, *d);
          const std::int64_t lo = std::min(v.lo, d->lo);
          const std::int64_t hi = std::max(v.lo + v.c.size(), d->lo + d->c.size()) - 1;
          Eigen::VectorXd merged = Eigen::VectorXd::Zero(hi - lo + 1);
          merged.segment(v.lo - lo, v.c.size()) = v.c;
          merged.segment(d->lo - lo, d->c.size()) -= c * d->c;
          v.lo = lo;
          v.c = merged;
        }
      return v;
    };
    std::vector<const DeepVec*> vj_dirs;
    for (const Element1D& e : scaling_[static_cast<std::size_t>(jj)]) vj_dirs.push_back(&e.v);
    for (int n = p_; n < wcount - p_; ++n)
      vj_dirs.push_back(&wv[static_cast<std::size_t>(n)].v);

    std::vector<DeepVec> lw(static_cast<std::size_t>(p_)), rw(static_cast<std::size_t>(p_));
    for (int k = 0; k < p_; ++k) {
      lw[static_cast<std::size_t>(k)] =
          project_out(scaling_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].v,
                      vj_dirs);
      rw[static_cast<std::size_t>(k)] = project_out(
          scaling_[static_cast<std::size_t>(j)][static_cast<std::size_t>(count - 1 - k)].v,
          vj_dirs);
    }
    orthonormalize(lw, "left wavelet");
    // Right wavelets also shed any left components (supports can meet at
    // small scales).
    std::vector<const DeepVec*> lw_dirs;
    for (const DeepVec& d : lw) lw_dirs.push_back(&d);
    for (int k = 0; k < p_; ++k) rw[static_cast<std::size_t>(k)] = project_out(rw[static_cast<std::size_t>(k)], lw_dirs);
    orthonormalize(rw, "right wavelet");

    for (int n = 0; n < wcount; ++n) {
      if (n >= p_ && n < wcount - p_) continue;
      Element1D e;
      e.scale = jj;
      e.n = n;
      if (n < p_) {
        e.kind = Factor1DKind::LeftWavelet;
        e.v = lw[static_cast<std::size_t>(n)];
      } else {
        e.kind = Factor1DKind::RightWavelet;
        e.v = rw[static_cast<std::size_t>(wcount - 1 - n)];
      }
      wv[static_cast<std::size_t>(n)] = std::move(e);
    }
  }
}

const Element1D& BoundaryFamily::scaling(int j, int n) const {
  if (j < j0_ || j > j_deep_ || n < 0 || n >= (1 << j))
    throw std::invalid_argument("BoundaryFamily::scaling: index out of range");
  return scaling_[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
}

const Element1D& BoundaryFamily::wavelet(int j, int n) const {
  if (j < j0_ || j >= j_deep_ || n < 0 || n >= (1 << j))
    throw std::invalid_argument("BoundaryFamily::wavelet: index out of range");
  return wavelet_[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
}

std::complex<double> BoundaryFamily::phi_hat_centered(double xi) const {
  // phi_c(x) = phi(x + p - 1).
  return unit_phase(-static_cast<double>(p_ - 1) * xi) * eval_->phi_hat(xi);
}

std::complex<double> BoundaryFamily::phi_hat_sharp(double xi) const {
  return unit_phase(xi) * std::conj(phi_hat_centered(xi));
}

std::complex<double> BoundaryFamily::deep_translate_transform(std::int64_t s, double w) const {
  // int_0^1 2^{Jd/2} phi_c(2^{Jd} x - s) e^{-2 pi i w x} dx.
  const double scale = static_cast<double>(std::int64_t{1} << j_deep_);
  const double eta = w / scale;
  const double amp = 1.0 / std::sqrt(scale);
  const cplx phase = unit_phase(eta * static_cast<double>(s));
  const std::int64_t interior_lo = p_ - 1;
  const std::int64_t interior_hi = (std::int64_t{1} << j_deep_) - p_;
  if (s >= interior_lo && s <= interior_hi) return amp * phase * phi_hat_centered(eta);
  auto cut_transform = [this](std::int64_t cut, double freq) {
    std::int64_t bits;
    static_assert(sizeof(bits) == sizeof(freq));
    std::memcpy(&bits, &freq, sizeof(bits));
    const auto key = std::make_pair(cut, bits);
    auto it = cut_cache_.find(key);
    if (it != cut_cache_.end()) return it->second;
    const cplx v = quad_.phi_transform(freq, static_cast<double>(cut));
    cut_cache_.emplace(key, v);
    return v;
  };
  const cplx full_shift = unit_phase(-static_cast<double>(p_ - 1) * eta);
  if (s < interior_lo) {
    // Cut from below at w0 = -s: tail integral over [-s, p].
    const std::int64_t cut = -s + p_ - 1;  // in the [0, 2p-1] frame
    return amp * phase * full_shift * cut_transform(cut, eta);
  }
  // Right crossing: integrate up to 2^{Jd} - s.
  const std::int64_t cut = (std::int64_t{1} << j_deep_) - s + p_ - 1;
  const cplx tail = full_shift * cut_transform(cut, eta);
  return amp * phase * (phi_hat_centered(eta) - tail);
}

std::complex<double> BoundaryFamily::fourier_factor(const Element1D& e, double w) const {
  cplx acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < e.v.c.size(); ++i) {
    if (e.v.c(i) == 0.0) continue;
    acc += e.v.c(i) * deep_translate_transform(e.v.lo + i, w);
  }
  return acc;
}

double BoundaryFamily::evaluate(const Element1D& e, double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  const double scale = static_cast<double>(std::int64_t{1} << j_deep_);
  const double amp = std::sqrt(scale);
  const std::int64_t grid = std::int64_t{1} << quad_.levels();
  const std::int64_t last = static_cast<std::int64_t>(phic_samples_.size()) - 1;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < e.v.c.size(); ++i) {
    if (e.v.c(i) == 0.0) continue;
    // w = 2^{Jd} x - s in the centered frame; sample phi at w + p - 1.
    const double w = scale * x - static_cast<double>(e.v.lo + i) +
                     static_cast<double>(p_ - 1);
    const double t = w * static_cast<double>(grid);
    const std::int64_t k = static_cast<std::int64_t>(std::floor(t));
    if (k < 0 || k >= last) continue;
    const double fr = t - static_cast<double>(k);
    acc += e.v.c(i) * ((1.0 - fr) * phic_samples_[static_cast<std::size_t>(k)] +
                       fr * phic_samples_[static_cast<std::size_t>(k + 1)]);
  }
  return amp * acc;
}

double BoundaryFamily::factor_inner(const Element1D& e,
                                    const std::function<double(double)>& f) const {
  // int_0^1 e(x) f(x) dx = sum_s c_s 2^{-Jd/2} int phi_c(v) f((v+s)/2^Jd) dv,
  // trapezoid over the cascade grid clipped to [0,1].
  const std::int64_t grid = std::int64_t{1} << quad_.levels();
  const double h = 1.0 / static_cast<double>(grid);
  const double scale = static_cast<double>(std::int64_t{1} << j_deep_);
  const std::int64_t last = static_cast<std::int64_t>(phic_samples_.size()) - 1;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < e.v.c.size(); ++i) {
    if (e.v.c(i) == 0.0) continue;
    const std::int64_t s = e.v.lo + i;
    double part = 0.0;
    // v in the interior-frame grid [0, 2p-1]; x = (v - (p-1) + s)/2^Jd in [0,1].
    for (std::int64_t k = 0; k <= last; ++k) {
      const double v = static_cast<double>(k) * h;
      const double x = (v - static_cast<double>(p_ - 1) + static_cast<double>(s)) / scale;
      if (x < 0.0 || x > 1.0) continue;
      double wgt = phic_samples_[static_cast<std::size_t>(k)];
      if (k == 0 || k == last || x == 0.0 || x == 1.0) wgt *= 0.5;
      part += wgt * f(x);
    }
    acc += e.v.c(i) * part * h;
  }
  return acc / std::sqrt(scale);
}

void BoundaryFamily::export_tables(std::ostream& os) const {
  os << "boundary-family v1 p " << p_ << " J0 " << j0_ << "\n";
  char buf[96];
  auto emit = [&](const char* side, const Eigen::MatrixXd& rows) {
    for (Eigen::Index k = 0; k < rows.rows(); ++k)
      for (Eigen::Index s = 0; s < rows.cols(); ++s) {
        std::snprintf(buf, sizeof(buf), "%s %lld %lld %.17g\n", side,
                      static_cast<long long>(k), static_cast<long long>(s - (p_ - 1)),
                      rows(k, s));
        os << buf;
      }
  };
  emit("left", left_ortho_);
  emit("right", right_ortho_);
}

BoundaryBasis2D enumerate_boundary_basis(const BoundaryFamily& family, int J) {
  if (J < family.j0())
    throw std::invalid_argument("enumerate_boundary_basis: J below coarsest scale");
  if (J > family.j_top())
    throw std::invalid_argument("enumerate_boundary_basis: family built for smaller J");
  BoundaryBasis2D b;
  b.p = family.p();
  b.J = J;
  std::int64_t pos = 1;
  const int c0 = 1 << family.j0();
  for (int n1 = 0; n1 < c0; ++n1)
    for (int n2 = 0; n2 < c0; ++n2)
      b.elements.push_back({true, 0, family.j0(), n1, n2, pos++});
  for (int j = family.j0(); j < J; ++j) {
    const int c = 1 << j;
    for (int k = 1; k <= 3; ++k)
      for (int n1 = 0; n1 < c; ++n1)
        for (int n2 = 0; n2 < c; ++n2) b.elements.push_back({false, k, j, n1, n2, pos++});
  }
  return b;
}

std::pair<const Element1D*, const Element1D*> boundary_factors(const BoundaryFamily& family,
                                                               const BoundaryIndex& idx) {
  if (idx.is_scaling)
    return {&family.scaling(idx.scale, idx.n1), &family.scaling(idx.scale, idx.n2)};
  switch (idx.k) {
    case 1: return {&family.scaling(idx.scale, idx.n1), &family.wavelet(idx.scale, idx.n2)};
    case 2: return {&family.wavelet(idx.scale, idx.n1), &family.scaling(idx.scale, idx.n2)};
    case 3: return {&family.wavelet(idx.scale, idx.n1), &family.wavelet(idx.scale, idx.n2)};
    default: throw std::invalid_argument("boundary_factors: bad generator");
  }
}

std::complex<double> boundary_gramian_entry(const BoundaryFamily& family,
                                            const BoundaryIndex& idx, std::int64_t l1,
                                            std::int64_t l2, const SamplingScheme& scheme) {
  const auto [f1, f2] = boundary_factors(family, idx);
  const double w1 = scheme.epsilon * static_cast<double>(l1);
  const double w2 = scheme.epsilon * static_cast<double>(l2);
  return scheme.epsilon * family.fourier_factor(*f1, w1) * family.fourier_factor(*f2, w2);
}

Eigen::MatrixXcd assemble_boundary(const BoundaryFamily& family, const BoundaryBasis2D& basis,
                                   const SamplingScheme& scheme) {
  // Distinct 1D factors are few; tabulate their transforms per axis.
  struct Key {
    bool wavelet;
    int j, n;
    bool operator<(const Key& o) const {
      return std::tie(wavelet, j, n) < std::tie(o.wavelet, o.j, o.n);
    }
  };
  auto key_of = [](const BoundaryIndex& e, bool second) {
    const bool wav = !e.is_scaling && (second ? (e.k == 1 || e.k == 3) : (e.k >= 2));
    return Key{wav, e.scale, second ? e.n2 : e.n1};
  };
  std::map<Key, Eigen::VectorXcd> tab1, tab2;
  auto fill = [&](std::map<Key, Eigen::VectorXcd>& tab, std::int64_t M) {
    for (auto& [key, col] : tab) {
      const Element1D& e = key.wavelet ? family.wavelet(key.j, key.n)
                                       : family.scaling(key.j, key.n);
      col.resize(2 * M + 1);
      for (std::int64_t l = -M; l <= M; ++l)
        col(l + M) = family.fourier_factor(e, scheme.epsilon * static_cast<double>(l));
    }
  };
  for (const BoundaryIndex& e : basis.elements) {
    tab1[key_of(e, false)];
    tab2[key_of(e, true)];
  }
  fill(tab1, scheme.M1);
  fill(tab2, scheme.M2);

  Eigen::MatrixXcd U(scheme.total(), static_cast<Eigen::Index>(basis.elements.size()));
  for (std::size_t c = 0; c < basis.elements.size(); ++c) {
    const auto& col1 = tab1[key_of(basis.elements[c], false)];
    const auto& col2 = tab2[key_of(basis.elements[c], true)];
    Eigen::Index row = 0;
    for (std::int64_t l1 = -scheme.M1; l1 <= scheme.M1; ++l1)
      for (std::int64_t l2 = -scheme.M2; l2 <= scheme.M2; ++l2)
        U(row++, static_cast<Eigen::Index>(c)) =
            scheme.epsilon * col1(l1 + scheme.M1) * col2(l2 + scheme.M2);
  }
  return U;
}

}  // namespace f2w
