#include "f2w/implicit_op.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace f2w {

namespace {
using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

struct ImplicitGramian::Impl {
  SamplingScheme scheme;
  WaveletFamily family;
  int J;
  int a;
  std::vector<double> h, g;
  std::shared_ptr<FrequencyEvaluator> eval;
  // Coefficient rectangle [lo_j, hi_j] per axis at each scale.
  std::vector<std::int64_t> lo, hi;
  std::int64_t n_basis = 0;
  // Per-axis evaluation matrices E[(l+M), (m-loJ)] = e^{-2 pi i eps l m / 2^J}
  // and phi_hat weights.
  Eigen::MatrixXcd E1, E2;
  Eigen::VectorXcd w1, w2;

  std::int64_t wave_hi(int j) const {
    return static_cast<std::int64_t>(a) * (std::int64_t{1} << j) - 1;
  }

  Impl(const SamplingScheme& s, const WaveletFamily& fam, int Jin)
      : scheme(s), family(fam), J(Jin), a(fam.support_width()), h(fam.filter()),
        g(fam.mirror_filter()) {
    if (J < 0) throw std::invalid_argument("ImplicitGramian: J >= 0");
    eval = std::make_shared<FrequencyEvaluator>(family);
    lo.resize(static_cast<std::size_t>(J) + 1);
    hi.resize(static_cast<std::size_t>(J) + 1);
    lo[0] = -a + 1;
    hi[0] = a - 1;
    const std::int64_t taps = static_cast<std::int64_t>(h.size()) - 1;
    for (int j = 0; j < J; ++j) {
      const std::int64_t l = std::min<std::int64_t>(lo[static_cast<std::size_t>(j)], -a + 1);
      const std::int64_t hgh = std::max<std::int64_t>(hi[static_cast<std::size_t>(j)], wave_hi(j));
      lo[static_cast<std::size_t>(j) + 1] = 2 * l;
      hi[static_cast<std::size_t>(j) + 1] = 2 * hgh + taps;
    }
    const ScalingMatrix2 A = ScalingMatrix2::dyadic();
    n_basis = count_elements(A, a, J);

    const double scaleJ = static_cast<double>(std::int64_t{1} << J);
    const std::int64_t width = hi[static_cast<std::size_t>(J)] - lo[static_cast<std::size_t>(J)] + 1;
    E1.resize(2 * scheme.M1 + 1, width);
    E2.resize(2 * scheme.M2 + 1, width);
    w1.resize(2 * scheme.M1 + 1);
    w2.resize(2 * scheme.M2 + 1);
    for (std::int64_t l = -scheme.M1; l <= scheme.M1; ++l) {
      const double z = scheme.epsilon * static_cast<double>(l) / scaleJ;
      for (std::int64_t m = 0; m < width; ++m) {
        const double p = z * static_cast<double>(m + lo[static_cast<std::size_t>(J)]);
        const double ang = -kTwoPi * (p - std::floor(p));
        E1(l + scheme.M1, m) = cplx(std::cos(ang), std::sin(ang));
      }
      w1(l + scheme.M1) = eval->phi_hat(z);
    }
    for (std::int64_t l = -scheme.M2; l <= scheme.M2; ++l) {
      const double z = scheme.epsilon * static_cast<double>(l) / scaleJ;
      for (std::int64_t m = 0; m < width; ++m) {
        const double p = z * static_cast<double>(m + lo[static_cast<std::size_t>(J)]);
        const double ang = -kTwoPi * (p - std::floor(p));
        E2(l + scheme.M2, m) = cplx(std::cos(ang), std::sin(ang));
      }
      w2(l + scheme.M2) = eval->phi_hat(z);
    }
  }

  // One synthesis step: coefficients at scale j (rect R) plus the three
  // wavelet blocks at scale j lift to scale j+1.
  Eigen::MatrixXcd synth_step(int j, const Eigen::MatrixXcd& C,
                              const Eigen::MatrixXcd W[3]) const {
    const std::int64_t lo_out = lo[static_cast<std::size_t>(j) + 1];
    const std::int64_t hi_out = hi[static_cast<std::size_t>(j) + 1];
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(hi_out - lo_out + 1, hi_out - lo_out + 1);
    const std::int64_t wlo = -a + 1;

    auto accumulate = [&](const Eigen::MatrixXcd& src, std::int64_t src_lo,
                          const std::vector<double>& f1, const std::vector<double>& f2) {
      for (Eigen::Index i = 0; i < src.rows(); ++i)
        for (Eigen::Index k = 0; k < src.cols(); ++k) {
          const cplx v = src(i, k);
          if (v == cplx(0.0, 0.0)) continue;
          const std::int64_t m1 = src_lo + i, m2 = src_lo + k;
          for (std::size_t d1 = 0; d1 < f1.size(); ++d1)
            for (std::size_t d2 = 0; d2 < f2.size(); ++d2) {
              const std::int64_t n1 = 2 * m1 + static_cast<std::int64_t>(d1);
              const std::int64_t n2 = 2 * m2 + static_cast<std::int64_t>(d2);
              out(n1 - lo_out, n2 - lo_out) += v * f1[d1] * f2[d2];
            }
        }
    };
    accumulate(C, lo[static_cast<std::size_t>(j)], h, h);
    accumulate(W[0], wlo, h, g);  // k=1: phi x psi
    accumulate(W[1], wlo, g, h);  // k=2: psi x phi
    accumulate(W[2], wlo, g, g);  // k=3: psi x psi
    return out;
  }

  // Exact transpose of synth_step.
  void synth_step_adjoint(int j, const Eigen::MatrixXcd& out, Eigen::MatrixXcd& C,
                          Eigen::MatrixXcd W[3]) const {
    const std::int64_t lo_out = lo[static_cast<std::size_t>(j) + 1];
    const std::int64_t wlo = -a + 1;
    auto gather = [&](Eigen::MatrixXcd& dst, std::int64_t dst_lo,
                      const std::vector<double>& f1, const std::vector<double>& f2) {
      for (Eigen::Index i = 0; i < dst.rows(); ++i)
        for (Eigen::Index k = 0; k < dst.cols(); ++k) {
          const std::int64_t m1 = dst_lo + i, m2 = dst_lo + k;
          cplx acc(0.0, 0.0);
          for (std::size_t d1 = 0; d1 < f1.size(); ++d1)
            for (std::size_t d2 = 0; d2 < f2.size(); ++d2) {
              const std::int64_t n1 = 2 * m1 + static_cast<std::int64_t>(d1);
              const std::int64_t n2 = 2 * m2 + static_cast<std::int64_t>(d2);
              acc += out(n1 - lo_out, n2 - lo_out) * f1[d1] * f2[d2];
            }
          dst(i, k) = acc;
        }
    };
    gather(C, lo[static_cast<std::size_t>(j)], h, h);
    gather(W[0], wlo, h, g);
    gather(W[1], wlo, g, h);
    gather(W[2], wlo, g, g);
  }

  Eigen::MatrixXcd synthesize(const Eigen::VectorXcd& alpha) const {
    const std::int64_t side0 = 2 * a - 1;
    Eigen::MatrixXcd C(side0, side0);
    Eigen::Index pos = 0;
    for (Eigen::Index i = 0; i < side0; ++i)
      for (Eigen::Index k = 0; k < side0; ++k) C(i, k) = alpha(pos++);
    for (int j = 0; j < J; ++j) {
      const std::int64_t wside = wave_hi(j) - (-a + 1) + 1;
      Eigen::MatrixXcd W[3];
      for (int k = 0; k < 3; ++k) {
        W[k].resize(wside, wside);
        for (Eigen::Index i = 0; i < wside; ++i)
          for (Eigen::Index c = 0; c < wside; ++c) W[k](i, c) = alpha(pos++);
      }
      C = synth_step(j, C, W);
    }
    return C;
  }

  Eigen::VectorXcd synthesize_adjoint(const Eigen::MatrixXcd& CJ) const {
    Eigen::VectorXcd alpha(n_basis);
    // Walk back from scale J to 0, peeling wavelet blocks.
    std::vector<Eigen::MatrixXcd> outs(static_cast<std::size_t>(J) + 1);
    outs[static_cast<std::size_t>(J)] = CJ;
    struct Block {
      Eigen::MatrixXcd C;
      Eigen::MatrixXcd W[3];
    };
    std::vector<Block> blocks(static_cast<std::size_t>(J));
    for (int j = J - 1; j >= 0; --j) {
      Block& b = blocks[static_cast<std::size_t>(j)];
      const std::int64_t cw = hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)] + 1;
      const std::int64_t ww = wave_hi(j) - (-a + 1) + 1;
      b.C.resize(cw, cw);
      for (int k = 0; k < 3; ++k) b.W[k].resize(ww, ww);
      synth_step_adjoint(j, outs[static_cast<std::size_t>(j) + 1], b.C, b.W);
      outs[static_cast<std::size_t>(j)] = b.C;
    }
    Eigen::Index pos = 0;
    const std::int64_t side0 = 2 * a - 1;
    const Eigen::MatrixXcd& C0 = J == 0 ? CJ : outs[0];
    for (Eigen::Index i = 0; i < side0; ++i)
      for (Eigen::Index k = 0; k < side0; ++k) alpha(pos++) = C0(i, k);
    for (int j = 0; j < J; ++j) {
      const Block& b = blocks[static_cast<std::size_t>(j)];
      for (int k = 0; k < 3; ++k)
        for (Eigen::Index i = 0; i < b.W[k].rows(); ++i)
          for (Eigen::Index c = 0; c < b.W[k].cols(); ++c) alpha(pos++) = b.W[k](i, c);
    }
    return alpha;
  }
};

ImplicitGramian::ImplicitGramian(const SamplingScheme& scheme, const WaveletFamily& family,
                                 int J)
    : impl_(std::make_shared<Impl>(scheme, family, J)) {}

Eigen::Index ImplicitGramian::rows() const { return impl_->scheme.total(); }
Eigen::Index ImplicitGramian::cols() const { return impl_->n_basis; }

Eigen::VectorXcd ImplicitGramian::apply(const Eigen::VectorXcd& alpha) const {
  const Impl& im = *impl_;
  if (alpha.size() != im.n_basis) throw std::invalid_argument("ImplicitGramian: bad size");
  const Eigen::MatrixXcd CJ = im.synthesize(alpha);
  const double amp = im.scheme.epsilon / static_cast<double>(std::int64_t{1} << im.J);
  Eigen::MatrixXcd grid = im.E1 * CJ * im.E2.transpose();
  Eigen::VectorXcd y(im.scheme.total());
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < grid.rows(); ++i)
    for (Eigen::Index k = 0; k < grid.cols(); ++k)
      y(row++) = amp * im.w1(i) * im.w2(k) * grid(i, k);
  return y;
}

Eigen::VectorXcd ImplicitGramian::apply_adjoint(const Eigen::VectorXcd& y) const {
  const Impl& im = *impl_;
  if (y.size() != im.scheme.total()) throw std::invalid_argument("ImplicitGramian: bad size");
  const double amp = im.scheme.epsilon / static_cast<double>(std::int64_t{1} << im.J);
  Eigen::MatrixXcd Z(im.E1.rows(), im.E2.rows());
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < Z.rows(); ++i)
    for (Eigen::Index k = 0; k < Z.cols(); ++k)
      Z(i, k) = amp * std::conj(im.w1(i)) * std::conj(im.w2(k)) * y(row++);
  const Eigen::MatrixXcd CJ = im.E1.adjoint() * Z * im.E2.conjugate();
  return im.synthesize_adjoint(CJ);
}

LinearOperator ImplicitGramian::as_operator() const {
  LinearOperator op;
  op.rows = rows();
  op.cols = cols();
  auto self = *this;
  op.apply = [self](const Eigen::VectorXcd& x) { return self.apply(x); };
  op.apply_adjoint = [self](const Eigen::VectorXcd& x) { return self.apply_adjoint(x); };
  return op;
}

}  // namespace f2w
