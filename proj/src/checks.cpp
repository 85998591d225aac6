#include "f2w/checks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace f2w {

namespace {
using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double neumaier_add(double& sum, double v, double comp) {
  const double t = sum + v;
  const double c = (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
  sum = t;
  return comp + c;
}
}  // namespace

std::complex<double> TrigPoly2::eval(double z1, double z2) const {
  cplx acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < coef.rows(); ++i) {
    const double p1 = z1 * static_cast<double>(lo1 + i);
    const double a1 = -kTwoPi * (p1 - std::floor(p1));
    const cplx e1(std::cos(a1), std::sin(a1));
    cplx row(0.0, 0.0);
    for (Eigen::Index j = 0; j < coef.cols(); ++j) {
      const double p2 = z2 * static_cast<double>(lo2 + j);
      const double a2 = -kTwoPi * (p2 - std::floor(p2));
      row += coef(i, j) * cplx(std::cos(a2), std::sin(a2));
    }
    acc += e1 * row;
  }
  return acc;
}

double mz_discrete_sum(const TrigPoly2& phi, const ScalingMatrix2& A, int J, double epsilon,
                       std::int64_t M1, std::int64_t M2) {
  const double detj = std::abs(static_cast<double>(A.power(J).det));
  const double weight = epsilon * epsilon / detj;
  double acc = 0.0;
  for (std::int64_t l1 = -M1; l1 <= M1; ++l1)
    for (std::int64_t l2 = -M2; l2 <= M2; ++l2) {
      const auto z = A.inv_transpose_apply(J, l1, l2);
      acc += std::norm(phi.eval(epsilon * z[0], epsilon * z[1]));
    }
  return weight * acc;
}

double trig_region_norm_sq(const TrigPoly2& phi, const ScalingMatrix2& A, int J,
                           double epsilon, std::int64_t M1, std::int64_t M2) {
  // ||Phi||^2 over T(box), T = eps (A^{-J})^T: substitute x = T u and use the
  // closed box integral of e^{-2 pi i <u, T^T d>}.
  const MatrixPower& p = A.power(J);
  const double detT = epsilon * epsilon / std::abs(static_cast<double>(p.det));
  auto Tt = [&](double d1, double d2) {
    // T^T = eps A^{-J}; A^{-J} = [[l4,-l2],[-l3,l1]]/det.
    const double det = static_cast<double>(p.det);
    return std::array<double, 2>{
        epsilon * (static_cast<double>(p.l4) * d1 - static_cast<double>(p.l2) * d2) / det,
        epsilon * (-static_cast<double>(p.l3) * d1 + static_cast<double>(p.l1) * d2) / det};
  };
  auto box_factor = [](double w, std::int64_t M) {
    if (w == 0.0) return 2.0 * static_cast<double>(M);
    return std::sin(kTwoPi * static_cast<double>(M) * w) / (std::numbers::pi * w);
  };
  double acc = 0.0;
  for (Eigen::Index i = 0; i < phi.coef.rows(); ++i)
    for (Eigen::Index j = 0; j < phi.coef.cols(); ++j)
      for (Eigen::Index i2 = 0; i2 < phi.coef.rows(); ++i2)
        for (Eigen::Index j2 = 0; j2 < phi.coef.cols(); ++j2) {
          const auto w = Tt(static_cast<double>(i - i2), static_cast<double>(j - j2));
          const cplx term = phi.coef(i, j) * std::conj(phi.coef(i2, j2));
          acc += term.real() * box_factor(w[0], M1) * box_factor(w[1], M2);
        }
  return detT * acc;
}

MZBound mz_lower_bound(double delta, std::int64_t max_abs_L, double region_measure) {
  if (delta < 0.0 || region_measure <= 0.0)
    throw std::invalid_argument("mz_lower_bound: delta >= 0, measure > 0");
  MZBound out;
  const double e = std::expm1(kTwoPi * delta * static_cast<double>(max_abs_L));
  out.C = 1.0 - e * std::sqrt(region_measure);
  const double threshold = std::log(1.0 / std::sqrt(region_measure) + 1.0) /
                           (std::numbers::pi * 2.0 * static_cast<double>(max_abs_L));
  out.below_threshold = delta < threshold;
  return out;
}

double grid_parseval_check(const Eigen::MatrixXcd& alpha, std::int64_t L1, std::int64_t L2) {
  const std::int64_t rows = alpha.rows(), cols = alpha.cols();
  if (2 * L1 < rows || 2 * L2 < cols)
    throw std::invalid_argument("grid_parseval_check: grid smaller than the band");
  const std::int64_t G1 = 2 * L1, G2 = 2 * L2;
  double lhs = 0.0, comp = 0.0;
  for (std::int64_t m = 0; m < G1; ++m)
    for (std::int64_t n = 0; n < G2; ++n) {
      cplx v(0.0, 0.0);
      for (std::int64_t i = 0; i < rows; ++i) {
        // e^{+2 pi i k m / (2 L1)}; reduce k m mod 2L1 exactly in integers.
        const std::int64_t r1 = ((i * m) % G1 + G1) % G1;
        const double a1 = kTwoPi * static_cast<double>(r1) / static_cast<double>(G1);
        const cplx e1(std::cos(a1), std::sin(a1));
        cplx row(0.0, 0.0);
        for (std::int64_t j = 0; j < cols; ++j) {
          const std::int64_t r2 = ((j * n) % G2 + G2) % G2;
          const double a2 = kTwoPi * static_cast<double>(r2) / static_cast<double>(G2);
          row += alpha(i, j) * cplx(std::cos(a2), std::sin(a2));
        }
        v += e1 * row;
      }
      comp = neumaier_add(lhs, std::norm(v), comp);
    }
  lhs = (lhs + comp) / static_cast<double>(G1 * G2);
  double rhs = 0.0, comp2 = 0.0;
  for (std::int64_t i = 0; i < rows; ++i)
    for (std::int64_t j = 0; j < cols; ++j) comp2 = neumaier_add(rhs, std::norm(alpha(i, j)), comp2);
  rhs += comp2;
  return std::abs(lhs - rhs);
}

QuasiOptReport quasi_optimality_check(double f_norm, const Eigen::VectorXcd& coeffs,
                                      const Eigen::VectorXcd& alpha, double sigma_min,
                                      double tol) {
  QuasiOptReport r;
  const double f2 = f_norm * f_norm;
  r.err_best = std::sqrt(std::max(0.0, f2 - coeffs.squaredNorm()));
  // ||f - G||^2 = ||f||^2 - 2 Re <f, G> + ||alpha||^2 with <f, G> = sum conj(a_i) c_i.
  const cplx fg = alpha.dot(coeffs);  // sum conj(alpha_i) coeffs_i
  r.err_gs = std::sqrt(std::max(0.0, f2 - 2.0 * fg.real() + alpha.squaredNorm()));
  r.sigma_min = sigma_min;
  r.bound = r.err_best / sigma_min;
  // The squared-norm route loses half the digits to cancellation when the
  // errors are tiny; scale the slack with the function size.
  const double slack = tol * (1.0 + f_norm);
  r.holds = (r.err_best <= r.err_gs + slack) && (r.err_gs <= r.bound + slack);
  return r;
}

}  // namespace f2w
