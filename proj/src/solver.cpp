#include "f2w/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace f2w {

namespace {

constexpr Eigen::Index kDenseSvdLimit = 4000;

// Upper-triangular factor of U (same singular values as U).
Eigen::MatrixXcd r_factor(const Eigen::MatrixXcd& U) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(U);
  const Eigen::Index n = std::min(U.rows(), U.cols());
  Eigen::MatrixXcd R = qr.matrixQR().topRows(n).template triangularView<Eigen::Upper>();
  return R;
}

}  // namespace

SingularPair singular_extremes(const Eigen::MatrixXcd& U) {
  if (U.cols() > kDenseSvdLimit)
    throw std::invalid_argument("singular_extremes: dense path limited to N <= 4000");
  SingularPair out;
  // A wide matrix cannot be injective: inf over unit vectors of ||U x|| is 0
  // even though the SVD only reports min(rows, cols) values.
  if (U.rows() < U.cols()) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(U);
    out.sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    out.sigma_min = 0.0;
    return out;
  }
  if (U.cols() >= 512) {
    // Large blocks: eigenvalues of U^H U. The rate search keeps the
    // conditioning mild, so squaring costs no accuracy that matters here;
    // tests pin agreement with the SVD route.
    Eigen::MatrixXcd H = U.adjoint() * U;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    out.sigma_min = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
    out.sigma_max = std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
    return out;
  }
  Eigen::MatrixXcd R = U.rows() > 2 * U.cols() ? r_factor(U) : U;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(R);
  const auto& s = svd.singularValues();
  out.sigma_max = s.size() ? s(0) : 0.0;
  out.sigma_min = s.size() ? s(s.size() - 1) : 0.0;
  return out;
}

double smallest_singular_value(const Eigen::MatrixXcd& U) {
  return singular_extremes(U).sigma_min;
}

GSResult gs_solve(const Eigen::MatrixXcd& U, const Eigen::VectorXcd& m,
                  const GSolveOptions& opts) {
  if (U.rows() != m.size()) throw std::invalid_argument("gs_solve: size mismatch");
  GSResult r;
  r.alpha = U.colPivHouseholderQr().solve(m);
  r.iterations = 1;
  const Eigen::VectorXcd res = U * r.alpha - m;
  r.residual = res.norm();
  r.normal_residual = (U.adjoint() * res).norm();
  const double scale = (U.adjoint() * m).norm();
  if (r.normal_residual > std::max(opts.tol, 1e-9) * std::max(scale, 1.0))
    throw std::runtime_error("gs_solve: normal-equation residual above tolerance");
  if (opts.compute_spectrum) {
    const SingularPair s = singular_extremes(U);
    r.sigma_min = s.sigma_min;
    r.sigma_max = s.sigma_max;
    if (s.sigma_min < 1e-14 * std::max(1.0, s.sigma_max))
      throw std::runtime_error("gs_solve: rank-deficient cross-Gramian");
    r.reconstruction_constant = 1.0 / s.sigma_min;
  }
  return r;
}

GSResult gs_solve(const LinearOperator& U, const Eigen::VectorXcd& m,
                  const GSolveOptions& opts) {
  if (U.rows != m.size()) throw std::invalid_argument("gs_solve: size mismatch");
  // CG on U^H U alpha = U^H m.
  GSResult out;
  Eigen::VectorXcd b = U.apply_adjoint(m);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(U.cols);
  Eigen::VectorXcd r = b;
  Eigen::VectorXcd p = r;
  double rs = r.squaredNorm();
  const double stop = opts.tol * std::max(b.norm(), 1e-300);
  int it = 0;
  while (std::sqrt(rs) > stop && it < opts.max_iterations) {
    const Eigen::VectorXcd Up = U.apply(p);
    const Eigen::VectorXcd Ap = U.apply_adjoint(Up);
    const std::complex<double> denom = p.dot(Ap);
    if (std::abs(denom) == 0.0) break;
    const std::complex<double> alpha = rs / denom;
    x += alpha * p;
    r -= alpha * Ap;
    const double rs_new = r.squaredNorm();
    p = r + (rs_new / rs) * p;
    rs = rs_new;
    ++it;
  }
  if (std::sqrt(rs) > stop)
    throw std::runtime_error("gs_solve: conjugate gradient did not converge");
  out.alpha = std::move(x);
  out.iterations = it;
  const Eigen::VectorXcd res = U.apply(out.alpha) - m;
  out.residual = res.norm();
  out.normal_residual = U.apply_adjoint(res).norm();
  return out;
}

SingularPair singular_extremes_lanczos(const LinearOperator& U, int max_iterations,
                                       double tol) {
  // Lanczos with full reorthogonalization on B = U^H U; the smallest
  // eigenvalue comes from a second run on sigma_max^2 I - B.
  const Eigen::Index n = U.cols;
  auto matvec = [&U](const Eigen::VectorXcd& v) { return U.apply_adjoint(U.apply(v)); };

  auto extremal = [&](const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& Bv)
      -> double {
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
      q(i) = std::complex<double>(std::cos(0.7 * static_cast<double>(i) + 0.3),
                                  std::sin(1.3 * static_cast<double>(i) + 0.1));
    q.normalize();
    std::vector<Eigen::VectorXcd> basis{q};
    std::vector<double> alpha, beta;
    double prev = 0.0;
    for (int k = 0; k < std::min<int>(max_iterations, static_cast<int>(n)); ++k) {
      Eigen::VectorXcd w = Bv(basis.back());
      const double a = basis.back().dot(w).real();
      alpha.push_back(a);
      for (const auto& v : basis) w -= v.dot(w) * v;
      for (const auto& v : basis) w -= v.dot(w) * v;
      const double b = w.norm();
      // Tridiagonal eigenvalues.
      const int m = static_cast<int>(alpha.size());
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) {
          T(i, i + 1) = beta[static_cast<std::size_t>(i)];
          T(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      const double top = es.eigenvalues()(m - 1);
      if (k > 3 && std::abs(top - prev) < tol * std::max(1.0, std::abs(top))) return top;
      prev = top;
      if (b < 1e-14) return top;
      beta.push_back(b);
      basis.push_back(w / b);
    }
    return prev;
  };

  SingularPair out;
  const double lmax = extremal(matvec);
  out.sigma_max = std::sqrt(std::max(0.0, lmax));
  const double shift = lmax * (1.0 + 1e-8) + 1e-30;
  auto shifted = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return shift * v - matvec(v);
  };
  const double top_shifted = extremal(shifted);
  out.sigma_min = std::sqrt(std::max(0.0, shift - top_shifted));
  return out;
}

}  // namespace f2w
