#pragma once

#include <complex>
#include <functional>

#include <Eigen/Core>

namespace f2w {

struct GSResult {
  Eigen::VectorXcd alpha;
  double residual = 0.0;         // ||U alpha - m||
  double normal_residual = 0.0;  // ||U^H (U alpha - m)||
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double reconstruction_constant = 0.0;  // 1 / sigma_min
  int iterations = 0;
};

struct GSolveOptions {
  double tol = 1e-12;
  int max_iterations = 5000;
  bool compute_spectrum = false;  // fill sigma_min/sigma_max via dense SVD
};

// Least-squares solution of U alpha = m. Dense QR up to qr_limit columns,
// conjugate gradient on the normal equations beyond.
GSResult gs_solve(const Eigen::MatrixXcd& U, const Eigen::VectorXcd& m,
                  const GSolveOptions& opts = {});

// Matvec interface for implicit operators: y = U x and y = U^H x.
struct LinearOperator {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply_adjoint;
};

GSResult gs_solve(const LinearOperator& U, const Eigen::VectorXcd& m,
                  const GSolveOptions& opts = {});

struct SingularPair {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

// Smallest/largest singular values. Dense route: QR to an N x N triangular
// factor, then SVD. For operators given only through matvecs, Lanczos on
// U^H U with full reorthogonalization.
SingularPair singular_extremes(const Eigen::MatrixXcd& U);
double smallest_singular_value(const Eigen::MatrixXcd& U);

SingularPair singular_extremes_lanczos(const LinearOperator& U, int max_iterations = 400,
                                       double tol = 1e-10);

}  // namespace f2w
