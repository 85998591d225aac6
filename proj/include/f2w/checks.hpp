#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>

#include "f2w/scaling_matrix.hpp"

namespace f2w {

// Trigonometric polynomial Phi(z) = sum alpha_m e^{-2 pi i <z, m>} over the
// integer rectangle [lo1, lo1+rows-1] x [lo2, lo2+cols-1].
struct TrigPoly2 {
  std::int64_t lo1 = 0, lo2 = 0;
  Eigen::MatrixXcd coef;

  std::complex<double> eval(double z1, double z2) const;
};

// Discrete MZ-side sum: sum_l eps^2 |det A^{-J}| |Phi(eps (A^{-J})^T l)|^2
// over l in [-M1,M1] x [-M2,M2].
double mz_discrete_sum(const TrigPoly2& phi, const ScalingMatrix2& A, int J, double epsilon,
                       std::int64_t M1, std::int64_t M2);

// Exact ||Phi||^2 over the region eps (A^{-J})^T ([-M1,M1]x[-M2,M2]).
double trig_region_norm_sq(const TrigPoly2& phi, const ScalingMatrix2& A, int J,
                           double epsilon, std::int64_t M1, std::int64_t M2);

struct MZBound {
  double C = 0.0;
  bool below_threshold = false;  // delta under the Prop-6.11 admissible range
};

// C(delta, L) = 1 - (e^{2 pi delta maxL} - 1) sqrt(mu(Omega^(eps))).
MZBound mz_lower_bound(double delta, std::int64_t max_abs_L, double region_measure);

// Exact grid Parseval identity: the mean of |Phi|^2 over the (2L1 x 2L2) uniform grid
// equals sum |alpha|^2 whenever 2L1 >= rows and 2L2 >= cols. Returns the
// deviation; throws on an undersized grid. Exponent sign e^{+2 pi i k z}.
double grid_parseval_check(const Eigen::MatrixXcd& alpha, std::int64_t L1, std::int64_t L2);

struct QuasiOptReport {
  double err_best = 0.0;  // ||f - P_R f||
  double err_gs = 0.0;    // ||f - G(f)||
  double bound = 0.0;     // err_best / sigma_min
  double sigma_min = 0.0;
  bool holds = false;
};

// Sandwich check from precomputed data: ||f||, the orthonormal-basis
// coefficients c_i = <f, r_i>, and the GS solution alpha.
QuasiOptReport quasi_optimality_check(double f_norm, const Eigen::VectorXcd& coeffs,
                                      const Eigen::VectorXcd& alpha, double sigma_min,
                                      double tol);

}  // namespace f2w
