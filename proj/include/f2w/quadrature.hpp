#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "f2w/basis.hpp"
#include "f2w/sampling.hpp"
#include "f2w/scaling_matrix.hpp"
#include "f2w/wavelet.hpp"

namespace f2w {

// Adaptive Simpson quadrature for smooth integrands.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11, int max_depth = 40);
std::complex<double> adaptive_simpson_cplx(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, double tol = 1e-11,
                                           int max_depth = 40);

// Quadrature route to Fourier data of the 1D scaling function and wavelet:
// trapezoid sums over the exact dyadic cascade samples with Aitken
// extrapolation across three levels. Independent of the refinement-product
// evaluator; serves as the oracle for cross-Gramian entries.
class DyadicQuadrature {
 public:
  explicit DyadicQuadrature(const WaveletFamily& family, int levels = 0);

  int levels() const { return levels_; }
  const std::vector<double>& phi_samples() const { return phi_; }
  const std::vector<double>& psi_samples() const { return psi_; }

  // int phi(u) e^{-2 pi i eta u} du over [cut, 2p-1] (cut at a grid point).
  std::complex<double> phi_transform(double eta, double cut = 0.0) const;
  std::complex<double> psi_transform(double eta) const;

  // Riemann inner products of translated samples (orthonormality oracle).
  double overlap(int shift) const;  // int phi(x) phi(x - shift) dx
  // int_0^inf phi(v - s) phi(v - t) dv of the recentred generator
  // phi_c = phi(. + p - 1).
  double halfline_overlap_centered(int s, int t) const;

 private:
  std::complex<double> transform_at_level(const std::vector<double>& samples, int level,
                                          double eta, std::int64_t cut_index) const;

  WaveletFamily family_;
  int levels_;
  std::vector<double> phi_;
  std::vector<double> psi_;
};

// Oracle for interior cross-Gramian entries of the separable diag(2,2)
// families: exact piecewise integration for Haar, dyadic quadrature
// otherwise.
class GramianOracle {
 public:
  explicit GramianOracle(const WaveletFamily& family);

  std::complex<double> entry(const BasisIndex& idx, std::int64_t l1, std::int64_t l2,
                             const SamplingScheme& scheme) const;

 private:
  std::complex<double> factor(bool wavelet_axis, int j, std::int64_t m, double w) const;

  WaveletFamily family_;
  std::unique_ptr<DyadicQuadrature> quad_;  // null for Haar
};

}  // namespace f2w
