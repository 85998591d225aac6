#pragma once

#include <complex>
#include <vector>

namespace f2w {

// Orthonormal Daubechies refinement filter with p vanishing moments,
// normalized to sum sqrt(2), support [0, 2p-1], extremal (minimal) phase.
// Coefficients come from spectral factorization at construction, not from
// transcribed tables; the orthogonality and moment invariants are checked.
std::vector<double> daubechies_filter(int p);

class WaveletFamily {
 public:
  explicit WaveletFamily(int p);
  WaveletFamily(int p, std::vector<double> filter);  // custom filter, same checks

  int p() const { return p_; }
  int support_width() const { return 2 * p_ - 1; }  // a
  const std::vector<double>& filter() const { return h_; }

  // Mirror filter g_n = (-1)^n h_{2p-1-n}; the wavelet has support [0, 2p-1].
  std::vector<double> mirror_filter() const;

 private:
  int p_;
  std::vector<double> h_;
};

// Fourier transforms of the scaling function and wavelet via the truncated
// refinement product. Truncation depth adapts so the tail bound stays below
// tau_phi. Pure and shareable across threads.
class FrequencyEvaluator {
 public:
  explicit FrequencyEvaluator(WaveletFamily family, int k_trunc = 40,
                              double tau_phi = 1e-12);

  const WaveletFamily& family() const { return family_; }

  // m0(xi) = 2^{-1/2} sum h_n e^{-2 pi i n xi}, 1-periodic.
  std::complex<double> refinement_symbol(double xi) const;

  // Symbol of the mirror filter; phi_hat/psi_hat wiring: psi_hat(xi) =
  // m_g(xi/2) phi_hat(xi/2) with m_g(xi) = -e^{-2 pi i (2p-1) xi} conj(m0(xi+1/2)).
  std::complex<double> mirror_symbol(double xi) const;

  std::complex<double> phi_hat(double xi) const;
  std::complex<double> psi_hat(double xi) const;

  std::complex<double> phi_hat_2d(double x1, double x2) const;
  // Tensor generators: k=1 phi x psi, k=2 psi x phi, k=3 psi x psi.
  std::complex<double> wavelet_hat_2d(int k, double x1, double x2) const;

  int k_trunc() const { return k_trunc_; }
  double tau_phi() const { return tau_phi_; }

 private:
  WaveletFamily family_;
  int k_trunc_;
  double tau_phi_;
  double symbol_lipschitz_;  // bound on |m0'|
};

// Closed forms for the Haar family, used as independent references.
std::complex<double> haar_phi_hat(double xi);
std::complex<double> haar_psi_hat(double xi);

// Samples of phi on the dyadic grid 2^{-L} Z intersected with [0, 2p-1],
// from fixed-point iteration of the refinement operator on that grid.
struct CascadeTable {
  int levels = 0;                // L
  std::vector<double> values;    // values[n] = phi(n 2^{-L}), n = 0..(2p-1)2^L
  int iterations = 0;

  double step() const { return 1.0 / static_cast<double>(1 << levels); }
};

CascadeTable cascade_evaluate(const WaveletFamily& family, int levels,
                              double tol = 1e-10, int max_iterations = 2000);

}  // namespace f2w
