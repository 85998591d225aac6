#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "f2w/quadrature.hpp"
#include "f2w/sampling.hpp"
#include "f2w/wavelet.hpp"

namespace f2w {

// Coefficient vector over the deep-scale restricted translates
// phi_{c,Jd,s}|_[0,1], s = lo .. lo+size-1.
struct DeepVec {
  std::int64_t lo = 0;
  Eigen::VectorXd c;
};

enum class Factor1DKind : std::uint8_t {
  LeftScaling,
  InteriorScaling,
  RightScaling,
  LeftWavelet,
  InteriorWavelet,
  RightWavelet
};

struct Element1D {
  Factor1DKind kind = Factor1DKind::InteriorScaling;
  int scale = 0;  // j
  int n = 0;      // 0 .. 2^j - 1
  DeepVec v;
};

// Wavelets on [0,1] after Cohen-Daubechies-Vial: p Gram-Schmidt-orthonormalized
// edge functions per boundary, interior translates between them, and wavelet
// spaces obtained by orthonormalizing V_{j+1} minus V_j at the coefficient
// level. Everything is represented over a fixed deep scale J_deep, where the
// restricted-translate Gram matrix is identity plus small corrections from
// the half-line overlap table.
class BoundaryFamily {
 public:
  BoundaryFamily(int p, int j_top);

  int p() const { return p_; }
  int j0() const { return j0_; }
  int j_top() const { return j_top_; }
  int j_deep() const { return j_deep_; }
  const WaveletFamily& base() const { return base_; }

  // n-th scaling / wavelet function at scale j (n = 0 .. 2^j - 1).
  const Element1D& scaling(int j, int n) const;
  const Element1D& wavelet(int j, int n) const;

  double inner(const DeepVec& u, const DeepVec& v) const;
  double norm(const DeepVec& u) const;

  // Edge-function coefficient rows over the unit-scale translates
  // s = -p+1 .. p-1 (left) before orthonormalization: binom(p-1-s, k).
  Eigen::MatrixXd edge_coefficients() const;

  // Orthonormalized boundary rows over the same translates.
  const Eigen::MatrixXd& left_boundary_coefficients() const { return left_ortho_; }
  const Eigen::MatrixXd& right_boundary_coefficients() const { return right_ortho_; }

  // F(w) = int_0^1 e(x) e^{-2 pi i w x} dx from the deep expansion and
  // phi_hat / cut-transform evaluations.
  std::complex<double> fourier_factor(const Element1D& e, double w) const;

  // Pointwise evaluation (linear interpolation between exact dyadic samples).
  double evaluate(const Element1D& e, double x) const;

  // int_0^1 e(x) f(x) dx by cascade-grid quadrature.
  double factor_inner(const Element1D& e, const std::function<double(double)>& f) const;

  // Reflected-generator transform: phi_sharp(x) = phi_c(1 - x).
  std::complex<double> phi_hat_sharp(double xi) const;
  std::complex<double> phi_hat_centered(double xi) const;

  // Plain-text export of the boundary coefficient tables.
  void export_tables(std::ostream& os) const;

  const DyadicQuadrature& quadrature() const { return quad_; }

 private:
  DeepVec refine_to_deep(const DeepVec& unit_scale, int from_scale) const;
  DeepVec refine_once(const DeepVec& v, int from_scale) const;
  void trim(DeepVec& v, int at_scale) const;
  void build_scale(int j);
  void orthonormalize(std::vector<DeepVec>& vecs, const char* what);
  std::complex<double> deep_translate_transform(std::int64_t s, double w) const;

  int p_;
  int j0_;
  int j_top_;
  int j_deep_;
  WaveletFamily base_;
  DyadicQuadrature quad_;
  std::shared_ptr<FrequencyEvaluator> eval_;
  Eigen::MatrixXd halfline_;           // T(s,t), s,t = -p+1 .. p-2
  Eigen::MatrixXd left_ortho_, right_ortho_;
  std::vector<std::vector<Element1D>> scaling_;  // [j][n]
  std::vector<std::vector<Element1D>> wavelet_;  // [j][n], j < j_top
  std::vector<double> phic_samples_;             // cascade samples of phi_c
  // Cut transforms repeat across elements; cache by (cut, frequency bits).
  mutable std::map<std::pair<std::int64_t, std::int64_t>, std::complex<double>> cut_cache_;
};

// One 2D tensor element of the boundary reconstruction space.
struct BoundaryIndex {
  bool is_scaling = true;  // scale-J0 scaling tensor vs wavelet tensor
  int k = 0;               // 1: phi x psi, 2: psi x phi, 3: psi x psi
  int scale = 0;
  int n1 = 0, n2 = 0;
  std::int64_t position = 1;
};

struct BoundaryBasis2D {
  int p = 0;
  int J = 0;
  std::vector<BoundaryIndex> elements;  // size 2^{2J}
};

// N_J = 2^{2J} elements: scale-J0 scaling tensors first, then per scale the
// three tensor kinds, lexicographic (n1 outer, n2 inner).
BoundaryBasis2D enumerate_boundary_basis(const BoundaryFamily& family, int J);

// Factor pair of a 2D element.
std::pair<const Element1D*, const Element1D*> boundary_factors(const BoundaryFamily& family,
                                                               const BoundaryIndex& idx);

// <element, s_l> = eps F1(eps l1) F2(eps l2) for the boundary scheme on [0,1]^2.
std::complex<double> boundary_gramian_entry(const BoundaryFamily& family,
                                            const BoundaryIndex& idx, std::int64_t l1,
                                            std::int64_t l2, const SamplingScheme& scheme);

// Dense assembly through per-axis Fourier tables.
Eigen::MatrixXcd assemble_boundary(const BoundaryFamily& family, const BoundaryBasis2D& basis,
                                   const SamplingScheme& scheme);

}  // namespace f2w
