#pragma once

#include <memory>

#include "f2w/basis.hpp"
#include "f2w/generator.hpp"
#include "f2w/sampling.hpp"
#include "f2w/solver.hpp"

namespace f2w {

// Matrix-free cross-Gramian for A = diag(2,2) and a separable family:
// inverse DWT synthesis to the scale-J coefficient rectangle followed by
// phi_hat-weighted trigonometric sums on the sample grid. Agrees with the
// dense assembly to solver tolerance; adjoint is the exact transpose of the
// forward pipeline.
class ImplicitGramian {
 public:
  ImplicitGramian(const SamplingScheme& scheme, const WaveletFamily& family, int J);

  Eigen::Index rows() const;
  Eigen::Index cols() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& alpha) const;
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& y) const;

  LinearOperator as_operator() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace f2w
