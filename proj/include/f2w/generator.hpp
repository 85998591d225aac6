#pragma once

#include <complex>
#include <memory>

#include "f2w/wavelet.hpp"

namespace f2w {

// Frequency-side view of a 2D generator set: one scaling function and
// |det A| - 1 wavelets.
class Generator2D {
 public:
  virtual ~Generator2D() = default;
  virtual int generator_count() const = 0;
  virtual std::complex<double> scaling_hat(double x1, double x2) const = 0;
  virtual std::complex<double> wavelet_hat(int k, double x1, double x2) const = 0;
};

// Separable tensor generators for A = diag(2,2): phi x phi and the three
// tensor wavelets of a 1D family.
class SeparableGenerator2D : public Generator2D {
 public:
  explicit SeparableGenerator2D(std::shared_ptr<const FrequencyEvaluator> eval)
      : eval_(std::move(eval)) {}

  int generator_count() const override { return 3; }
  std::complex<double> scaling_hat(double x1, double x2) const override {
    return eval_->phi_hat_2d(x1, x2);
  }
  std::complex<double> wavelet_hat(int k, double x1, double x2) const override {
    return eval_->wavelet_hat_2d(k, x1, x2);
  }
  const FrequencyEvaluator& evaluator() const { return *eval_; }

 private:
  std::shared_ptr<const FrequencyEvaluator> eval_;
};

// Gaussian-windowed stand-in used to exercise the (A^{-J})^T plumbing for
// non-diagonal A. Not an MRA; unit at the origin; wavelet branches vanish
// at zero.
class SyntheticGenerator2D : public Generator2D {
 public:
  explicit SyntheticGenerator2D(int generator_count, double sigma = 0.5)
      : count_(generator_count), sigma_(sigma) {}

  int generator_count() const override { return count_; }
  std::complex<double> scaling_hat(double x1, double x2) const override;
  std::complex<double> wavelet_hat(int k, double x1, double x2) const override;

 private:
  int count_;
  double sigma_;
};

}  // namespace f2w
