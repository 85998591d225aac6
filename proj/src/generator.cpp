#include "f2w/generator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace f2w {

std::complex<double> SyntheticGenerator2D::scaling_hat(double x1, double x2) const {
  return {std::exp(-std::numbers::pi * sigma_ * sigma_ * (x1 * x1 + x2 * x2)), 0.0};
}

std::complex<double> SyntheticGenerator2D::wavelet_hat(int k, double x1, double x2) const {
  if (k < 1 || k > count_)
    throw std::invalid_argument("SyntheticGenerator2D: generator index out of range");
  const double a = -2.0 * std::numbers::pi * (k * x1 + x2);
  const std::complex<double> mod = 1.0 - std::complex<double>(std::cos(a), std::sin(a));
  return mod * scaling_hat(x1, x2);
}

}  // namespace f2w
