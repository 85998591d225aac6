#include "f2w/scaling_matrix.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace f2w {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > std::numeric_limits<std::int64_t>::max() ||
      r < std::numeric_limits<std::int64_t>::min())
    throw OverflowError("scaling-matrix power overflows int64");
  return static_cast<std::int64_t>(r);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  __int128 r = static_cast<__int128>(a) + b;
  if (r > std::numeric_limits<std::int64_t>::max() ||
      r < std::numeric_limits<std::int64_t>::min())
    throw OverflowError("scaling-matrix power overflows int64");
  return static_cast<std::int64_t>(r);
}

}  // namespace

ScalingMatrix2::ScalingMatrix2(std::int64_t l1, std::int64_t l2, std::int64_t l3,
                               std::int64_t l4)
    : e_{l1, l2, l3, l4} {
  if (l1 < 0 || l2 < 0 || l3 < 0 || l4 < 0)
    throw std::invalid_argument("scaling matrix entries must be non-negative");
  det_ = checked_add(checked_mul(l1, l4), -checked_mul(l2, l3));
  // Eigenvalues of [[l1,l2],[l3,l4]]: roots of x^2 - tr x + det.
  const double tr = static_cast<double>(l1) + static_cast<double>(l4);
  const double dt = static_cast<double>(det_);
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * dt, 0.0));
  const std::complex<double> ev1 = 0.5 * (tr + disc);
  const std::complex<double> ev2 = 0.5 * (tr - disc);
  if (!(std::abs(ev1) > 1.0 && std::abs(ev2) > 1.0))
    throw std::invalid_argument("scaling matrix needs both eigenvalues of modulus > 1");
  powers_.push_back(MatrixPower{});
}

const MatrixPower& ScalingMatrix2::power(int j) const {
  if (j < 0) throw std::invalid_argument("matrix power needs j >= 0");
  while (static_cast<int>(powers_.size()) <= j) {
    const MatrixPower& p = powers_.back();
    MatrixPower q;
    q.l1 = checked_add(checked_mul(p.l1, e_[0]), checked_mul(p.l2, e_[2]));
    q.l2 = checked_add(checked_mul(p.l1, e_[1]), checked_mul(p.l2, e_[3]));
    q.l3 = checked_add(checked_mul(p.l3, e_[0]), checked_mul(p.l4, e_[2]));
    q.l4 = checked_add(checked_mul(p.l3, e_[1]), checked_mul(p.l4, e_[3]));
    q.det = checked_mul(p.det, det_);
    powers_.push_back(q);
  }
  return powers_[static_cast<std::size_t>(j)];
}

std::array<double, 2> ScalingMatrix2::inv_transpose_apply(int j, std::int64_t lx,
                                                          std::int64_t ly) const {
  const MatrixPower& p = power(j);
  // (A^j)^{-1} = adj/det with adj = [[l4,-l2],[-l3,l1]]; transpose swaps the
  // off-diagonal entries.
  const double d = static_cast<double>(p.det);
  const double x = (static_cast<double>(p.l4) * lx - static_cast<double>(p.l3) * ly) / d;
  const double y = (-static_cast<double>(p.l2) * lx + static_cast<double>(p.l1) * ly) / d;
  return {x, y};
}

}  // namespace f2w
