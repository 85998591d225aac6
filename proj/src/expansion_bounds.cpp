#include "f2w/expansion_bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace f2w {

namespace {

using i128 = __int128;

// floor(num/den) for den > 0.
std::int64_t floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
  return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den) != 0 && ((num < 0) == (den < 0))) ++q;
  return static_cast<std::int64_t>(q);
}

// Smallest integer strictly above num/den.
std::int64_t strict_above(i128 num, i128 den) { return floor_div(num, den) + 1; }
// Largest integer strictly below num/den.
std::int64_t strict_below(i128 num, i128 den) { return ceil_div(num, den) - 1; }

}  // namespace

std::int64_t ExpansionBounds::max_abs() const {
  return std::max(std::max(std::abs(lo1), std::abs(hi1)),
                  std::max(std::abs(lo2), std::abs(hi2)));
}

ExpansionBounds expansion_bounds(const ScalingMatrix2& A, int a, int J) {
  if (a < 1 || J < 0) throw std::invalid_argument("expansion_bounds: a >= 1, J >= 0");
  const MatrixPower& PJ = A.power(J);
  const i128 a_ = a;

  ExpansionBounds b;
  // Scaling part: closed support bounds of <phi_{0,m}, phi_{J,l}>.
  b.lo1 = static_cast<std::int64_t>(-a_ + (-a_ + 1) * PJ.row1_sum());
  b.hi1 = static_cast<std::int64_t>((2 * a_ - 1) * PJ.row1_sum());
  b.lo2 = static_cast<std::int64_t>(-a_ + (-a_ + 1) * PJ.row2_sum());
  b.hi2 = static_cast<std::int64_t>((2 * a_ - 1) * PJ.row2_sum());

  for (int j = 0; j < J; ++j) {
    const MatrixPower& pj = A.power(j);
    const i128 det = pj.det;
    if (det == 0) throw std::invalid_argument("expansion_bounds: singular power");
    const i128 l1 = pj.l1, l2 = pj.l2, l3 = pj.l3, l4 = pj.l4;
    const i128 X = (-a_ + 1) * l4 + l2 * (a_ * (l3 + l4) - 1);
    const i128 Y = (-a_ + 1) * l1 + (a_ * (l1 + l2) - 1) * l3;
    const i128 U1 = a_ * (l4 - l2) + (a_ * (l1 + l2) - 1) * l4 + (a_ - 1) * l2;
    const i128 U2 = a_ * (l1 - l3) + (a_ * (l3 + l4) - 1) * l1 + (a_ - 1) * l3;

    // Row-1 coefficients for l1, row-2 for l2.
    const i128 rowJ[2][2] = {{PJ.l1, PJ.l2}, {PJ.l3, PJ.l4}};
    const i128 sgn = det > 0 ? 1 : -1;
    const i128 den = sgn * det;
    for (int axis = 0; axis < 2; ++axis) {
      const i128 cA = rowJ[axis][0], cB = rowJ[axis][1];
      // exprL = -a - cA X/det + cB Y/det, exprU = cA U1/det + cB U2/det,
      // rewritten over the positive denominator |det|.
      const i128 exprL_num = sgn * (-a_ * det - cA * X + cB * Y);
      const i128 exprU_num = sgn * (cA * U1 + cB * U2);
      std::int64_t lo, hi;
      if (pj.det > 0) {
        lo = strict_above(exprL_num, den);
        hi = strict_below(exprU_num, den);
      } else {
        // Negative determinant flips the inequality chain.
        lo = strict_above(exprU_num, den);
        hi = strict_below(exprL_num, den);
      }
      if (axis == 0) {
        b.lo1 = std::min(b.lo1, lo);
        b.hi1 = std::max(b.hi1, hi);
      } else {
        b.lo2 = std::min(b.lo2, lo);
        b.hi2 = std::max(b.hi2, hi);
      }
    }
  }
  return b;
}

}  // namespace f2w
