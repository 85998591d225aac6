#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace f2w {

// Entries of A^j together with det(A^j). Powers of 2x2 integer scaling
// matrices; all arithmetic is overflow-checked, never wrapping.
struct MatrixPower {
  std::int64_t l1 = 1, l2 = 0, l3 = 0, l4 = 1;
  std::int64_t det = 1;

  std::int64_t row1_sum() const { return l1 + l2; }
  std::int64_t row2_sum() const { return l3 + l4; }
  std::int64_t col1_sum() const { return l1 + l3; }
  std::int64_t col2_sum() const { return l2 + l4; }
};

class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// 2x2 dilation matrix with non-negative integer entries and both
// eigenvalues of modulus > 1. Immutable after construction.
class ScalingMatrix2 {
 public:
  ScalingMatrix2(std::int64_t l1, std::int64_t l2, std::int64_t l3, std::int64_t l4);

  static ScalingMatrix2 dyadic() { return ScalingMatrix2(2, 0, 0, 2); }

  std::int64_t l1() const { return e_[0]; }
  std::int64_t l2() const { return e_[1]; }
  std::int64_t l3() const { return e_[2]; }
  std::int64_t l4() const { return e_[3]; }
  std::int64_t det() const { return det_; }
  bool is_diagonal() const { return e_[1] == 0 && e_[2] == 0; }

  // Entries of A^j, j >= 0. Cached; throws OverflowError once entries
  // leave the int64 range.
  const MatrixPower& power(int j) const;

  // (A^{-j})^T applied to an integer vector, as doubles:
  // (A^{-j})^T l = adj(A^j)^T l / det(A^j).
  std::array<double, 2> inv_transpose_apply(int j, std::int64_t lx, std::int64_t ly) const;

 private:
  std::array<std::int64_t, 4> e_;
  std::int64_t det_;
  mutable std::vector<MatrixPower> powers_;
};

}  // namespace f2w
