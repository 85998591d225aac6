#pragma once

#include <cstdint>

#include "f2w/scaling_matrix.hpp"

namespace f2w {

// Scale-J translate index rectangle covering the expansion of every element
// of V_0^(a) + W_0^(a) + ... + W_{J-1}^(a) in scaling functions phi_{J,l}.
struct ExpansionBounds {
  std::int64_t lo1 = 0, hi1 = 0;
  std::int64_t lo2 = 0, hi2 = 0;

  std::int64_t max_abs() const;
};

// Hull of the scaling-part support bounds and the per-scale wavelet bounds
// (both determinant signs), rounded outward exactly in rational arithmetic.
ExpansionBounds expansion_bounds(const ScalingMatrix2& A, int a, int J);

}  // namespace f2w
