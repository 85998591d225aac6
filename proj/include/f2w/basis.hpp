#pragma once

#include <cstdint>
#include <vector>

#include "f2w/scaling_matrix.hpp"

namespace f2w {

enum class BasisKind : std::uint8_t { Scaling, Wavelet };

// One reconstruction element: a scaling translate phi_{0,m} or a wavelet
// psi^p_{j,m}. `position` is the 1-based index under the scale -> generator
// -> lexicographic-(m1,m2) ordering.
struct BasisIndex {
  BasisKind kind = BasisKind::Scaling;
  int generator = 0;  // 1..|det A|-1, wavelets only
  int scale = 0;      // j >= 0, wavelets only (scaling elements sit at scale 0)
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t position = 1;
};

// Number of elements up to scale J-1:
// N_J = (2a-1)^2 + (|det A|-1) sum_{j<J} (a(l1^(j)+l2^(j)+1)-1)(a(l3^(j)+l4^(j)+1)-1).
std::int64_t count_elements(const ScalingMatrix2& A, int a, int J);

// Scaling translates -a < m1,m2 < a first, then wavelets by scale, generator,
// and lexicographic (m1 outer, m2 inner).
std::vector<BasisIndex> order_basis(const ScalingMatrix2& A, int a, int J);

// Hash of an ordered basis (provenance metadata for assembled Gramians).
std::uint64_t ordering_hash(const std::vector<BasisIndex>& basis);

}  // namespace f2w
