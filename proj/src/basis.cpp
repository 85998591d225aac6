#include "f2w/basis.hpp"

#include <stdexcept>

namespace f2w {

std::int64_t count_elements(const ScalingMatrix2& A, int a, int J) {
  if (a < 1) throw std::invalid_argument("count_elements: a >= 1 required");
  if (J < 0) throw std::invalid_argument("count_elements: J >= 0 required");
  const std::int64_t scaling = (2 * static_cast<std::int64_t>(a) - 1) *
                               (2 * static_cast<std::int64_t>(a) - 1);
  std::int64_t total = scaling;
  const std::int64_t gens = A.det() - 1;
  for (int j = 0; j < J; ++j) {
    const MatrixPower& p = A.power(j);
    const std::int64_t w1 = a * (p.row1_sum() + 1) - 1;
    const std::int64_t w2 = a * (p.row2_sum() + 1) - 1;
    total += gens * w1 * w2;
  }
  return total;
}

std::vector<BasisIndex> order_basis(const ScalingMatrix2& A, int a, int J) {
  std::vector<BasisIndex> out;
  out.reserve(static_cast<std::size_t>(count_elements(A, a, J)));
  std::int64_t pos = 1;
  for (std::int64_t m1 = -a + 1; m1 <= a - 1; ++m1)
    for (std::int64_t m2 = -a + 1; m2 <= a - 1; ++m2)
      out.push_back({BasisKind::Scaling, 0, 0, m1, m2, pos++});
  const int gens = static_cast<int>(A.det() - 1);
  for (int j = 0; j < J; ++j) {
    const MatrixPower& p = A.power(j);
    const std::int64_t hi1 = a * p.row1_sum();  // m1 < a(l1^(j)+l2^(j))
    const std::int64_t hi2 = a * p.row2_sum();
    for (int g = 1; g <= gens; ++g)
      for (std::int64_t m1 = -a + 1; m1 <= hi1 - 1; ++m1)
        for (std::int64_t m2 = -a + 1; m2 <= hi2 - 1; ++m2)
          out.push_back({BasisKind::Wavelet, g, j, m1, m2, pos++});
  }
  return out;
}

std::uint64_t ordering_hash(const std::vector<BasisIndex>& basis) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const BasisIndex& b : basis) {
    mix(static_cast<std::uint64_t>(b.kind));
    mix(static_cast<std::uint64_t>(b.generator));
    mix(static_cast<std::uint64_t>(b.scale));
    mix(static_cast<std::uint64_t>(b.m1));
    mix(static_cast<std::uint64_t>(b.m2));
  }
  return h;
}

}  // namespace f2w
