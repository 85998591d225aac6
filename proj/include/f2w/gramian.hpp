#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "f2w/basis.hpp"
#include "f2w/generator.hpp"
#include "f2w/sampling.hpp"
#include "f2w/scaling_matrix.hpp"

namespace f2w {

// Dense cross-Gramian U with u_{ij} = <r_j, s_i>; rows follow the sample
// flattening of the scheme, columns the basis ordering.
struct CrossGramian {
  Eigen::MatrixXcd U;
  double epsilon = 0.0;
  int a = 0;
  int J = 0;
  std::int64_t detA = 0;
  std::uint64_t ordering = 0;
};

// Single entry: eps |det A|^{-j/2} e^{-2 pi i <eps (A^{-j})^T l, m>} ghat(eps (A^{-j})^T l).
std::complex<double> interior_entry(const BasisIndex& idx, std::int64_t l1, std::int64_t l2,
                                    const SamplingScheme& scheme, const ScalingMatrix2& A,
                                    const Generator2D& gen);

struct AssembleOptions {
  std::size_t memory_cap_bytes = std::size_t{4} << 30;
  int threads = 0;  // 0 = hardware concurrency
};

// Row-parallel dense assembly; entries are computed independently, so the
// result is bitwise identical for any thread count.
CrossGramian assemble(const SamplingScheme& scheme, const std::vector<BasisIndex>& basis,
                      const ScalingMatrix2& A, const Generator2D& gen, int a, int J,
                      const AssembleOptions& opts = {});

void dump_gramian(std::ostream& os, const CrossGramian& g);
CrossGramian load_gramian(std::istream& is);

}  // namespace f2w
