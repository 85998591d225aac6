#include "f2w/gramian.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace f2w {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::complex<double> interior_entry(const BasisIndex& idx, std::int64_t l1, std::int64_t l2,
                                    const SamplingScheme& scheme, const ScalingMatrix2& A,
                                    const Generator2D& gen) {
  const int j = idx.kind == BasisKind::Scaling ? 0 : idx.scale;
  const auto w = A.inv_transpose_apply(j, l1, l2);
  const double x1 = scheme.epsilon * w[0];
  const double x2 = scheme.epsilon * w[1];
  const double det_j = std::abs(static_cast<double>(A.power(j).det));
  const double amp = scheme.epsilon / std::sqrt(det_j);
  const double phase_arg = x1 * static_cast<double>(idx.m1) + x2 * static_cast<double>(idx.m2);
  const double a = -kTwoPi * (phase_arg - std::floor(phase_arg));
  const std::complex<double> phase(std::cos(a), std::sin(a));
  const std::complex<double> ghat = idx.kind == BasisKind::Scaling
                                        ? gen.scaling_hat(x1, x2)
                                        : gen.wavelet_hat(idx.generator, x1, x2);
  return amp * phase * ghat;
}

CrossGramian assemble(const SamplingScheme& scheme, const std::vector<BasisIndex>& basis,
                      const ScalingMatrix2& A, const Generator2D& gen, int a, int J,
                      const AssembleOptions& opts) {
  const std::int64_t rows = scheme.total();
  const std::int64_t cols = static_cast<std::int64_t>(basis.size());
  const std::size_t bytes = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
                            sizeof(std::complex<double>);
  if (bytes > opts.memory_cap_bytes) {
    std::ostringstream msg;
    msg << "assemble: dense Gramian needs " << bytes << " bytes, cap is "
        << opts.memory_cap_bytes;
    throw std::runtime_error(msg.str());
  }

  CrossGramian g;
  g.U.resize(rows, cols);
  g.epsilon = scheme.epsilon;
  g.a = a;
  g.J = J;
  g.detA = A.det();
  g.ordering = ordering_hash(basis);

  auto fill_rows = [&](std::int64_t r0, std::int64_t r1) {
    for (std::int64_t r = r0; r < r1; ++r) {
      const auto [l1, l2] = scheme.unflatten(r);
      for (std::int64_t c = 0; c < cols; ++c)
        g.U(r, c) = interior_entry(basis[static_cast<std::size_t>(c)], l1, l2, scheme, A, gen);
    }
  };

  int nthreads = opts.threads > 0 ? opts.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  nthreads = static_cast<int>(std::min<std::int64_t>(nthreads, rows));
  if (nthreads <= 1) {
    fill_rows(0, rows);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    const std::int64_t chunk = (rows + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const std::int64_t r0 = t * chunk;
      const std::int64_t r1 = std::min(rows, r0 + chunk);
      if (r0 >= r1) break;
      pool.emplace_back(fill_rows, r0, r1);
    }
    for (auto& th : pool) th.join();
  }
  return g;
}

void dump_gramian(std::ostream& os, const CrossGramian& g) {
  os << "gramian v1 " << g.U.rows() << " " << g.U.cols() << " " << g.epsilon << " " << g.a
     << " " << g.J << " " << g.detA << "\n";
  char buf[64];
  for (Eigen::Index r = 0; r < g.U.rows(); ++r)
    for (Eigen::Index c = 0; c < g.U.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", g.U(r, c).real(), g.U(r, c).imag());
      os << buf;
    }
}

CrossGramian load_gramian(std::istream& is) {
  std::string tag, ver;
  CrossGramian g;
  Eigen::Index rows = 0, cols = 0;
  is >> tag >> ver >> rows >> cols >> g.epsilon >> g.a >> g.J >> g.detA;
  if (tag != "gramian" || ver != "v1" || !is)
    throw std::runtime_error("load_gramian: bad header");
  g.U.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      double re = 0.0, im = 0.0;
      is >> re >> im;
      g.U(r, c) = {re, im};
    }
  if (!is) throw std::runtime_error("load_gramian: truncated payload");
  return g;
}

}  // namespace f2w
