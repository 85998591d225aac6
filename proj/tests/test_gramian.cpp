#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <sstream>

#include "f2w/basis.hpp"
#include "f2w/gramian.hpp"
#include "f2w/implicit_op.hpp"
#include "f2w/quadrature.hpp"
#include "f2w/rng.hpp"
#include "f2w/sampling.hpp"
#include "f2w/solver.hpp"

using namespace f2w;

namespace {

std::shared_ptr<SeparableGenerator2D> dyadic_generator(int p) {
  return std::make_shared<SeparableGenerator2D>(
      std::make_shared<FrequencyEvaluator>(WaveletFamily(p)));
}

}  // namespace

TEST_CASE("measure") {
  // Constant 1 on [0,1]^2 at eps = 1: only the zero frequency survives.
  const auto scheme = SamplingScheme::boundary(1.0, 3, 3);
  const auto m = measure(
      [](double w1, double w2) {
        auto box = [](double w) -> std::complex<double> {
          if (w == 0.0) return {1.0, 0.0};
          const double a = -std::numbers::pi * w;
          return std::complex<double>(std::cos(a), std::sin(a)) * std::sin(std::numbers::pi * w) /
                 (std::numbers::pi * w);
        };
        return box(w1) * box(w2);
      },
      scheme);
  for (std::int64_t l1 = -3; l1 <= 3; ++l1)
    for (std::int64_t l2 = -3; l2 <= 3; ++l2) {
      const auto v = m(scheme.flat_index(l1, l2));
      if (l1 == 0 && l2 == 0)
        CHECK(std::abs(v - 1.0) < 1e-14);
      else
        CHECK(std::abs(v) < 1e-14);
    }

  // f1, f2 closed forms against adaptive quadrature.
  for (double w1 : {0.0, 1.0, -2.0, 5.0})
    for (double w2 : {0.0, 1.0, 3.0}) {
      const auto q1x = adaptive_simpson_cplx(
          [&](double x) {
            const double a = -2.0 * std::numbers::pi * w1 * x;
            return f1_factor_x(x) * std::complex<double>(std::cos(a), std::sin(a));
          },
          0.0, 1.0, 1e-12);
      const auto q1y = adaptive_simpson_cplx(
          [&](double y) {
            const double a = -2.0 * std::numbers::pi * w2 * y;
            return f1_factor_y(y) * std::complex<double>(std::cos(a), std::sin(a));
          },
          0.0, 1.0, 1e-12);
      CHECK(std::abs(f1_hat(w1, w2) - q1x * q1y) < 1e-10);
      const auto q2x = adaptive_simpson_cplx(
          [&](double x) {
            const double a = -2.0 * std::numbers::pi * w1 * x;
            return f2_factor_x(x) * std::complex<double>(std::cos(a), std::sin(a));
          },
          0.0, 1.0, 1e-12);
      const auto q2y = adaptive_simpson_cplx(
          [&](double y) {
            const double a = -2.0 * std::numbers::pi * w2 * y;
            return f2_factor_y(y) * std::complex<double>(std::cos(a), std::sin(a));
          },
          0.0, 1.0, 1e-12);
      CHECK(std::abs(f2_hat(w1, w2) - q2x * q2y) < 1e-10);
    }

  // L2 norms against quadrature.
  const double n1 =
      std::sqrt(adaptive_simpson([](double x) { return f1_factor_x(x) * f1_factor_x(x); }, 0, 1) *
                adaptive_simpson([](double y) { return f1_factor_y(y) * f1_factor_y(y); }, 0, 1));
  CHECK(f1_l2_norm() == doctest::Approx(n1).epsilon(1e-12));
  const double n2 =
      std::sqrt(adaptive_simpson([](double x) { return f2_factor_x(x) * f2_factor_x(x); }, 0, 1) *
                adaptive_simpson([](double y) { return f2_factor_y(y) * f2_factor_y(y); }, 0, 1));
  CHECK(f2_l2_norm() == doctest::Approx(n2).epsilon(1e-12));
}

TEST_CASE("interior entries: Haar closed forms") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  const auto gen = dyadic_generator(1);
  const auto scheme = SamplingScheme::interior(0.5, 4, 4, 0.0, 1.0);

  BasisIndex phi00{BasisKind::Scaling, 0, 0, 0, 0, 1};
  CHECK(std::abs(interior_entry(phi00, 0, 0, scheme, D, *gen) - 0.5) < 1e-14);

  // Random entries match the exact piecewise Haar oracle at 1e-10.
  const GramianOracle oracle{WaveletFamily(1)};
  const auto basis = order_basis(D, 1, 3);
  Rng rng(7);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto& idx = basis[rng.integer(basis.size())];
    const auto l1 = static_cast<std::int64_t>(rng.integer(9)) - 4;
    const auto l2 = static_cast<std::int64_t>(rng.integer(9)) - 4;
    worst = std::max(worst, std::abs(interior_entry(idx, l1, l2, scheme, D, *gen) -
                                     oracle.entry(idx, l1, l2, scheme)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("interior entries: Daubechies-4 vs quadrature oracle") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  const auto gen = dyadic_generator(2);
  const auto scheme = SamplingScheme::interior(1.0 / 7.0, 8, 8, 2.0, 5.0);
  const GramianOracle oracle{WaveletFamily(2)};
  const auto basis = order_basis(D, 3, 2);
  Rng rng(11);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto& idx = basis[rng.integer(basis.size())];
    const auto l1 = static_cast<std::int64_t>(rng.integer(17)) - 8;
    const auto l2 = static_cast<std::int64_t>(rng.integer(17)) - 8;
    worst = std::max(worst, std::abs(interior_entry(idx, l1, l2, scheme, D, *gen) -
                                     oracle.entry(idx, l1, l2, scheme)));
  }
  CHECK(worst < 1e-6);
  MESSAGE("db4 oracle gap: ", worst);

  // The spec's sample entry: psi^3 at scale 1, translate (0,0), l = (3,-2).
  BasisIndex idx{BasisKind::Wavelet, 3, 1, 0, 0, 1};
  const auto a_val = interior_entry(idx, 3, -2, scheme, D, *gen);
  const auto o_val = oracle.entry(idx, 3, -2, scheme);
  CHECK(std::abs(a_val - o_val) < 1e-6);
}

TEST_CASE("assembly") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  const auto gen = dyadic_generator(1);
  const auto scheme = SamplingScheme::interior(0.5, 2, 2, 0.0, 1.0);
  const auto basis = order_basis(D, 1, 1);
  const auto g = assemble(scheme, basis, D, *gen, 1, 1);
  CHECK(g.U.rows() == 25);
  CHECK(g.U.cols() == 4);
  CHECK(singular_extremes(g.U).sigma_min >= 0.45);

  // Column norms stay within 1 + 1e-8.
  for (Eigen::Index c = 0; c < g.U.cols(); ++c) CHECK(g.U.col(c).norm() <= 1.0 + 1e-8);

  // Deterministic across thread counts.
  AssembleOptions one;
  one.threads = 1;
  AssembleOptions four;
  four.threads = 4;
  const auto g1 = assemble(scheme, basis, D, *gen, 1, 1, one);
  const auto g4 = assemble(scheme, basis, D, *gen, 1, 1, four);
  CHECK((g1.U - g4.U).norm() == 0.0);

  // Memory cap refusal reports the required bytes.
  AssembleOptions tiny;
  tiny.memory_cap_bytes = 16;
  CHECK_THROWS_WITH_AS(assemble(scheme, basis, D, *gen, 1, 1, tiny),
                       doctest::Contains("bytes"), std::runtime_error);

  // Single-column norm grows toward 1 under sample growth; for Haar the
  // squared deficit decays like 1/M, so it must shrink along each doubling.
  const auto single = order_basis(D, 1, 0);
  double prev = 0.0;
  double prev_deficit = 1.0;
  for (std::int64_t M : {2, 4, 8, 16, 32, 64}) {
    const auto sc = SamplingScheme::interior(0.5, M, M, 0.0, 1.0);
    const auto gu = assemble(sc, single, D, *gen, 1, 0);
    const double n = gu.U.col(0).norm();
    CHECK(n >= prev - 1e-14);
    const double deficit = 1.0 - n * n;
    CHECK(deficit <= 0.75 * prev_deficit + 1e-12);
    prev = n;
    prev_deficit = deficit;
  }
  CHECK(prev > 0.99);
  CHECK(prev <= 1.0 + 1e-10);
}

TEST_CASE("synthetic generator plumbing for non-diagonal A") {
  const ScalingMatrix2 S(2, 1, 0, 2);
  SyntheticGenerator2D gen(static_cast<int>(S.det() - 1));
  CHECK(gen.generator_count() == 3);
  CHECK(std::abs(gen.scaling_hat(0.0, 0.0) - 1.0) < 1e-15);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(gen.wavelet_hat(k, 0.0, 0.0)) < 1e-15);
  const auto scheme = SamplingScheme::interior(0.25, 3, 3, 0.0, 3.0);
  const auto basis = order_basis(S, 1, 1);
  const auto g = assemble(scheme, basis, S, gen, 1, 1);
  CHECK(g.U.rows() == 49);
  CHECK(g.U.cols() == static_cast<Eigen::Index>(basis.size()));
  CHECK(g.U.allFinite());
}

TEST_CASE("gramian dump round-trip") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  const auto gen = dyadic_generator(1);
  const auto scheme = SamplingScheme::interior(0.5, 1, 2, 0.0, 1.0);
  const auto basis = order_basis(D, 1, 1);
  const auto g = assemble(scheme, basis, D, *gen, 1, 1);
  std::stringstream ss;
  dump_gramian(ss, g);
  std::string header;
  std::getline(ss, header);
  CHECK(header.substr(0, 10) == "gramian v1");
  ss.seekg(0);
  const auto g2 = load_gramian(ss);
  CHECK(g2.U.rows() == g.U.rows());
  CHECK((g2.U - g.U).norm() < 1e-14);
  CHECK(g2.epsilon == g.epsilon);
}

TEST_CASE("implicit operator") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  for (int p : {1, 2}) {
    const auto gen = dyadic_generator(p);
    const int a = 2 * p - 1;
    const int J = p == 1 ? 3 : 2;
    const double eps = p == 1 ? 0.5 : 1.0 / 7.0;
    const auto scheme = SamplingScheme::interior(eps, 6, 7, a - 1.0, 2.0 * a - 1.0);
    const auto basis = order_basis(D, a, J);
    const auto g = assemble(scheme, basis, D, *gen, a, J);
    const ImplicitGramian op(scheme, WaveletFamily(p), J);
    REQUIRE(op.rows() == g.U.rows());
    REQUIRE(op.cols() == g.U.cols());

    // Unit vector reproduces the dense column.
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(op.cols());
    e1(0) = 1.0;
    CHECK((op.apply(e1) - g.U.col(0)).norm() < 1e-8);

    Rng rng(3);
    Eigen::VectorXcd alpha(op.cols());
    for (Eigen::Index i = 0; i < alpha.size(); ++i) alpha(i) = rng.cnormal();
    CHECK((op.apply(alpha) - g.U * alpha).norm() / alpha.norm() < 1e-8);

    Eigen::VectorXcd y(op.rows());
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.cnormal();
    const std::complex<double> lhs = op.apply(alpha).dot(y);
    const std::complex<double> rhs = alpha.dot(op.apply_adjoint(y));
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
  }
}
