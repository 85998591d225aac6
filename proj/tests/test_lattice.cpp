#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "f2w/basis.hpp"
#include "f2w/expansion_bounds.hpp"
#include "f2w/mesh.hpp"
#include "f2w/scaling_matrix.hpp"

using namespace f2w;

namespace {

// Repeated-squaring oracle for matrix powers.
std::array<std::int64_t, 4> pow_oracle(std::array<std::int64_t, 4> a, int j) {
  std::array<std::int64_t, 4> r{1, 0, 0, 1};
  auto mul = [](const std::array<std::int64_t, 4>& x, const std::array<std::int64_t, 4>& y) {
    return std::array<std::int64_t, 4>{
        x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  };
  while (j > 0) {
    if (j & 1) r = mul(r, a);
    a = mul(a, a);
    j >>= 1;
  }
  return r;
}

// Direct enumeration of the index sets Omega_1 and Omega_2 up to scale J-1.
std::int64_t count_oracle(const ScalingMatrix2& A, int a, int J) {
  std::int64_t n = 0;
  for (std::int64_t m1 = -a + 1; m1 <= a - 1; ++m1)
    for (std::int64_t m2 = -a + 1; m2 <= a - 1; ++m2) ++n;
  for (int j = 0; j < J; ++j) {
    const MatrixPower& p = A.power(j);
    for (std::int64_t g = 1; g <= A.det() - 1; ++g)
      for (std::int64_t m1 = -a + 1; m1 < a * p.row1_sum(); ++m1)
        for (std::int64_t m2 = -a + 1; m2 < a * p.row2_sum(); ++m2) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("matrix powers") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  CHECK(D.power(3).l1 == 8);
  CHECK(D.power(3).l4 == 8);
  CHECK(D.power(3).l2 == 0);
  CHECK(D.power(3).det == 64);

  const ScalingMatrix2 S(2, 1, 0, 2);
  CHECK(S.power(0).l1 == 1);
  CHECK(S.power(0).l2 == 0);
  CHECK(S.power(0).det == 1);
  CHECK(S.power(2).l1 == 4);
  CHECK(S.power(2).l2 == 4);
  CHECK(S.power(2).l3 == 0);
  CHECK(S.power(2).l4 == 4);
  CHECK(S.power(2).det == 16);

  for (const auto& e : {std::array<std::int64_t, 4>{2, 0, 0, 2},
                        std::array<std::int64_t, 4>{2, 0, 0, 3},
                        std::array<std::int64_t, 4>{2, 1, 0, 2},
                        std::array<std::int64_t, 4>{1, 2, 3, 1}}) {
    const ScalingMatrix2 A(e[0], e[1], e[2], e[3]);
    for (int j = 0; j <= 8; ++j) {
      const auto o = pow_oracle(e, j);
      const MatrixPower& p = A.power(j);
      CHECK(p.l1 == o[0]);
      CHECK(p.l2 == o[1]);
      CHECK(p.l3 == o[2]);
      CHECK(p.l4 == o[3]);
      CHECK(p.det == o[0] * o[3] - o[1] * o[2]);
    }
    // Row-sum recurrences.
    for (int j = 1; j <= 8; ++j) {
      const MatrixPower& q = A.power(j);
      const MatrixPower& p = A.power(j - 1);
      CHECK(q.row1_sum() == p.l1 * (e[0] + e[1]) + p.l2 * (e[2] + e[3]));
      CHECK(q.row2_sum() == p.l3 * (e[0] + e[1]) + p.l4 * (e[2] + e[3]));
    }
  }
}

TEST_CASE("matrix validation and overflow") {
  CHECK_THROWS_AS(ScalingMatrix2(1, 0, 0, 2), std::invalid_argument);  // eigenvalue 1
  CHECK_THROWS_AS(ScalingMatrix2(-2, 0, 0, 2), std::invalid_argument);
  const ScalingMatrix2 B(3, 1, 1, 3);
  CHECK_THROWS_AS(B.power(64), OverflowError);
}

TEST_CASE("count_elements closed forms") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  // Table-1 ladders (table row J corresponds to scale J-1 here).
  const std::int64_t haar[] = {4, 16, 64, 256, 1024};
  for (int J = 1; J <= 5; ++J) CHECK(count_elements(D, 1, J) == haar[J - 1]);
  const std::int64_t db4[] = {100, 292, 880, 2908};
  for (int J = 1; J <= 4; ++J) CHECK(count_elements(D, 3, J) == db4[J - 1]);
  CHECK(count_elements(ScalingMatrix2(2, 1, 0, 3), 1, 0) == 1);

  // Dyadic closed form of the level count.
  for (int a : {1, 2, 3})
    for (int J = 0; J <= 5; ++J) {
      const std::int64_t tw = std::int64_t{1} << J;
      const std::int64_t expect = (tw * tw - 1) * a * a + 6 * a * (a - 1) * (tw - 1) +
                                  3 * J * (a - 1) * (a - 1) + (2 * a - 1) * (2 * a - 1);
      CHECK(count_elements(D, a, J) == expect);
    }

  for (const auto& e : {std::array<std::int64_t, 4>{2, 0, 0, 2},
                        std::array<std::int64_t, 4>{2, 0, 0, 3},
                        std::array<std::int64_t, 4>{2, 1, 0, 2}}) {
    const ScalingMatrix2 A(e[0], e[1], e[2], e[3]);
    for (int a = 1; a <= 3; ++a)
      for (int J = 0; J <= 4; ++J) CHECK(count_elements(A, a, J) == count_oracle(A, a, J));
  }
}

TEST_CASE("count growth constant") {
  // N_J <= C_a (row1 sum)(row2 sum) with a bounded empirical constant.
  for (const auto& e : {std::array<std::int64_t, 4>{2, 0, 0, 2},
                        std::array<std::int64_t, 4>{2, 1, 0, 2}}) {
    const ScalingMatrix2 A(e[0], e[1], e[2], e[3]);
    for (int a = 1; a <= 3; ++a) {
      double worst = 0.0;
      for (int J = 1; J <= 6; ++J) {
        const MatrixPower& p = A.power(J);
        const double ratio = static_cast<double>(count_elements(A, a, J)) /
                             (static_cast<double>(p.row1_sum()) * static_cast<double>(p.row2_sum()));
        worst = std::max(worst, ratio);
      }
      CHECK(worst < 16.0 * a * a);
    }
  }
}

TEST_CASE("basis ordering") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  const auto haar1 = order_basis(D, 1, 1);
  REQUIRE(haar1.size() == 4);
  CHECK(haar1[0].kind == BasisKind::Scaling);
  CHECK(haar1[0].m1 == 0);
  CHECK(haar1[0].m2 == 0);
  for (int g = 1; g <= 3; ++g) {
    CHECK(haar1[static_cast<std::size_t>(g)].kind == BasisKind::Wavelet);
    CHECK(haar1[static_cast<std::size_t>(g)].generator == g);
    CHECK(haar1[static_cast<std::size_t>(g)].scale == 0);
    CHECK(haar1[static_cast<std::size_t>(g)].m1 == 0);
  }

  const auto haar2 = order_basis(D, 1, 2);
  REQUIRE(haar2.size() == 16);
  // First four as above, then 12 scale-1 wavelets: 3 generators x 4 translates.
  for (std::size_t i = 4; i < 16; ++i) {
    CHECK(haar2[i].kind == BasisKind::Wavelet);
    CHECK(haar2[i].scale == 1);
  }
  CHECK(haar2[4].generator == 1);
  CHECK(haar2[8].generator == 2);
  CHECK(haar2[12].generator == 3);
  // Lexicographic (m1 outer, m2 inner) within a generator block.
  CHECK(haar2[4].m1 == 0);
  CHECK(haar2[4].m2 == 0);
  CHECK(haar2[5].m1 == 0);
  CHECK(haar2[5].m2 == 1);
  CHECK(haar2[6].m1 == 1);
  CHECK(haar2[6].m2 == 0);

  const auto single = order_basis(D, 1, 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].kind == BasisKind::Scaling);

  // Positions are a bijection onto 1..N_J.
  for (int a = 1; a <= 3; ++a) {
    const auto b = order_basis(D, a, 3);
    std::set<std::int64_t> pos;
    for (const auto& e : b) pos.insert(e.position);
    CHECK(pos.size() == b.size());
    CHECK(*pos.begin() == 1);
    CHECK(*pos.rbegin() == static_cast<std::int64_t>(b.size()));
  }
}

TEST_CASE("mesh norm") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  // Dyadic lattices: covering radius is half the step.
  CHECK(mesh_norm(D, 3, 0.5) == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
  CHECK(mesh_norm(D, 3, 0.5) <= 0.5 / 8.0);  // delta <= eps / 2^J
  CHECK(mesh_norm(D, 0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

  // Sheared lattice against the dense-grid oracle.
  const ScalingMatrix2 S(2, 1, 0, 2);
  const double exact = mesh_norm(S, 1, 0.25);
  const double grid = mesh_norm_grid(S, 1, 0.25, 2048);
  CHECK(std::abs(exact - grid) <= 0.25 / 2048.0);

  // Halving eps cannot increase the mesh norm, and it goes to zero.
  double prev = mesh_norm(D, 1, 1.0);
  for (int k = 1; k <= 6; ++k) {
    const double cur = mesh_norm(D, 1, std::pow(0.5, k));
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
  CHECK(prev <= 1.0 / 128.0);

  CHECK_THROWS_AS(mesh_norm_grid(D, 6, 1.0, 16), std::invalid_argument);
}

TEST_CASE("voronoi measures") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  // Unit integer grid: interior cells have measure 1 (bound tight).
  const auto unit = voronoi_measures(D, 0, 1.0, 3, 3);
  bool saw_unit = false;
  for (double m : unit) {
    CHECK(m <= 1.0 + 1e-12);
    if (std::abs(m - 1.0) < 1e-12) saw_unit = true;
  }
  CHECK(saw_unit);

  const auto v = voronoi_measures(D, 1, 0.5, 4, 4);
  double sum = 0.0;
  for (double m : v) {
    CHECK(m <= 0.25 * 0.25 + 1e-15);
    sum += m;
  }
  const MeshGeometry g = mesh_geometry(D, 1, 0.5, 4, 4);
  CHECK(std::abs(sum - g.region_measure) <= 1e-12);
}

TEST_CASE("sampling assumption") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  const double eps = 1.0 / (8.0 * std::numbers::pi);
  for (int J = 1; J <= 6; ++J) {
    const auto b = expansion_bounds(D, 1, J);
    const auto M = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(D.power(J).col1_sum()) / eps));
    const auto r = check_assumption(D, J, eps, M, M, b.max_abs());
    CHECK(r.holds);
  }

  // Degenerate delta = 0 holds strictly.
  const auto r0 = check_assumption_values(0.0, 4.0, 8);
  CHECK(r0.holds);
  CHECK(r0.rhs > 0.0);

  // eps = 1/2 at J = 4 violates the bound (frozen verdict).
  const auto b4 = expansion_bounds(D, 1, 4);
  const auto rbad = check_assumption(D, 4, 0.5, 32, 32, b4.max_abs());
  CHECK_FALSE(rbad.holds);
  CHECK(rbad.lhs == doctest::Approx(0.015625).epsilon(1e-12));
}

namespace {

using Poly4 = std::array<std::array<double, 2>, 4>;

// Positive-measure overlap of two convex quadrilaterals (separating axes).
bool quads_overlap(const Poly4& P, const Poly4& Q) {
  auto axes_of = [](const Poly4& poly, std::array<std::array<double, 2>, 2>& out) {
    const double e1x = poly[1][0] - poly[0][0], e1y = poly[1][1] - poly[0][1];
    const double e2x = poly[3][0] - poly[0][0], e2y = poly[3][1] - poly[0][1];
    out[0] = {-e1y, e1x};
    out[1] = {-e2y, e2x};
  };
  std::array<std::array<double, 2>, 4> axes;
  std::array<std::array<double, 2>, 2> a1, a2;
  axes_of(P, a1);
  axes_of(Q, a2);
  axes = {a1[0], a1[1], a2[0], a2[1]};
  for (const auto& ax : axes) {
    double pmin = 1e300, pmax = -1e300, qmin = 1e300, qmax = -1e300;
    for (const auto& v : P) {
      const double d = v[0] * ax[0] + v[1] * ax[1];
      pmin = std::min(pmin, d);
      pmax = std::max(pmax, d);
    }
    for (const auto& v : Q) {
      const double d = v[0] * ax[0] + v[1] * ax[1];
      qmin = std::min(qmin, d);
      qmax = std::max(qmax, d);
    }
    if (std::min(pmax, qmax) - std::max(pmin, qmin) <= 1e-9) return false;
  }
  return true;
}

// Union of the support rectangles: l ranges with
// A^{-J}(l + [0,a]^2) meeting the support of a basis element.
struct Rect {
  std::int64_t lo1 = 1, hi1 = -1, lo2 = 1, hi2 = -1;
  void grow(std::int64_t x, std::int64_t y) {
    if (hi1 < lo1) {
      lo1 = hi1 = x;
      lo2 = hi2 = y;
      return;
    }
    lo1 = std::min(lo1, x);
    hi1 = std::max(hi1, x);
    lo2 = std::min(lo2, y);
    hi2 = std::max(hi2, y);
  }
};

Rect support_rectangle(const ScalingMatrix2& A, int a, int J) {
  Rect r;
  const auto basis = order_basis(A, a, J);
  const MatrixPower& PJ = A.power(J);
  for (const auto& e : basis) {
    const int j = e.kind == BasisKind::Scaling ? 0 : e.scale;
    // Corners of A^{J-j}(m + [0,a]^2) via A^J A^{-j}; entries of A^{J-j}
    // are recovered from integer powers when J >= j.
    const MatrixPower& Pj = A.power(j);
    auto apply = [&](double x, double y) {
      // A^{J-j} = A^J (A^j)^{-1}.
      const double det = static_cast<double>(Pj.det);
      const double ix = (static_cast<double>(Pj.l4) * x - static_cast<double>(Pj.l2) * y) / det;
      const double iy = (-static_cast<double>(Pj.l3) * x + static_cast<double>(Pj.l1) * y) / det;
      return std::array<double, 2>{static_cast<double>(PJ.l1) * ix + static_cast<double>(PJ.l2) * iy,
                                   static_cast<double>(PJ.l3) * ix + static_cast<double>(PJ.l4) * iy};
    };
    Poly4 par;
    const double m1 = static_cast<double>(e.m1), m2 = static_cast<double>(e.m2);
    par[0] = apply(m1, m2);
    par[1] = apply(m1 + a, m2);
    par[2] = apply(m1 + a, m2 + a);
    par[3] = apply(m1, m2 + a);
    double blo1 = 1e300, bhi1 = -1e300, blo2 = 1e300, bhi2 = -1e300;
    for (const auto& c : par) {
      blo1 = std::min(blo1, c[0]);
      bhi1 = std::max(bhi1, c[0]);
      blo2 = std::min(blo2, c[1]);
      bhi2 = std::max(bhi2, c[1]);
    }
    for (std::int64_t l1 = static_cast<std::int64_t>(std::floor(blo1)) - a;
         l1 <= static_cast<std::int64_t>(std::ceil(bhi1)); ++l1)
      for (std::int64_t l2 = static_cast<std::int64_t>(std::floor(blo2)) - a;
           l2 <= static_cast<std::int64_t>(std::ceil(bhi2)); ++l2) {
        Poly4 box;
        box[0] = {static_cast<double>(l1), static_cast<double>(l2)};
        box[1] = {static_cast<double>(l1 + a), static_cast<double>(l2)};
        box[2] = {static_cast<double>(l1 + a), static_cast<double>(l2 + a)};
        box[3] = {static_cast<double>(l1), static_cast<double>(l2 + a)};
        if (quads_overlap(box, par)) r.grow(l1, l2);
      }
  }
  return r;
}

}  // namespace

TEST_CASE("expansion bounds") {
  const ScalingMatrix2 D = ScalingMatrix2::dyadic();
  // Dyadic case: our hull must cover the support rectangle and stay inside
  // the published dyadic bounds upper 2^J(3a-1), lower -a + 2^J(-a+1).
  for (int a = 1; a <= 3; ++a)
    for (int J = 1; J <= 4; ++J) {
      const auto b = expansion_bounds(D, a, J);
      const std::int64_t tw = std::int64_t{1} << J;
      CHECK(b.hi1 <= tw * (3 * a - 1));
      CHECK(b.lo1 >= -a + tw * (-a + 1));
      CHECK(b.hi1 == b.hi2);
      CHECK(b.lo1 == b.lo2);
    }

  // J = 0: only the scaling translates; the hull contains m = 0.
  const auto b0 = expansion_bounds(D, 1, 0);
  CHECK(b0.lo1 <= 0);
  CHECK(b0.hi1 >= 0);

  // Support-rectangle oracle containment, including non-diagonal A.
  for (const auto& e : {std::array<std::int64_t, 4>{2, 0, 0, 2},
                        std::array<std::int64_t, 4>{2, 0, 0, 3},
                        std::array<std::int64_t, 4>{2, 1, 0, 2}}) {
    const ScalingMatrix2 A(e[0], e[1], e[2], e[3]);
    for (int a = 1; a <= 3; ++a)
      for (int J = 0; J <= 3; ++J) {
        const auto b = expansion_bounds(A, a, J);
        const Rect r = support_rectangle(A, a, J);
        REQUIRE(r.hi1 >= r.lo1);
        CHECK(b.lo1 <= r.lo1);
        CHECK(b.hi1 >= r.hi1);
        CHECK(b.lo2 <= r.lo2);
        CHECK(b.hi2 >= r.hi2);
      }
  }
}
