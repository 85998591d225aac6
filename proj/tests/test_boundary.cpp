#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "f2w/boundary.hpp"
#include "f2w/quadrature.hpp"
#include "f2w/rng.hpp"
#include "f2w/wavelet.hpp"

using namespace f2w;

namespace {

// Shared families; construction is the expensive part.
const BoundaryFamily& fam1() {
  static BoundaryFamily f(1, 3);
  return f;
}
const BoundaryFamily& fam2() {
  static BoundaryFamily f(2, 3);
  return f;
}
const BoundaryFamily& fam3() {
  static BoundaryFamily f(3, 4);
  return f;
}

// Riemann quadrature of a 1D factor against e^{-2 pi i w x} from pointwise
// samples; independent of the translate-expansion transform path.
std::complex<double> sampled_transform(const BoundaryFamily& f, const Element1D& e, double w,
                                       int grid = 1 << 15) {
  std::complex<double> acc(0.0, 0.0);
  const double h = 1.0 / static_cast<double>(grid);
  for (int k = 0; k < grid; ++k) {
    const double x = (static_cast<double>(k) + 0.5) * h;
    const double a = -2.0 * std::numbers::pi * w * x;
    acc += f.evaluate(e, x) * std::complex<double>(std::cos(a), std::sin(a));
  }
  return acc * h;
}

}  // namespace

TEST_CASE("edge function tables") {
  // p = 1: a single edge row, the box itself.
  const auto e1 = fam1().edge_coefficients();
  REQUIRE(e1.rows() == 1);
  REQUIRE(e1.cols() == 1);
  CHECK(e1(0, 0) == 1.0);

  // p = 2: binomial rows (1,1,1) and (0,1,2) over translates s = 1,0,-1.
  const auto e2 = fam2().edge_coefficients();
  REQUIRE(e2.rows() == 2);
  REQUIRE(e2.cols() == 3);
  // Columns are indexed by s = -1, 0, 1; binom(1-s, k).
  CHECK(e2(0, 0) == 1.0);
  CHECK(e2(0, 1) == 1.0);
  CHECK(e2(0, 2) == 1.0);
  CHECK(e2(1, 0) == 2.0);
  CHECK(e2(1, 1) == 1.0);
  CHECK(e2(1, 2) == 0.0);
}

TEST_CASE("boundary scaling functions are orthonormal") {
  for (const BoundaryFamily* f : {&fam1(), &fam2(), &fam3()}) {
    const int j = f->j0();
    const int n = 1 << j;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const double g = f->inner(f->scaling(j, i).v, f->scaling(j, k).v);
        worst = std::max(worst, std::abs(g - (i == k ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-6);

    // Edge functions orthogonal to every interior translate (index-disjoint
    // supports make this exact up to the overlap-table quadrature).
    for (int k = 0; k < f->p(); ++k)
      for (int ni = f->p(); ni < n - f->p(); ++ni)
        CHECK(std::abs(f->inner(f->scaling(j, k).v, f->scaling(j, ni).v)) < 1e-6);
  }

  // Reflection symmetry: the right Gram equals the left Gram.
  const auto& f = fam3();
  const int j = f.j0();
  const int n = 1 << j;
  for (int i = 0; i < f.p(); ++i)
    for (int k = 0; k < f.p(); ++k) {
      const double gl = f.inner(f.scaling(j, i).v, f.scaling(j, k).v);
      const double gr = f.inner(f.scaling(j, n - 1 - i).v, f.scaling(j, n - 1 - k).v);
      CHECK(gl == doctest::Approx(gr).epsilon(1e-9));
    }
}

TEST_CASE("basis counting and preconditions") {
  CHECK(enumerate_boundary_basis(fam1(), 1).elements.size() == 4);
  CHECK(enumerate_boundary_basis(fam2(), 3).elements.size() == 64);  // 16 + 3*16
  {
    BoundaryFamily f(3, 3);
    const auto b = enumerate_boundary_basis(f, 3);
    CHECK(b.elements.size() == 64);
    for (const auto& e : b.elements) CHECK(e.is_scaling);
  }
  CHECK_THROWS_AS(enumerate_boundary_basis(fam3(), 2), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryFamily(2, 1), std::invalid_argument);
  // Scale above the built family is not expandable.
  CHECK_THROWS_AS(fam2().scaling(fam2().j_deep() + 1, 0), std::invalid_argument);

  // Omega-1 / Omega-2 block sizes.
  const auto b = enumerate_boundary_basis(fam2(), 3);
  std::size_t scaling_count = 0, wavelet_count = 0;
  for (const auto& e : b.elements) (e.is_scaling ? scaling_count : wavelet_count)++;
  CHECK(scaling_count == 16);  // 2^{2 J0}
  CHECK(wavelet_count == 48);  // 3 (16 + ... ) up to J-1
}

TEST_CASE("MRA nesting") {
  for (const BoundaryFamily* f : {&fam2(), &fam3()}) {
    const int j = f->j0();
    double worst = 0.0;
    for (int n = 0; n < (1 << j); ++n) {
      DeepVec v = f->scaling(j, n).v;
      // Subtract the projection onto span of the scale-(j+1) functions.
      double residual_sq = f->inner(v, v);
      for (int m = 0; m < (1 << (j + 1)); ++m) {
        const double c = f->inner(v, f->scaling(j + 1, m).v);
        residual_sq -= c * c;
      }
      worst = std::max(worst, std::sqrt(std::max(0.0, residual_sq)));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("full 2D Gram at p=2, J=J0") {
  const auto& f = fam2();
  const auto b = enumerate_boundary_basis(f, f.j0());
  double worst = 0.0;
  for (std::size_t i = 0; i < b.elements.size(); ++i)
    for (std::size_t k = 0; k < b.elements.size(); ++k) {
      const auto [a1, a2] = boundary_factors(f, b.elements[i]);
      const auto [c1, c2] = boundary_factors(f, b.elements[k]);
      const double g = f.inner(a1->v, c1->v) * f.inner(a2->v, c2->v);
      worst = std::max(worst, std::abs(g - (i == k ? 1.0 : 0.0)));
    }
  CHECK(worst <= 1e-5);
}

TEST_CASE("Haar boundary equals the interior formulas") {
  const auto& f = fam1();
  double worst = 0.0;
  for (int j = 1; j <= 2; ++j)
    for (int n = 0; n < (1 << j); ++n)
      for (double w : {0.0, 0.5, 1.0, 2.5, -3.5}) {
        const double scale = static_cast<double>(1 << j);
        const std::complex<double> closed =
            std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * w * n / scale)) *
            haar_phi_hat(w / scale) / std::sqrt(scale);
        worst = std::max(worst, std::abs(f.fourier_factor(f.scaling(j, n), w) - closed));
      }
  CHECK(worst < 1e-12);

  // Wavelet factors match the Haar closed form up to the deterministic sign.
  const int j = 1;
  double sign = f.evaluate(f.wavelet(j, 0), 0.1) > 0.0 ? 1.0 : -1.0;
  for (double w : {0.3, 1.7}) {
    const double scale = 2.0;
    const std::complex<double> closed = haar_psi_hat(w / scale) / std::sqrt(scale);
    CHECK(std::abs(f.fourier_factor(f.wavelet(j, 0), w) - sign * closed) < 1e-12);
  }
}

TEST_CASE("interior 2D elements reduce to the single-translate product form") {
  const auto& f = fam3();
  const FrequencyEvaluator ev{WaveletFamily(3)};
  const int j = f.j0();
  const double scale = static_cast<double>(1 << j);
  double worst = 0.0;
  // Interior scaling factor: translate expansion must reduce to the closed
  // single-translate formula (recentred convention shifts by p-1).
  for (int n = f.p(); n < (1 << j) - f.p(); ++n)
    for (double w : {0.0, 0.7, 2.2}) {
      const std::complex<double> recentre =
          std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * (f.p() - 1) * w / scale));
      const std::complex<double> closed =
          std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * w * n / scale)) *
          recentre * ev.phi_hat(w / scale) / std::sqrt(scale);
      worst = std::max(worst, std::abs(f.fourier_factor(f.scaling(j, n), w) - closed));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("boundary transforms against sampled quadrature") {
  const auto& f = fam3();
  const int j = f.j0();
  double worst = 0.0;
  for (int n : {0, 1, f.p(), (1 << j) - 1})
    for (double w : {0.0, 1.0, -2.0}) {
      const auto a = f.fourier_factor(f.scaling(j, n), w);
      const auto q = sampled_transform(f, f.scaling(j, n), w);
      worst = std::max(worst, std::abs(a - q));
    }
  for (int n : {0, (1 << j) - 1})
    for (double w : {0.5, 2.0}) {
      const auto a = f.fourier_factor(f.wavelet(j, n), w);
      const auto q = sampled_transform(f, f.wavelet(j, n), w);
      worst = std::max(worst, std::abs(a - q));
    }
  CHECK(worst < 1e-5);
  MESSAGE("boundary transform vs sampled quadrature: ", worst);

  // Left-edge moment: the zero-frequency entry is eps times the element mean.
  const auto basis = enumerate_boundary_basis(f, j);
  const auto scheme = SamplingScheme::boundary(1.0, 4, 4);
  const auto& e0 = basis.elements[0];  // (n1, n2) = (0, 0): left x left
  const auto [e1, e2] = boundary_factors(f, e0);
  const double m1 = f.factor_inner(*e1, [](double) { return 1.0; });
  const double m2 = f.factor_inner(*e2, [](double) { return 1.0; });
  const auto entry = boundary_gramian_entry(f, e0, 0, 0, scheme);
  CHECK(std::abs(entry - m1 * m2) < 1e-6);
}

TEST_CASE("assembled boundary Gramian matches per-entry evaluation") {
  const auto& f = fam2();
  const auto basis = enumerate_boundary_basis(f, f.j0() + 1);
  const auto scheme = SamplingScheme::boundary(1.0, 5, 3);
  const auto U = assemble_boundary(f, basis, scheme);
  REQUIRE(U.rows() == scheme.total());
  REQUIRE(U.cols() == static_cast<Eigen::Index>(basis.elements.size()));
  Rng rng(13);
  double worst = 0.0;
  for (int t = 0; t < 25; ++t) {
    const auto c = rng.integer(basis.elements.size());
    const auto l1 = static_cast<std::int64_t>(rng.integer(11)) - 5;
    const auto l2 = static_cast<std::int64_t>(rng.integer(7)) - 3;
    const auto direct = boundary_gramian_entry(f, basis.elements[c], l1, l2, scheme);
    worst = std::max(worst,
                     std::abs(U(scheme.flat_index(l1, l2), static_cast<Eigen::Index>(c)) - direct));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("reflected generator transform and decay") {
  const auto& f = fam3();
  double sup = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double xi = std::pow(10.0, 3.0 * static_cast<double>(i) / 300.0);
    CHECK(std::abs(f.phi_hat_sharp(xi)) == doctest::Approx(std::abs(f.phi_hat_centered(xi))).epsilon(1e-12));
    sup = std::max(sup, std::abs(f.phi_hat_sharp(xi)) * (1.0 + xi) *
                            std::abs(f.phi_hat_sharp(0.3 * xi)) * (1.0 + 0.3 * xi));
  }
  CHECK(sup < 100.0);
  MESSAGE("2D reflected-transform decay constant: ", sup);
}

TEST_CASE("boundary table export") {
  std::stringstream ss;
  fam2().export_tables(ss);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "boundary-family v1 p 2 J0 2");
  int left = 0, right = 0;
  while (std::getline(ss, line)) {
    if (line.rfind("left", 0) == 0) ++left;
    if (line.rfind("right", 0) == 0) ++right;
  }
  CHECK(left == 2 * 3);  // p rows x (2p-1) translates
  CHECK(right == 2 * 3);

  // Exported rows rebuild orthonormal functions: Gram of the coefficient
  // rows under the half-line overlap metric is the identity.
  const auto rows = fam2().left_boundary_coefficients();
  REQUIRE(rows.rows() == 2);
  const DyadicQuadrature q{WaveletFamily(2)};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      double g = 0.0;
      for (int s = -1; s <= 1; ++s)
        for (int t = -1; t <= 1; ++t)
          g += rows(i, s + 1) * rows(k, t + 1) * q.halfline_overlap_centered(s, t);
      CHECK(g == doctest::Approx(i == k ? 1.0 : 0.0).epsilon(1e-6).scale(1.0));
    }
}
