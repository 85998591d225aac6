#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "f2w/quadrature.hpp"
#include "f2w/rate.hpp"
#include "f2w/wavelet.hpp"

using namespace f2w;

TEST_CASE("daubechies filters") {
  const auto haar = daubechies_filter(1);
  REQUIRE(haar.size() == 2);
  CHECK(haar[0] == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-15));
  CHECK(haar[1] == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-15));

  for (int p = 1; p <= 10; ++p) {
    const auto h = daubechies_filter(p);
    REQUIRE(h.size() == static_cast<std::size_t>(2 * p));
    double sum = 0.0;
    for (double v : h) sum += v;
    CHECK(std::abs(sum - std::numbers::sqrt2) < 1e-12);
    for (int k = 0; k < p; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i + 2 * static_cast<std::size_t>(k) < h.size(); ++i)
        s += h[i] * h[i + 2 * static_cast<std::size_t>(k)];
      CHECK(std::abs(s - (k == 0 ? 1.0 : 0.0)) < 1e-12);
    }
    for (int q = 0; q < p; ++q) {
      double s = 0.0, scale = 1.0;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const double term =
            ((i % 2 == 0) ? 1.0 : -1.0) * (q == 0 ? 1.0 : std::pow(static_cast<double>(i), q)) * h[i];
        s += term;
        scale = std::max(scale, std::abs(term));
      }
      CHECK(std::abs(s) < 1e-10 * scale);
    }
  }
  CHECK_THROWS_AS(daubechies_filter(0), std::invalid_argument);
  CHECK_THROWS_AS(daubechies_filter(11), std::invalid_argument);
}

TEST_CASE("refinement symbol") {
  const FrequencyEvaluator haar{WaveletFamily(1)};
  CHECK(std::abs(haar.refinement_symbol(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(haar.refinement_symbol(0.5)) < 1e-15);
  const auto q = haar.refinement_symbol(0.25);
  CHECK(std::abs(q - std::complex<double>(0.5, -0.5)) < 1e-15);

  for (int p : {1, 2, 3, 4, 6}) {
    const FrequencyEvaluator ev{WaveletFamily(p)};
    double worst = 0.0;
    for (int i = 0; i <= 128; ++i) {
      const double xi = static_cast<double>(i) / 128.0;
      worst = std::max(worst, std::abs(std::norm(ev.refinement_symbol(xi)) +
                                       std::norm(ev.refinement_symbol(xi + 0.5)) - 1.0));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("scaling transform agrees with Haar closed form") {
  const FrequencyEvaluator ev{WaveletFamily(1)};
  CHECK(std::abs(ev.phi_hat(0.0) - 1.0) < 1e-14);
  double worst = 0.0;
  for (int i = 0; i <= 1024; ++i) {
    const double xi = -64.0 + 128.0 * static_cast<double>(i) / 1024.0;
    worst = std::max(worst, std::abs(ev.phi_hat(xi) - haar_phi_hat(xi)));
  }
  CHECK(worst < 1e-10);
  // Closed form at xi = 1/2: e^{-i pi/2} sinc(1/2) = -2i/pi.
  CHECK(std::abs(ev.phi_hat(0.5) - std::complex<double>(0.0, -2.0 / std::numbers::pi)) < 1e-12);
}

TEST_CASE("wavelet transform") {
  const FrequencyEvaluator ev{WaveletFamily(1)};
  for (int p : {1, 2, 3}) {
    const FrequencyEvaluator e{WaveletFamily(p)};
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(e.wavelet_hat_2d(k, 0.0, 0.0)) < 1e-12);
  }
  double worst = 0.0;
  for (int i = 0; i <= 512; ++i) {
    const double xi = -16.0 + 32.0 * static_cast<double>(i) / 512.0;
    worst = std::max(worst, std::abs(ev.psi_hat(xi) - haar_psi_hat(xi)));
  }
  CHECK(worst < 1e-10);
  // Tensor symmetry between the mixed generators.
  for (int p : {1, 2}) {
    const FrequencyEvaluator e{WaveletFamily(p)};
    const double x1 = 0.37, x2 = -1.42;
    CHECK(std::abs(e.wavelet_hat_2d(1, x1, x2) - e.wavelet_hat_2d(2, x2, x1)) < 1e-14);
  }
}

TEST_CASE("frequency decay") {
  for (int p : {1, 2, 3}) {
    const FrequencyEvaluator ev{WaveletFamily(p)};
    double sup = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = std::pow(10.0, 4.0 * static_cast<double>(i) / 400.0);
      sup = std::max(sup, std::abs(ev.phi_hat(x)) * (1.0 + x));
    }
    CHECK(sup < 10.0);
    MESSAGE("p=", p, " sup |phi_hat|(1+|x|) = ", sup);
  }
}

TEST_CASE("partial frequency sums and tail mass") {
  const FrequencyEvaluator ev{WaveletFamily(1)};
  // Partial sums increase monotonically toward 1.
  for (double xi : {0.0, 0.21, 0.5}) {
    double prev = 0.0;
    for (int S = 1; S <= 8; ++S) {
      double g = 0.0;
      for (int s = -S + 1; s <= S - 1; ++s) g += std::norm(ev.phi_hat(xi + s));
      CHECK(g >= prev - 1e-15);
      prev = g;
    }
    CHECK(prev <= 1.0 + 1e-12);
    CHECK(prev > 0.9);
  }

  // Large theta: the center term alone clears the mass bound.
  CHECK(tail_mass_S(ev, 1e6) == 1);
  // Frozen fixture at 1/theta = 0.45^2.
  CHECK(tail_mass_S(ev, 1.0 / 0.2025) == 2);
  // Monotone in theta.
  int prevS = 1;
  for (double theta : {100.0, 10.0, 5.0, 3.0, 2.0}) {
    const int S = tail_mass_S(ev, theta);
    CHECK(S >= prevS);
    prevS = S;
  }
}

TEST_CASE("cascade evaluation") {
  const WaveletFamily haar(1);
  const auto t = cascade_evaluate(haar, 4);
  for (std::size_t i = 0; i < 16; ++i) CHECK(t.values[i] == doctest::Approx(1.0));
  CHECK(t.values[16] == doctest::Approx(0.0));

  for (int p : {2, 3}) {
    const WaveletFamily fam(p);
    const auto c = cascade_evaluate(fam, 8);
    const std::int64_t scale = 1 << 8;
    // Partition of unity at grid points.
    double worst = 0.0;
    for (std::int64_t k = 0; k < scale; ++k) {
      double s = 0.0;
      for (int n = 0; n <= 2 * p - 2; ++n) {
        const std::int64_t idx = k + static_cast<std::int64_t>(n) * scale;
        if (idx < static_cast<std::int64_t>(c.values.size())) s += c.values[static_cast<std::size_t>(idx)];
      }
      worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst < 1e-8);
  }

  // Orthonormality of integer translates through Riemann sums.
  const DyadicQuadrature q(WaveletFamily(2));
  CHECK(std::abs(q.overlap(0) - 1.0) < 1e-6);
  CHECK(std::abs(q.overlap(1)) < 1e-6);
  CHECK(std::abs(q.overlap(2)) < 1e-6);

  CHECK_THROWS_AS(cascade_evaluate(WaveletFamily(2), 8, 1e-10, 3), std::runtime_error);
}

TEST_CASE("dyadic quadrature transforms") {
  // Haar through the generic quadrature: the box jump at 1 leaves an O(h)
  // endpoint term, so only the 1e-6 oracle tolerance is promised here (Haar
  // production paths use exact piecewise integration instead).
  const DyadicQuadrature q(WaveletFamily(1), 12);
  for (double eta : {0.0, 0.3, 1.7, -2.4}) {
    CHECK(std::abs(q.phi_transform(eta) - haar_phi_hat(eta)) < 1e-6);
    CHECK(std::abs(q.psi_transform(eta) - haar_psi_hat(eta)) < 1e-6);
  }
  // db4: quadrature against the refinement-product evaluator.
  const DyadicQuadrature q2(WaveletFamily(2));
  const FrequencyEvaluator ev{WaveletFamily(2)};
  double worst = 0.0;
  for (double eta : {0.0, 0.4, 1.1, -1.9, 3.3}) {
    worst = std::max(worst, std::abs(q2.phi_transform(eta) - ev.phi_hat(eta)));
    worst = std::max(worst, std::abs(q2.psi_transform(eta) - ev.psi_hat(eta)));
  }
  CHECK(worst < 1e-6);
  MESSAGE("db4 quadrature vs product evaluator: ", worst);
}
