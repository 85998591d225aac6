#include "f2w/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace f2w {

namespace {

std::pair<std::int64_t, std::int64_t> step_to_M(std::int64_t s,
                                                std::pair<std::int64_t, std::int64_t> aspect) {
  const std::int64_t amax = std::max(aspect.first, aspect.second);
  auto side = [&](std::int64_t a) -> std::int64_t {
    return (s * a + amax - 1) / amax;  // ceil(s a / amax)
  };
  return {std::max<std::int64_t>(1, side(aspect.first)),
          std::max<std::int64_t>(1, side(aspect.second))};
}

}  // namespace

RateCurve stable_sampling_rate(const std::vector<std::int64_t>& ladder,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& aspects,
                               const SigmaFn& sigma, double theta_inv, double epsilon,
                               const RateSearchOptions& opts) {
  if (ladder.size() != aspects.size())
    throw std::invalid_argument("stable_sampling_rate: ladder/aspect size mismatch");
  if (!(theta_inv > 0.0 && theta_inv < 1.0))
    throw std::invalid_argument("stable_sampling_rate: need 0 < 1/theta < 1");

  RateCurve curve;
  curve.theta_inv = theta_inv;
  curve.epsilon = epsilon;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const std::int64_t N = ladder[i];
    const auto aspect = aspects[i];
    auto eval = [&](std::int64_t s) {
      const auto [m1, m2] = step_to_M(s, aspect);
      return std::make_tuple(m1, m2, sigma(N, m1, m2));
    };

    // Bracket: double the scalar step until the angle clears 1/theta.
    std::int64_t lo = 0, hi = 1;
    double sig_hi = 0.0;
    std::int64_t m1 = 0, m2 = 0;
    for (;;) {
      std::tie(m1, m2, sig_hi) = eval(hi);
      {
        std::ostringstream t;
        t << "N=" << N << " probe S=" << hi << " M=(" << m1 << "," << m2
          << ") sigma=" << sig_hi;
        curve.trace.push_back(t.str());
      }
      if (sig_hi >= theta_inv) break;
      lo = hi;
      hi *= 2;
      if (hi > opts.scalar_cap)
        throw RateSearchError("stable_sampling_rate: scalar cap exceeded", m1, m2, sig_hi);
    }
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      const auto [mm1, mm2, s] = eval(mid);
      {
        std::ostringstream t;
        t << "N=" << N << " bisect S=" << mid << " M=(" << mm1 << "," << mm2
          << ") sigma=" << s;
        curve.trace.push_back(t.str());
      }
      if (s >= theta_inv)
        hi = mid;
      else
        lo = mid;
    }
    auto [M1, M2, sig] = eval(hi);

    if (opts.refine_axes) {
      // Shrink each axis from the accepted block while the angle holds.
      while (M1 > 1) {
        const double s = sigma(N, M1 - 1, M2);
        if (s < theta_inv) break;
        --M1;
        sig = s;
      }
      while (M2 > 1) {
        const double s = sigma(N, M1, M2 - 1);
        if (s < theta_inv) break;
        --M2;
        sig = s;
      }
    }

    RatePoint pt;
    pt.N = N;
    pt.M1 = M1;
    pt.M2 = M2;
    pt.total = (2 * M1 + 1) * (2 * M2 + 1);
    pt.sigma_min = sig;
    curve.points.push_back(pt);
  }
  return curve;
}

void write_rate_csv(std::ostream& os, const RateCurve& curve) {
  os << "N,M_total,M1,M2,sigma_min,theta_inv,epsilon\n";
  char buf[192];
  for (const RatePoint& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(p.N), static_cast<long long>(p.total),
                  static_cast<long long>(p.M1), static_cast<long long>(p.M2), p.sigma_min,
                  curve.theta_inv, curve.epsilon);
    os << buf;
  }
}

int tail_mass_S(const FrequencyEvaluator& eval, double theta, int grid_points, int S_cap) {
  if (!(theta > 1.0)) throw std::invalid_argument("tail_mass_S: theta > 1 required");
  // phi_hat is separable in 2D, so the square-window sum factorizes and only
  // the 1D profile g_S(xi) = sum_{|s|<S} |phi_hat(xi+s)|^2 is needed.
  std::vector<double> xi(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i)
    xi[static_cast<std::size_t>(i)] = -0.5 + static_cast<double>(i) / (grid_points - 1);
  std::vector<double> g(static_cast<std::size_t>(grid_points), 0.0);
  for (int S = 1; S <= S_cap; ++S) {
    // Add the new shell |s| = S-1.
    for (int i = 0; i < grid_points; ++i) {
      const double x = xi[static_cast<std::size_t>(i)];
      if (S == 1) {
        g[static_cast<std::size_t>(i)] += std::norm(eval.phi_hat(x));
      } else {
        g[static_cast<std::size_t>(i)] += std::norm(eval.phi_hat(x + (S - 1))) +
                                          std::norm(eval.phi_hat(x - (S - 1)));
      }
    }
    const double gmin = *std::min_element(g.begin(), g.end());
    if (gmin * gmin >= 1.0 / theta) return S;
  }
  throw std::runtime_error("tail_mass_S: cap exceeded");
}

EpsilonTransfer epsilon_transfer(double gamma, double eps1, double eps2, std::int64_t M1,
                                 std::int64_t M2, double theta_gamma, double C_gamma) {
  if (!(gamma > 1.0) || !(theta_gamma > 1.0))
    throw std::invalid_argument("epsilon_transfer: gamma, theta > 1 required");
  if (!(C_gamma > 1.0))
    throw std::invalid_argument("epsilon_transfer: C(gamma) > 1 required");
  const double pi4 = std::pow(std::numbers::pi, 4);
  const double inside = 1.0 / (theta_gamma * theta_gamma) -
                        16.0 / (pi4 * (C_gamma - 1.0) * (C_gamma - 1.0));
  if (inside < 0.0)
    throw std::invalid_argument("epsilon_transfer: constraint violated (negative radicand)");
  const double lhs = std::sqrt(inside) - std::sqrt(1.0 - 1.0 / theta_gamma);
  EpsilonTransfer out;
  out.margin = lhs - 1.0 / gamma;
  if (out.margin <= 0.0)
    throw std::invalid_argument("epsilon_transfer: constraint violated (margin <= 0)");
  out.K1 = static_cast<std::int64_t>(std::ceil(C_gamma * static_cast<double>(M1) * eps1 / eps2));
  out.K2 = static_cast<std::int64_t>(std::ceil(C_gamma * static_cast<double>(M2) * eps1 / eps2));
  return out;
}

}  // namespace f2w
