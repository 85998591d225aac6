#include "f2w/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace f2w {

namespace {

struct Basis2 {
  // Lattice eps (A^{-J})^T Z^2; contains eps Z^2 as a sublattice because
  // (A^J)^T maps Z^2 into Z^2.
  double b11, b12, b21, b22;  // columns are the generators
  double epsilon;
};

Basis2 node_basis(const ScalingMatrix2& A, int J, double epsilon) {
  const MatrixPower& p = A.power(J);
  const double d = static_cast<double>(p.det);
  // (A^{-J})^T = adj(A^J)^T / det = [[l4,-l3],[-l2,l1]] / det.
  Basis2 b;
  b.b11 = epsilon * static_cast<double>(p.l4) / d;
  b.b21 = -epsilon * static_cast<double>(p.l2) / d;
  b.b12 = -epsilon * static_cast<double>(p.l3) / d;
  b.b22 = epsilon * static_cast<double>(p.l1) / d;
  b.epsilon = epsilon;
  return b;
}

// All lattice points with coordinates in [-pad, eps+pad]^2.
std::vector<std::pair<double, double>> lattice_points(const Basis2& b, double pad) {
  const double det = b.b11 * b.b22 - b.b12 * b.b21;
  std::vector<std::pair<double, double>> pts;
  // Solve B k in box by scanning the integer preimage of the padded box.
  const double lo = -pad, hi = b.epsilon + pad;
  auto pre = [&](double x, double y) {
    const double k1 = (b.b22 * x - b.b12 * y) / det;
    const double k2 = (-b.b21 * x + b.b11 * y) / det;
    return std::pair<double, double>(k1, k2);
  };
  double k1min = 1e300, k1max = -1e300, k2min = 1e300, k2max = -1e300;
  for (double x : {lo, hi})
    for (double y : {lo, hi}) {
      auto [k1, k2] = pre(x, y);
      k1min = std::min(k1min, k1);
      k1max = std::max(k1max, k1);
      k2min = std::min(k2min, k2);
      k2max = std::max(k2max, k2);
    }
  for (std::int64_t k1 = static_cast<std::int64_t>(std::floor(k1min)) - 1;
       k1 <= static_cast<std::int64_t>(std::ceil(k1max)) + 1; ++k1)
    for (std::int64_t k2 = static_cast<std::int64_t>(std::floor(k2min)) - 1;
         k2 <= static_cast<std::int64_t>(std::ceil(k2max)) + 1; ++k2) {
      const double x = b.b11 * k1 + b.b12 * k2;
      const double y = b.b21 * k1 + b.b22 * k2;
      if (x >= lo - 1e-12 && x <= hi + 1e-12 && y >= lo - 1e-12 && y <= hi + 1e-12)
        pts.emplace_back(x, y);
    }
  return pts;
}

// Do sup-norm balls of radius r around the sites cover [0, eps]^2?
bool squares_cover(const std::vector<std::pair<double, double>>& sites, double r,
                   double eps) {
  const double tol = 1e-15 * std::max(1.0, eps);
  std::vector<double> ycrit{0.0, eps};
  for (const auto& s : sites) {
    for (double y : {s.second - r, s.second + r})
      if (y > 0.0 && y < eps) ycrit.push_back(y);
  }
  std::sort(ycrit.begin(), ycrit.end());
  std::vector<std::pair<double, double>> iv;
  for (std::size_t i = 0; i + 1 < ycrit.size(); ++i) {
    const double ym = 0.5 * (ycrit[i] + ycrit[i + 1]);
    if (ycrit[i + 1] - ycrit[i] < tol) continue;
    iv.clear();
    for (const auto& s : sites)
      if (std::abs(s.second - ym) <= r) iv.emplace_back(s.first - r, s.first + r);
    std::sort(iv.begin(), iv.end());
    double reach = 0.0;
    for (const auto& [a, b] : iv) {
      if (a > reach + tol) return false;
      reach = std::max(reach, b);
      if (reach >= eps - tol) break;
    }
    if (reach < eps - tol) return false;
  }
  return true;
}

double shortest_vector_sup(const Basis2& b) {
  double best = 1e300;
  for (int k1 = -3; k1 <= 3; ++k1)
    for (int k2 = -3; k2 <= 3; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double x = b.b11 * k1 + b.b12 * k2;
      const double y = b.b21 * k1 + b.b22 * k2;
      best = std::min(best, std::max(std::abs(x), std::abs(y)));
    }
  return best;
}

}  // namespace

double mesh_norm(const ScalingMatrix2& A, int J, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("mesh_norm: epsilon > 0 required");
  const Basis2 b = node_basis(A, J, epsilon);
  // eps Z^2 is a sublattice, so the covering radius is at most eps/2 and the
  // search can periodize over [0, eps)^2.
  double lo = 0.0, hi = 0.5 * epsilon * (1.0 + 1e-12);
  const auto sites = lattice_points(b, 0.75 * epsilon);
  if (squares_cover(sites, lo, epsilon)) return 0.0;
  for (int it = 0; it < 80 && (hi - lo) > 1e-16 * epsilon; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (squares_cover(sites, mid, epsilon))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double mesh_norm_grid(const ScalingMatrix2& A, int J, double epsilon, int R) {
  if (R < 2) throw std::invalid_argument("mesh_norm_grid: R >= 2 required");
  const Basis2 b = node_basis(A, J, epsilon);
  const double spacing = shortest_vector_sup(b);
  if (epsilon / R >= 0.5 * spacing)
    throw std::invalid_argument("mesh_norm_grid: grid coarser than node spacing");
  const double det = b.b11 * b.b22 - b.b12 * b.b21;
  double worst = 0.0;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j) {
      const double x = epsilon * (i + 0.5) / R;
      const double y = epsilon * (j + 0.5) / R;
      // Nearest lattice point: round the preimage, then check a neighborhood.
      const double k1f = (b.b22 * x - b.b12 * y) / det;
      const double k2f = (-b.b21 * x + b.b11 * y) / det;
      double dmin = 1e300;
      const std::int64_t k1r = static_cast<std::int64_t>(std::llround(k1f));
      const std::int64_t k2r = static_cast<std::int64_t>(std::llround(k2f));
      for (std::int64_t k1 = k1r - 2; k1 <= k1r + 2; ++k1)
        for (std::int64_t k2 = k2r - 2; k2 <= k2r + 2; ++k2) {
          const double px = b.b11 * k1 + b.b12 * k2;
          const double py = b.b21 * k1 + b.b22 * k2;
          dmin = std::min(dmin, std::max(std::abs(x - px), std::abs(y - py)));
        }
      worst = std::max(worst, dmin);
    }
  return worst;
}

MeshGeometry mesh_geometry(const ScalingMatrix2& A, int J, double epsilon,
                           std::int64_t M1, std::int64_t M2) {
  if (M1 < 1 || M2 < 1) throw std::invalid_argument("mesh_geometry: M1, M2 >= 1");
  MeshGeometry g;
  g.epsilon = epsilon;
  g.J = J;
  g.M1 = M1;
  g.M2 = M2;
  g.delta = mesh_norm(A, J, epsilon);
  const double dj = std::abs(static_cast<double>(A.power(J).det));
  g.cell_measure = epsilon * epsilon / dj;
  g.region_measure = g.cell_measure * 4.0 * static_cast<double>(M1) *
                     static_cast<double>(M2);
  return g;
}

std::vector<double> voronoi_measures(const ScalingMatrix2& A, int J, double epsilon,
                                     std::int64_t M1, std::int64_t M2) {
  if (M1 < 0 || M2 < 0) throw std::invalid_argument("voronoi_measures: M >= 0");
  const double dj = std::abs(static_cast<double>(A.power(J).det));
  const double cell = epsilon * epsilon / dj;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>((2 * M1 + 1) * (2 * M2 + 1)));
  auto axis_width = [](std::int64_t l, std::int64_t M) {
    // Unit cell [l-1/2, l+1/2] clipped to the index box [-M, M].
    const double lo = std::max(static_cast<double>(l) - 0.5, -static_cast<double>(M));
    const double hi = std::min(static_cast<double>(l) + 0.5, static_cast<double>(M));
    return hi - lo;
  };
  for (std::int64_t l1 = -M1; l1 <= M1; ++l1)
    for (std::int64_t l2 = -M2; l2 <= M2; ++l2)
      out.push_back(cell * axis_width(l1, M1) * axis_width(l2, M2));
  return out;
}

AssumptionReport check_assumption_values(double delta, double region_measure,
                                         std::int64_t max_abs_L) {
  AssumptionReport r;
  r.lhs = delta;
  r.rhs = std::log(1.0 / std::sqrt(region_measure) + 1.0) /
          (4.0 * std::numbers::pi * static_cast<double>(max_abs_L));
  r.holds = r.lhs < r.rhs;
  return r;
}

AssumptionReport check_assumption(const ScalingMatrix2& A, int J, double epsilon,
                                  std::int64_t M1, std::int64_t M2,
                                  std::int64_t max_abs_L) {
  const MeshGeometry g = mesh_geometry(A, J, epsilon, M1, M2);
  return check_assumption_values(g.delta, g.region_measure, max_abs_L);
}

}  // namespace f2w
