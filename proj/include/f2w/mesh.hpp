#pragma once

#include <cstdint>
#include <vector>

#include "f2w/scaling_matrix.hpp"

namespace f2w {

// Frequency-node geometry for the grid x_l = eps (A^{-J})^T l, l in
// [-M1,M1]x[-M2,M2]. `delta` is the mesh norm (sup-metric covering radius of
// the node lattice under the quotient metric), `region_measure` is
// mu(Omega^(eps)) = eps^2 |det A^{-J}| (2M1)(2M2), `cell_measure` the measure
// of one full lattice cell eps^2 |det A^{-J}|.
struct MeshGeometry {
  double epsilon = 0.0;
  int J = 0;
  std::int64_t M1 = 0, M2 = 0;
  double delta = 0.0;
  double region_measure = 0.0;
  double cell_measure = 0.0;
};

// Exact mesh norm of the lattice eps (A^{-J})^T Z^2 in the sup metric.
// Since the nodes are lattice points and the quotient metric wraps by the
// same lattice, delta equals the lattice covering radius; it does not depend
// on M beyond M >= 1.
double mesh_norm(const ScalingMatrix2& A, int J, double epsilon);

// Dense-grid evaluator for the same quantity, resolution R x R over one
// rectangular period. Accurate to O(eps/R); exists as an oracle for the
// closed computation. Throws if the grid is coarser than the node spacing.
double mesh_norm_grid(const ScalingMatrix2& A, int J, double epsilon, int R);

MeshGeometry mesh_geometry(const ScalingMatrix2& A, int J, double epsilon,
                           std::int64_t M1, std::int64_t M2);

// Voronoi cell measures for the nodes l in [-M1,M1]x[-M2,M2]: image under
// eps (A^{-J})^T of the unit cells around each l clipped to the index box.
// Ties on cell boundaries belong to the lexicographically smaller node.
// Every measure is <= eps^2 |det A^{-J}| and they sum to mu(Omega^(eps)).
std::vector<double> voronoi_measures(const ScalingMatrix2& A, int J, double epsilon,
                                     std::int64_t M1, std::int64_t M2);

struct AssumptionReport {
  bool holds = false;
  double lhs = 0.0;  // mesh norm delta
  double rhs = 0.0;  // log(1/sqrt(mu(Omega^(eps))) + 1) / (4 pi max|L_i|)
};

// Sampling assumption: delta < log(1/sqrt(mu(Omega^(eps)))+1)/(4 pi maxL).
AssumptionReport check_assumption(const ScalingMatrix2& A, int J, double epsilon,
                                  std::int64_t M1, std::int64_t M2,
                                  std::int64_t max_abs_L);

// Same verdict from precomputed numbers (lets tests drive degenerate deltas).
AssumptionReport check_assumption_values(double delta, double region_measure,
                                         std::int64_t max_abs_L);

}  // namespace f2w
