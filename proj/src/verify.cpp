#include "f2w/verify.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <ostream>

#include "f2w/basis.hpp"
#include "f2w/checks.hpp"
#include "f2w/expansion_bounds.hpp"
#include "f2w/gramian.hpp"
#include "f2w/implicit_op.hpp"
#include "f2w/mesh.hpp"
#include "f2w/quadrature.hpp"
#include "f2w/rate.hpp"
#include "f2w/rng.hpp"
#include "f2w/solver.hpp"

namespace f2w {

namespace {

class Reporter {
 public:
  explicit Reporter(std::ostream& os) : os_(os) {}

  // `upper` checks pass when measured <= threshold, lower checks the reverse.
  void upper(const char* name, double measured, double threshold) {
    emit(name, measured <= threshold, measured, threshold, false);
  }
  void lower(const char* name, double measured, double threshold) {
    emit(name, measured >= threshold, measured, threshold, false);
  }
  void expect_fail(const char* name, bool failed_as_constructed, double measured,
                   double threshold) {
    emit(name, failed_as_constructed, measured, threshold, true);
  }

  int failures() const { return failures_; }

 private:
  void emit(const char* name, bool ok, double measured, double threshold, bool xfail) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%s,%s,%.17g,%.17g\n", name,
                  ok ? (xfail ? "xfail" : "pass") : "FAIL", measured, threshold);
    os_ << buf;
    if (!ok) ++failures_;
  }

  std::ostream& os_;
  int failures_ = 0;
};

}  // namespace

int run_verify(const ExperimentConfig& cfg, std::ostream& os) {
  Reporter rep(os);
  const ScalingMatrix2 A(cfg.A[0], cfg.A[1], cfg.A[2], cfg.A[3]);
  const WaveletFamily family(cfg.p);
  const auto eval = std::make_shared<FrequencyEvaluator>(family);
  Rng rng(cfg.seed);

  // Power recurrences of the dilation matrix entries.
  {
    double worst = 0.0;
    for (int j = 1; j <= 8; ++j) {
      const MatrixPower& q = A.power(j);
      const MatrixPower& p = A.power(j - 1);
      const double r1 = static_cast<double>(q.row1_sum()) -
                        (static_cast<double>(p.l1) * A.power(1).row1_sum() +
                         static_cast<double>(p.l2) * A.power(1).row2_sum());
      const double r2 = static_cast<double>(q.row2_sum()) -
                        (static_cast<double>(p.l3) * A.power(1).row1_sum() +
                         static_cast<double>(p.l4) * A.power(1).row2_sum());
      const double d = static_cast<double>(q.det) -
                       std::pow(static_cast<double>(A.det()), j);
      worst = std::max({worst, std::abs(r1), std::abs(r2), std::abs(d)});
    }
    rep.upper("power_recurrence", worst, 0.0);
  }

  // Element count against direct enumeration.
  {
    double worst = 0.0;
    for (int J = 0; J <= 4; ++J) {
      const auto basis = order_basis(A, cfg.a, J);
      worst = std::max(worst, std::abs(static_cast<double>(basis.size()) -
                                       static_cast<double>(count_elements(A, cfg.a, J))));
    }
    rep.upper("count_vs_enumeration", worst, 0.0);
  }

  // Mesh norm: closed lattice computation against the dense-grid oracle.
  {
    const double exact = mesh_norm(A, 2, cfg.epsilon);
    const double grid = mesh_norm_grid(A, 2, cfg.epsilon, 512);
    rep.upper("mesh_norm_oracle", std::abs(exact - grid), cfg.epsilon / 512.0);
  }

  // Voronoi partition and the per-cell bound.
  {
    const auto v = voronoi_measures(A, 2, cfg.epsilon, 5, 4);
    const MeshGeometry g = mesh_geometry(A, 2, cfg.epsilon, 5, 4);
    double sum = 0.0, worst = 0.0;
    for (double m : v) {
      sum += m;
      worst = std::max(worst, m - g.cell_measure);
    }
    rep.upper("voronoi_cell_bound", worst, 0.0);
    rep.upper("voronoi_partition", std::abs(sum - g.region_measure), 1e-12);
  }

  // Sampling assumption at the Example-4.3 rate, and a constructed violation.
  {
    const double eps_ok = 1.0 / (8.0 * std::numbers::pi);
    bool all_hold = true;
    double worst_margin = 1e300;
    for (int J = 1; J <= 6; ++J) {
      const auto b = expansion_bounds(A, cfg.a, J);
      const auto M = static_cast<std::int64_t>(
          std::ceil(static_cast<double>(A.power(J).col1_sum()) / eps_ok));
      const auto r = check_assumption(A, J, eps_ok, M, M, b.max_abs());
      all_hold = all_hold && r.holds;
      worst_margin = std::min(worst_margin, r.rhs - r.lhs);
    }
    rep.lower("assumption_example_rate", all_hold ? worst_margin : -1.0, 0.0);

    const auto b4 = expansion_bounds(A, cfg.a, 4);
    const auto rbad = check_assumption(A, 4, 0.5, 32, 32, b4.max_abs());
    rep.expect_fail("assumption_violation_flagged", !rbad.holds, rbad.lhs, rbad.rhs);
  }

  // Filter identities on a frequency grid.
  {
    double worst = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const double xi = static_cast<double>(i) / 64.0;
      const double qmf = std::norm(eval->refinement_symbol(xi)) +
                         std::norm(eval->refinement_symbol(xi + 0.5));
      worst = std::max(worst, std::abs(qmf - 1.0));
    }
    rep.upper("qmf_identity", worst, 1e-12);
  }
  if (cfg.p == 1) {
    double worst = 0.0;
    for (int i = 0; i <= 256; ++i) {
      const double xi = -64.0 + 128.0 * static_cast<double>(i) / 256.0;
      worst = std::max(worst, std::abs(eval->phi_hat(xi) - haar_phi_hat(xi)));
    }
    rep.upper("phi_hat_closed_form", worst, 1e-10);
  }

  // Frequency decay sup |phi_hat(x)| (1 + |x|) on a log-spaced grid.
  {
    double sup = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = std::pow(10.0, 4.0 * static_cast<double>(i) / 200.0);
      sup = std::max(sup, std::abs(eval->phi_hat(x)) * (1.0 + x));
    }
    rep.upper("frequency_decay_sup", sup, 10.0);
  }

  // Shifted square-sum mass and its monotonicity in S.
  {
    const double theta = 1.0 / (cfg.theta_inv * cfg.theta_inv);
    const int S = tail_mass_S(*eval, theta);
    rep.lower("tail_mass_S", static_cast<double>(S), 1.0);
    double gmin = 1e300;
    for (int i = 0; i <= 128; ++i) {
      const double xi = -0.5 + static_cast<double>(i) / 128.0;
      double g = 0.0;
      for (int s = -S + 1; s <= S - 1; ++s) g += std::norm(eval->phi_hat(xi + s));
      gmin = std::min(gmin, g);
    }
    rep.lower("tail_mass_1d_profile", gmin, 1.0 - 1.0 / theta);
  }

  // Expansion bounds contain the supports seen in the ordered basis.
  {
    bool ok = true;
    for (int J = 1; J <= 3; ++J) {
      const auto b = expansion_bounds(A, cfg.a, J);
      ok = ok && b.hi1 >= 0 && b.hi2 >= 0 && b.lo1 <= 0 && b.lo2 <= 0;
    }
    rep.lower("expansion_bounds_basic", ok ? 1.0 : 0.0, 1.0);
  }

  // Grid Parseval identity on seeded random blocks.
  {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int rows = 2 + static_cast<int>(rng.integer(6));
      const int cols = 2 + static_cast<int>(rng.integer(6));
      Eigen::MatrixXcd a(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = rng.cnormal();
      const std::int64_t L1 = (rows + 1) / 2 + static_cast<std::int64_t>(rng.integer(3));
      const std::int64_t L2 = (cols + 1) / 2 + static_cast<std::int64_t>(rng.integer(3));
      worst = std::max(worst, grid_parseval_check(a, L1, L2));
    }
    rep.upper("grid_parseval", worst, 1e-12);
  }

  // MZ lower bound at the Example-4.3 parameters.
  {
    const double eps_ok = 1.0 / (8.0 * std::numbers::pi);
    const int J = 2;
    const auto b = expansion_bounds(A, cfg.a, J);
    const auto M = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(A.power(J).col1_sum()) / eps_ok));
    const MeshGeometry g = mesh_geometry(A, J, eps_ok, M, M);
    const MZBound mz = mz_lower_bound(g.delta, b.max_abs(), g.region_measure);
    rep.lower("mz_constant_positive", mz.C, 1e-6);
    double worst = 1e300;
    for (int t = 0; t < 20; ++t) {
      TrigPoly2 phi;
      phi.lo1 = b.lo1;
      phi.lo2 = b.lo2;
      phi.coef.resize(b.hi1 - b.lo1 + 1, b.hi2 - b.lo2 + 1);
      for (Eigen::Index i = 0; i < phi.coef.rows(); ++i)
        for (Eigen::Index j = 0; j < phi.coef.cols(); ++j) phi.coef(i, j) = rng.cnormal();
      const double lhs = mz_discrete_sum(phi, A, J, eps_ok, M, M);
      const double rhs = mz.C * mz.C * trig_region_norm_sq(phi, A, J, eps_ok, M, M);
      worst = std::min(worst, lhs - rhs);
    }
    rep.lower("mz_inequality", worst, 0.0);
  }

  // Interior entries against the quadrature oracle, and Parseval exhaustion.
  if (cfg.A[0] == 2 && cfg.A[1] == 0 && cfg.A[2] == 0 && cfg.A[3] == 2) {
    const SeparableGenerator2D gen(eval);
    const GramianOracle oracle(family);
    const auto scheme = SamplingScheme::interior(cfg.epsilon, 8, 8, cfg.T1, cfg.T2);
    const auto basis = order_basis(A, cfg.a, 2);
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
      const auto& idx = basis[rng.integer(basis.size())];
      const std::int64_t l1 = static_cast<std::int64_t>(rng.integer(17)) - 8;
      const std::int64_t l2 = static_cast<std::int64_t>(rng.integer(17)) - 8;
      const auto a_val = interior_entry(idx, l1, l2, scheme, A, gen);
      const auto o_val = oracle.entry(idx, l1, l2, scheme);
      worst = std::max(worst, std::abs(a_val - o_val));
    }
    rep.upper("gramian_oracle_agreement", worst, 1e-6);

    // Phase periodicity under integer shifts of the trig argument.
    {
      double worst_p = 0.0;
      for (int t = 0; t < 10; ++t) {
        const double z1 = rng.uniform(), z2 = rng.uniform();
        TrigPoly2 phi;
        phi.lo1 = -2;
        phi.lo2 = -1;
        phi.coef.resize(4, 3);
        for (Eigen::Index i = 0; i < 4; ++i)
          for (Eigen::Index j = 0; j < 3; ++j) phi.coef(i, j) = rng.cnormal();
        worst_p = std::max(worst_p, std::abs(phi.eval(z1 + 3.0, z2 - 2.0) - phi.eval(z1, z2)));
      }
      rep.upper("trig_phase_periodicity", worst_p, 1e-12);
    }

    // Column-norm exhaustion of a single reconstruction function. For Haar
    // the squared deficit decays like 1/M, so require decay along doublings
    // plus a small final deficit.
    {
      const auto small_basis = order_basis(A, cfg.a, 0);
      double prev = 0.0, prev_deficit = 1.0;
      bool monotone = true, decaying = true;
      for (std::int64_t M = 2; M <= 64; M *= 2) {
        const auto sc = SamplingScheme::interior(cfg.epsilon, M, M, cfg.T1, cfg.T2);
        double nrm = 0.0;
        for (std::int64_t l1 = -M; l1 <= M; ++l1)
          for (std::int64_t l2 = -M; l2 <= M; ++l2)
            nrm += std::norm(interior_entry(small_basis[0], l1, l2, sc, A, gen));
        monotone = monotone && nrm >= prev - 1e-14;
        const double deficit = 1.0 - nrm;
        decaying = decaying && deficit <= 0.75 * prev_deficit + 1e-12;
        prev = nrm;
        prev_deficit = deficit;
      }
      rep.lower("parseval_exhaustion_monotone", (monotone && decaying) ? 1.0 : 0.0, 1.0);
      rep.upper("parseval_exhaustion_limit", std::abs(prev - 1.0), 2e-2);
    }

    // sigma_min growth under nested sample sets.
    {
      const auto basis2 = order_basis(A, cfg.a, 1);
      double prev = -1.0;
      bool monotone = true;
      for (std::int64_t M = 1; M <= 8; M *= 2) {
        const auto sc = SamplingScheme::interior(cfg.epsilon, M, M, cfg.T1, cfg.T2);
        const auto g = assemble(sc, basis2, A, gen, cfg.a, 1);
        const double s = singular_extremes(g.U).sigma_min;
        monotone = monotone && s >= prev - 1e-10;
        prev = s;
      }
      rep.lower("sigma_min_monotone", monotone ? 1.0 : 0.0, 1.0);
    }

    // Perfect recovery of synthetic coefficient vectors.
    {
      const auto sc = SamplingScheme::interior(cfg.epsilon, 8, 8, cfg.T1, cfg.T2);
      const auto basis2 = order_basis(A, cfg.a, 1);
      const auto g = assemble(sc, basis2, A, gen, cfg.a, 1);
      double worst_p = 0.0;
      for (int t = 0; t < 5; ++t) {
        Eigen::VectorXcd alpha(g.U.cols());
        for (Eigen::Index i = 0; i < alpha.size(); ++i) alpha(i) = rng.cnormal();
        const auto sol = gs_solve(g.U, g.U * alpha);
        worst_p = std::max(worst_p, (sol.alpha - alpha).norm() / alpha.norm());
      }
      rep.upper("perfect_recovery", worst_p, 1e-8);
    }

    // Implicit operator against dense assembly and its adjoint identity.
    {
      const auto sc = SamplingScheme::interior(cfg.epsilon, 6, 6, cfg.T1, cfg.T2);
      const ImplicitGramian op(sc, family, 2);
      const auto basis2 = order_basis(A, cfg.a, 2);
      const auto g = assemble(sc, basis2, A, gen, cfg.a, 2);
      Eigen::VectorXcd alpha(op.cols());
      for (Eigen::Index i = 0; i < alpha.size(); ++i) alpha(i) = rng.cnormal();
      const double dense_gap = (op.apply(alpha) - g.U * alpha).norm() / alpha.norm();
      rep.upper("implicit_dense_agreement", dense_gap, 1e-8);
      Eigen::VectorXcd y(op.rows());
      for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.cnormal();
      const std::complex<double> lhs = op.apply(alpha).dot(y);
      const std::complex<double> rhs = alpha.dot(op.apply_adjoint(y));
      rep.upper("implicit_adjoint", std::abs(lhs - rhs), 1e-10);
    }
  }

  return rep.failures();
}

}  // namespace f2w
