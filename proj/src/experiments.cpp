#include "f2w/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <tuple>

#include "f2w/basis.hpp"
#include "f2w/boundary.hpp"
#include "f2w/checks.hpp"
#include "f2w/gramian.hpp"
#include "f2w/pgm.hpp"
#include "f2w/rate.hpp"
#include "f2w/sampling.hpp"
#include "f2w/solver.hpp"

namespace f2w {

namespace {

using cplx = std::complex<double>;

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

ScalingMatrix2 matrix_of(const ExperimentConfig& cfg) {
  return ScalingMatrix2(cfg.A[0], cfg.A[1], cfg.A[2], cfg.A[3]);
}

bool is_dyadic(const ExperimentConfig& cfg) {
  return cfg.A[0] == 2 && cfg.A[1] == 0 && cfg.A[2] == 0 && cfg.A[3] == 2;
}

std::shared_ptr<Generator2D> generator_of(const ExperimentConfig& cfg,
                                          const ScalingMatrix2& A) {
  if (is_dyadic(cfg)) {
    auto eval = std::make_shared<FrequencyEvaluator>(WaveletFamily(cfg.p));
    return std::make_shared<SeparableGenerator2D>(eval);
  }
  return std::make_shared<SyntheticGenerator2D>(static_cast<int>(A.det() - 1));
}

struct BoundaryContext {
  std::shared_ptr<BoundaryFamily> family;
  BoundaryBasis2D basis;
  SamplingScheme scheme;
  Eigen::MatrixXcd U;
  double sigma_min = 0.0;

  double factor_x(const BoundaryIndex& e, const std::function<double(double)>& f) const {
    return family->factor_inner(*boundary_factors(*family, e).first, f);
  }
};

FrequencyFunction function_hat(const std::string& name) {
  if (name == "f1") return [](double w1, double w2) { return f1_hat(w1, w2); };
  return [](double w1, double w2) { return f2_hat(w1, w2); };
}

double function_norm(const std::string& name) {
  return name == "f1" ? f1_l2_norm() : f2_l2_norm();
}

std::function<double(double)> function_factor_x(const std::string& name) {
  if (name == "f1") return f1_factor_x;
  return f2_factor_x;
}
std::function<double(double)> function_factor_y(const std::string& name) {
  if (name == "f1") return f1_factor_y;
  return f2_factor_y;
}

// Coefficients <f, r_i> of a separable f in the boundary basis.
Eigen::VectorXcd boundary_coefficients(const BoundaryFamily& fam, const BoundaryBasis2D& basis,
                                       const std::function<double(double)>& fx,
                                       const std::function<double(double)>& fy) {
  // The 1D factor integrals repeat; cache per element key.
  std::map<std::tuple<bool, int, int>, double> cx, cy;
  auto factor = [&](const Element1D& e, const std::function<double(double)>& f,
                    std::map<std::tuple<bool, int, int>, double>& cache) {
    const bool wav = e.kind == Factor1DKind::LeftWavelet ||
                     e.kind == Factor1DKind::InteriorWavelet ||
                     e.kind == Factor1DKind::RightWavelet;
    const auto key = std::make_tuple(wav, e.scale, e.n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = fam.factor_inner(e, f);
    cache.emplace(key, v);
    return v;
  };
  Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.elements.size()));
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    const auto [e1, e2] = boundary_factors(fam, basis.elements[i]);
    c(static_cast<Eigen::Index>(i)) = factor(*e1, fx, cx) * factor(*e2, fy, cy);
  }
  return c;
}

Eigen::VectorXcd read_samples_file(const std::string& path, SamplingScheme& scheme) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open samples file " + path);
  std::string tag, ver;
  std::int64_t M1 = 0, M2 = 0;
  double eps = 0.0;
  in >> tag >> ver >> M1 >> M2 >> eps;
  if (tag != "samples" || ver != "v1" || !in)
    throw ConfigError("samples file needs header 'samples v1 M1 M2 epsilon'");
  scheme = SamplingScheme::boundary(eps, M1, M2);
  Eigen::VectorXcd m(scheme.total());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    double re = 0.0, im = 0.0;
    in >> re >> im;
    m(i) = {re, im};
  }
  if (!in) throw ConfigError("samples file shape mismatch: expected " +
                             std::to_string(m.size()) + " rows");
  return m;
}

}  // namespace

int run_rate(const ExperimentConfig& cfg) {
  const ScalingMatrix2 A = matrix_of(cfg);
  RateCurve curve;
  curve.theta_inv = cfg.theta_inv;
  curve.epsilon = cfg.epsilon;

  if (cfg.j_max >= cfg.j_min) {
    std::vector<std::int64_t> ladder;
    std::vector<std::pair<std::int64_t, std::int64_t>> aspects;
    std::vector<int> scales;
    for (int J = cfg.j_min; J <= cfg.j_max; ++J) {
      scales.push_back(J);
      if (cfg.boundary) {
        ladder.push_back(std::int64_t{1} << (2 * J));
        aspects.emplace_back(1, 1);
      } else {
        ladder.push_back(count_elements(A, cfg.a, J));
        const MatrixPower& pw = A.power(J);
        aspects.emplace_back(pw.col1_sum(), pw.col2_sum());
      }
    }

    SigmaFn sigma;
    if (cfg.boundary) {
      const auto fam = std::make_shared<BoundaryFamily>(cfg.p, cfg.j_max);
      sigma = [fam, &cfg, scales, ladder](std::int64_t N, std::int64_t M1, std::int64_t M2) {
        int J = 0;
        for (std::size_t i = 0; i < ladder.size(); ++i)
          if (ladder[i] == N) J = scales[i];
        const auto basis = enumerate_boundary_basis(*fam, J);
        const auto scheme = SamplingScheme::boundary(cfg.epsilon, M1, M2);
        return singular_extremes(assemble_boundary(*fam, basis, scheme)).sigma_min;
      };
    } else {
      const auto gen = generator_of(cfg, A);
      sigma = [gen, &cfg, A, scales, ladder](std::int64_t N, std::int64_t M1, std::int64_t M2) {
        int J = 0;
        for (std::size_t i = 0; i < ladder.size(); ++i)
          if (ladder[i] == N) J = scales[i];
        const auto basis = order_basis(A, cfg.a, J);
        const auto scheme =
            SamplingScheme::interior(cfg.epsilon, M1, M2, cfg.T1, cfg.T2);
        const auto g = assemble(scheme, basis, A, *gen, cfg.a, J);
        return singular_extremes(g.U).sigma_min;
      };
    }

    RateSearchOptions opts;
    opts.refine_axes = cfg.refine_axes;
    curve = stable_sampling_rate(ladder, aspects, sigma, cfg.theta_inv, cfg.epsilon, opts);
  }

  {
    std::ofstream csv(out_path(cfg, "rate.csv"));
    write_rate_csv(csv, curve);
  }
  {
    std::ofstream sum(out_path(cfg, "rate_summary.txt"));
    sum << "stable sampling rate, theta_inv = " << cfg.theta_inv
        << ", epsilon = " << cfg.epsilon << "\n";
    if (!curve.points.empty()) {
      const auto& last = curve.points.back();
      const double slope = static_cast<double>(last.total) / static_cast<double>(last.N);
      sum << "linear reference f(N) = " << slope << " * N  (anchored at N_max)\n";
      for (const auto& p : curve.points)
        sum << "N=" << p.N << " Theta=" << p.total << " M=(" << p.M1 << "," << p.M2
            << ") sigma_min=" << p.sigma_min << " linear_ref=" << slope * static_cast<double>(p.N)
            << "\n";
    } else {
      sum << "empty ladder\n";
    }
  }
  return 0;
}

namespace {

BoundaryContext make_boundary_context(const ExperimentConfig& cfg, int J,
                                      std::int64_t M_override = -1,
                                      double eps_override = -1.0) {
  if (!cfg.boundary) throw ConfigError("this mode requires boundary = true");
  if (!is_dyadic(cfg)) throw ConfigError("boundary mode requires A = diag(2,2)");
  BoundaryContext ctx;
  ctx.family = std::make_shared<BoundaryFamily>(cfg.p, J);
  ctx.basis = enumerate_boundary_basis(*ctx.family, J);
  const double eps = eps_override > 0.0 ? eps_override : cfg.epsilon;
  const std::int64_t M =
      M_override > 0
          ? M_override
          : static_cast<std::int64_t>(std::ceil(static_cast<double>(std::int64_t{1} << J) /
                                                eps));
  ctx.scheme = SamplingScheme::boundary(eps, M, M);
  ctx.U = assemble_boundary(*ctx.family, ctx.basis, ctx.scheme);
  ctx.sigma_min = singular_extremes(ctx.U).sigma_min;
  return ctx;
}

// Pixel tables of every distinct 1D factor on the midpoint grid.
Eigen::MatrixXd gs_image(const BoundaryContext& ctx, const Eigen::VectorXcd& alpha, int grid) {
  std::map<std::tuple<bool, int, int>, Eigen::VectorXd> cache;
  auto values = [&](const Element1D& e) -> const Eigen::VectorXd& {
    const bool wav = e.kind == Factor1DKind::LeftWavelet ||
                     e.kind == Factor1DKind::InteriorWavelet ||
                     e.kind == Factor1DKind::RightWavelet;
    auto key = std::make_tuple(wav, e.scale, e.n);
    auto it = cache.find(key);
    if (it == cache.end()) {
      Eigen::VectorXd v(grid);
      for (int i = 0; i < grid; ++i)
        v(i) = ctx.family->evaluate(e, (static_cast<double>(i) + 0.5) / grid);
      it = cache.emplace(key, std::move(v)).first;
    }
    return it->second;
  };
  Eigen::MatrixXd img = Eigen::MatrixXd::Zero(grid, grid);
  for (std::size_t i = 0; i < ctx.basis.elements.size(); ++i) {
    const auto [e1, e2] = boundary_factors(*ctx.family, ctx.basis.elements[i]);
    const double a = alpha(static_cast<Eigen::Index>(i)).real();
    if (a == 0.0) continue;
    img += a * values(*e1) * values(*e2).transpose();
  }
  return img;
}

Eigen::MatrixXd fourier_image(const SamplingScheme& scheme, const Eigen::VectorXcd& m,
                              int grid) {
  // sum_l m_l eps e^{2 pi i eps <l, x>} on the pixel grid (x rows, y cols).
  Eigen::MatrixXcd E1(grid, 2 * scheme.M1 + 1), E2(grid, 2 * scheme.M2 + 1);
  for (int i = 0; i < grid; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / grid;
    for (std::int64_t l = -scheme.M1; l <= scheme.M1; ++l) {
      const double a = 2.0 * std::numbers::pi * scheme.epsilon * static_cast<double>(l) * x;
      E1(i, l + scheme.M1) = cplx(std::cos(a), std::sin(a));
    }
    for (std::int64_t l = -scheme.M2; l <= scheme.M2; ++l) {
      const double a = 2.0 * std::numbers::pi * scheme.epsilon * static_cast<double>(l) * x;
      E2(i, l + scheme.M2) = cplx(std::cos(a), std::sin(a));
    }
  }
  Eigen::MatrixXcd C(2 * scheme.M1 + 1, 2 * scheme.M2 + 1);
  Eigen::Index row = 0;
  for (std::int64_t l1 = -scheme.M1; l1 <= scheme.M1; ++l1)
    for (std::int64_t l2 = -scheme.M2; l2 <= scheme.M2; ++l2)
      C(l1 + scheme.M1, l2 + scheme.M2) = m(row++);
  const Eigen::MatrixXcd img = scheme.epsilon * E1 * C * E2.transpose();
  return img.real();
}

struct CompareReport {
  QuasiOptReport q;
  double err_fourier = 0.0;
};

CompareReport compare_at_scale(const ExperimentConfig& cfg, const BoundaryContext& ctx) {
  const auto fhat = function_hat(cfg.function);
  const Eigen::VectorXcd m = measure(fhat, ctx.scheme);
  const GSResult sol = gs_solve(ctx.U, m);
  const Eigen::VectorXcd coeffs = boundary_coefficients(
      *ctx.family, ctx.basis, function_factor_x(cfg.function), function_factor_y(cfg.function));
  CompareReport rep;
  rep.q = quasi_optimality_check(function_norm(cfg.function), coeffs, sol.alpha,
                                 ctx.sigma_min, 1e-5);
  const double f2 = function_norm(cfg.function) * function_norm(cfg.function);
  rep.err_fourier = std::sqrt(std::max(0.0, f2 - m.squaredNorm()));
  return rep;
}

}  // namespace

int run_reconstruct(const ExperimentConfig& cfg) {
  if (cfg.function != "samples-file" && cfg.epsilon != 1.0)
    throw ConfigError("reconstruct compares against the truncated Fourier series; use epsilon = 1");
  BoundaryContext ctx;
  Eigen::VectorXcd m;
  if (cfg.function == "samples-file") {
    SamplingScheme file_scheme;
    m = read_samples_file(cfg.samples_file, file_scheme);
    if (file_scheme.M1 != file_scheme.M2)
      throw ConfigError("samples file must carry a square block M1 = M2");
    ctx = make_boundary_context(cfg, cfg.j_max, file_scheme.M1, file_scheme.epsilon);
  } else {
    ctx = make_boundary_context(cfg, cfg.j_max);
    m = measure(function_hat(cfg.function), ctx.scheme);
  }

  if (!cfg.family_export.empty()) {
    std::ofstream fam(out_path(cfg, cfg.family_export));
    ctx.family->export_tables(fam);
  }
  const GSResult sol = gs_solve(ctx.U, m);
  const Eigen::MatrixXd gs = gs_image(ctx, sol.alpha, cfg.grid);
  const Eigen::MatrixXd tf = fourier_image(ctx.scheme, m, cfg.grid);
  const PgmScale s1 = write_pgm16(out_path(cfg, "recon_gs.pgm"), gs);
  const PgmScale s2 = write_pgm16(out_path(cfg, "recon_fourier.pgm"), tf);

  std::ofstream rep(out_path(cfg, "recon_report.txt"));
  rep << "reconstruction report\n";
  rep << "N = " << ctx.basis.elements.size() << " samples = " << ctx.scheme.total()
      << " sigma_min = " << ctx.sigma_min << "\n";
  rep << "pgm recon_gs scale lo " << s1.lo << " hi " << s1.hi << "\n";
  rep << "pgm recon_fourier scale lo " << s2.lo << " hi " << s2.hi << "\n";
  if (cfg.function != "samples-file") {
    const CompareReport cr = compare_at_scale(cfg, ctx);
    rep << "l2_error_gs = " << cr.q.err_gs << "\n";
    rep << "l2_error_fourier = " << cr.err_fourier << "\n";
    rep << "l2_error_best = " << cr.q.err_best << "\n";
    return cr.q.err_gs <= cr.err_fourier ? 0 : 1;
  }
  return 0;
}

int run_compare(const ExperimentConfig& cfg) {
  if (cfg.epsilon != 1.0)
    throw ConfigError("compare needs epsilon = 1 for the truncated Fourier reference");
  std::ofstream rep(out_path(cfg, "compare_report.txt"));
  rep << "quasi-optimality comparison, function = " << cfg.function << "\n";
  bool ok = true;
  for (int J = cfg.j_min; J <= cfg.j_max; ++J) {
    const BoundaryContext ctx = make_boundary_context(cfg, J);
    const CompareReport cr = compare_at_scale(cfg, ctx);
    rep << "J=" << J << " N=" << ctx.basis.elements.size()
        << " samples=" << ctx.scheme.total() << " sigma_min=" << ctx.sigma_min
        << " err_best=" << cr.q.err_best << " err_gs=" << cr.q.err_gs
        << " bound=" << cr.q.bound << " err_fourier=" << cr.err_fourier
        << " sandwich=" << (cr.q.holds ? "pass" : "fail") << "\n";
    ok = ok && cr.q.holds && cr.q.err_gs <= cr.err_fourier;
  }
  return ok ? 0 : 1;
}

int run_gramian_dump(const ExperimentConfig& cfg) {
  const int J = cfg.j_max;
  std::ofstream out(out_path(cfg, "gramian.txt"));
  if (cfg.boundary) {
    const BoundaryContext ctx = make_boundary_context(cfg, J);
    CrossGramian g;
    g.U = ctx.U;
    g.epsilon = cfg.epsilon;
    g.a = cfg.a;
    g.J = J;
    g.detA = 4;
    dump_gramian(out, g);
    if (!cfg.family_export.empty()) {
      std::ofstream fam(out_path(cfg, cfg.family_export));
      ctx.family->export_tables(fam);
    }
    return 0;
  }
  const ScalingMatrix2 A = matrix_of(cfg);
  const auto gen = generator_of(cfg, A);
  const MatrixPower& pw = A.power(J);
  const auto M1 = static_cast<std::int64_t>(
      std::ceil(static_cast<double>(pw.col1_sum()) / cfg.epsilon));
  const auto M2 = static_cast<std::int64_t>(
      std::ceil(static_cast<double>(pw.col2_sum()) / cfg.epsilon));
  const auto scheme = SamplingScheme::interior(cfg.epsilon, M1, M2, cfg.T1, cfg.T2);
  const auto basis = order_basis(A, cfg.a, J);
  const CrossGramian g = assemble(scheme, basis, A, *gen, cfg.a, J);
  dump_gramian(out, g);
  return 0;
}

}  // namespace f2w
