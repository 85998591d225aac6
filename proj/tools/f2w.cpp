#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "f2w/config.hpp"
#include "f2w/experiments.hpp"
#include "f2w/verify.hpp"

namespace {

int dispatch(const std::string& mode, f2w::ExperimentConfig cfg) {
  if (mode == "rate") return f2w::run_rate(cfg);
  if (mode == "reconstruct") return f2w::run_reconstruct(cfg);
  if (mode == "compare") return f2w::run_compare(cfg);
  if (mode == "gramian-dump") return f2w::run_gramian_dump(cfg);
  if (mode == "verify") {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / "verify_report.txt";
    std::ofstream out(path);
    const int failures = f2w::run_verify(cfg, out);
    out.close();
    std::ifstream echo(path);
    std::cout << echo.rdbuf();
    return failures == 0 ? 0 : 1;
  }
  throw f2w::ConfigError("unknown mode " + mode);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized sampling of 2D wavelet coefficients from Fourier samples"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;

  const std::vector<std::string> modes{"rate", "reconstruct", "compare", "verify",
                                       "gramian-dump"};
  for (const auto& m : modes) {
    auto* sub = app.add_subcommand(m);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
      seed_set = true;
    });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    f2w::ExperimentConfig cfg = f2w::parse_config_file(config_path);
    cfg.out_dir = out_dir;
    if (seed_set) cfg.seed = seed;
    return dispatch(app.get_subcommands().front()->get_name(), std::move(cfg));
  } catch (const f2w::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
