#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace f2w {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Line-oriented `key = value` configuration with `#` comments. Unknown keys
// are errors. Epsilon accepts rationals ("1/7") or decimals.
struct ExperimentConfig {
  std::string family = "haar";  // haar | daubechies
  int p = 1;
  bool boundary = false;
  std::array<std::int64_t, 4> A{2, 0, 0, 2};
  int a = 1;  // support width, 2p-1
  int j_min = 1;
  int j_max = 3;
  double epsilon = 0.5;
  double theta_inv = 0.45;
  bool refine_axes = false;
  int grid = 512;
  std::string function = "f1";  // f1 | f2 | samples-file
  std::string samples_file;
  std::string family_export;  // optional path for boundary coefficient tables
  double T1 = -1.0, T2 = -1.0;  // interior box; defaults a-1 and 2a-1
  std::uint64_t seed = 1;
  std::string out_dir = ".";

  void validate() const;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace f2w
