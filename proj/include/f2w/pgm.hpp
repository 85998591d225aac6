#pragma once

#include <string>

#include <Eigen/Core>

namespace f2w {

// 16-bit big-endian binary PGM (P5). Pixels map affinely from [lo, hi] to
// [0, 65535]; the caller records lo/hi in the sidecar report.
struct PgmScale {
  double lo = 0.0;
  double hi = 1.0;
};

PgmScale write_pgm16(const std::string& path, const Eigen::MatrixXd& image);

}  // namespace f2w
