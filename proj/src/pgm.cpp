#include "f2w/pgm.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace f2w {

PgmScale write_pgm16(const std::string& path, const Eigen::MatrixXd& image) {
  PgmScale s;
  s.lo = image.minCoeff();
  s.hi = image.maxCoeff();
  const double span = s.hi > s.lo ? s.hi - s.lo : 1.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm16: cannot open " + path);
  out << "P5\n" << image.cols() << " " << image.rows() << "\n65535\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(image.cols()) * 2);
  for (Eigen::Index r = 0; r < image.rows(); ++r) {
    for (Eigen::Index c = 0; c < image.cols(); ++c) {
      const double v = (image(r, c) - s.lo) / span;
      const auto q = static_cast<std::uint16_t>(v <= 0.0 ? 0 : v >= 1.0 ? 65535 : v * 65535.0 + 0.5);
      row[static_cast<std::size_t>(c) * 2] = static_cast<unsigned char>(q >> 8);
      row[static_cast<std::size_t>(c) * 2 + 1] = static_cast<unsigned char>(q & 0xff);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw std::runtime_error("write_pgm16: write failed for " + path);
  return s;
}

}  // namespace f2w
