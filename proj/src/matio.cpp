#include "maxlra/matio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "maxlra/errors.hpp"

namespace maxlra {

std::string to_string_17(double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  require(ec == std::errc(), ErrorCode::IoError, "failed to format a double");
  return std::string(buf, ptr);
}

DenseMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  require(static_cast<bool>(in >> rows >> cols), ErrorCode::IoError,
          "matrix header: expected \"rows cols\"");
  require(rows >= 1 && cols >= 1, ErrorCode::IoError,
          "matrix header: dimensions must be at least 1");
  std::vector<double> data(rows * cols);
  for (auto& v : data) {
    require(static_cast<bool>(in >> v), ErrorCode::IoError,
            "matrix body: too few values");
    require(std::isfinite(v), ErrorCode::IoError,
            "matrix body: entries must be finite");
  }
  return DenseMatrix(rows, cols, std::move(data));
}

DenseMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open for reading: " + path);
  return read_matrix(in);
}

void write_matrix(const DenseMatrix& a, std::ostream& out) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << to_string_17(a(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const DenseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::IoError, "cannot open for writing: " + path);
  write_matrix(a, out);
  require(static_cast<bool>(out.flush()), ErrorCode::IoError,
          "write failed: " + path);
}

}  // namespace maxlra
