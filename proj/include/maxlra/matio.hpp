#pragma once

#include <iosfwd>
#include <string>

#include "maxlra/dense.hpp"

namespace maxlra {

// Shortest text form of a double that still round-trips exactly
// (17 significant digits, locale-independent).
std::string to_string_17(double v);

// Plain-text matrix format: one header line "rows cols", then `rows` lines
// of `cols` decimal values.
DenseMatrix read_matrix(std::istream& in);
DenseMatrix read_matrix_file(const std::string& path);
void write_matrix(const DenseMatrix& a, std::ostream& out);
void write_matrix_file(const DenseMatrix& a, const std::string& path);

}  // namespace maxlra
