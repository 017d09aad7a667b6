#pragma once

#include <string>

#include "carl/matrix.hpp"
#include "carl/sim.hpp"

namespace carl {

/// 17-significant-digit decimal rendering used by every output format.
std::string format_double(double v);

/// CSV: one row per line, comma-separated, '.' decimal.
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(const std::string& text);

/// JSON: {"rows": r, "cols": c, "data": [row-major]}.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

/// CSV with header t,x1,...,xN[,z1,...,zM].
std::string trajectory_to_csv(const Trajectory& t);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace carl
