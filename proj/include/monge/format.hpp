#pragma once

#include <string>

namespace monge {

/// 12 significant digits, for human-facing output.
std::string number(double x);
/// Shortest representation that round-trips a double, for CSV.
std::string csv_number(double x);

}  // namespace monge
