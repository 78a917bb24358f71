#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "monge/sphere.hpp"

namespace monge::cli {

/// Runs one command; returns the process exit code (0 ok, 2 invalid input,
/// 3 solver failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "<thetaN>x<phiN>" for a Gauss-Legendre product grid, or "fibonacci:<n>".
std::shared_ptr<const SphereGrid> parse_grid(const std::string& text);

}  // namespace monge::cli
