#pragma once

#include <stdexcept>
#include <string>

namespace monge {

// Bad input: dimension mismatches, invariant violations, out-of-range
// parameters, malformed descriptors. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed or declined to produce a value (quadrature
// did not converge, pivot cap reached, hypotheses of a reduction do not
// hold). The CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact path refused because its hypotheses are not met.
class PathRefused : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace monge
