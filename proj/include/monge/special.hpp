#pragma once

namespace monge {

/// C(n, k) as a double (exact while representable).
double binomial(int n, int k);
/// ln C(n, k), accurate for large n.
double log_binomial(int n, int k);
/// ln n!
double log_factorial(int n);

}  // namespace monge
