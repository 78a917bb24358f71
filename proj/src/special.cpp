#include "monge/special.hpp"

#include <cmath>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "monge/errors.hpp"

namespace monge {

namespace {
// C(1020, 510) is ~1e305, the last row that fits comfortably in a double.
constexpr int direct_limit = 1020;
}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  if (n <= direct_limit) return boost::math::binomial_coefficient<double>(n, k);
  return std::exp(log_binomial(n, k));
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) throw ValidationError("binomial index out of range");
  if (n <= direct_limit) return std::log(boost::math::binomial_coefficient<double>(n, k));
  using boost::math::lgamma;
  return lgamma(n + 1.0) - lgamma(k + 1.0) - lgamma(n - k + 1.0);
}

double log_factorial(int n) {
  if (n < 0) throw ValidationError("factorial of a negative number");
  if (n <= 170) return std::log(boost::math::factorial<double>(static_cast<unsigned>(n)));
  return boost::math::lgamma(n + 1.0);
}

}  // namespace monge
