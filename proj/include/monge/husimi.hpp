#pragma once

#include <iosfwd>
#include <vector>

#include "monge/qstate.hpp"
#include "monge/random.hpp"
#include "monge/sphere.hpp"

namespace monge {

/// H(eta) = N <eta|rho|eta>, a density against the unit-mass sphere measure.
class HusimiField {
 public:
  HusimiField(DensityMatrix rho, SpinQuantum j);

  double operator()(const SpherePoint& p) const;
  std::vector<double> sample(const SphereGrid& grid) const;

  const DensityMatrix& source() const { return rho_; }
  SpinQuantum j() const { return j_; }

 private:
  DensityMatrix rho_;
  SpinQuantum j_;
  Matrix deviation_;
};

HusimiField husimi(const DensityMatrix& rho, SpinQuantum j);

/// Grid used for entropy quadrature when none is given (256 x 512).
const SphereGrid& default_entropy_grid();

/// -int H ln H dmu with 0 ln 0 := 0.
double wehrl_entropy(const DensityMatrix& rho, SpinQuantum j, const SphereGrid& grid);
double wehrl_entropy(const DensityMatrix& rho, SpinQuantum j);

/// (N-1)/N - ln N, attained by coherent states.
double wehrl_minimum(int dim);
/// Haar average over pure states: -ln N + sum_{m=2}^{N} 1/m.
double mean_wehrl(int dim);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo mean of the Wehrl entropy over Haar-random pure states.
MeanEstimate sampled_mean_wehrl(int dim, std::size_t samples, std::uint64_t seed,
                                const SphereGrid& grid, unsigned threads = 0);

/// Rows "theta,phi,H".
void write_husimi_csv(std::ostream& os, const HusimiField& field, const SphereGrid& grid);

}  // namespace monge
