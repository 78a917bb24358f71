#pragma once

#include <string>

#include "json.hpp"

#include "monge/qstate.hpp"
#include "monge/sphere.hpp"

namespace monge {

/// |theta, phi> expanded on |j,j>, ..., |j,-j>.
PureState coherent_amplitudes(SpinQuantum j, const SpherePoint& p);
/// Writes the 2j+1 coherent amplitudes (unit norm up to rounding) into out;
/// allocation-free kernel behind coherent_amplitudes.
void coherent_fill(int two_j, double theta, double phi, cplx* out);
/// The eigenstate |j,m>; two_m = 2m.
PureState eigenstate(SpinQuantum j, int two_m);

/// |j,j><j,j|
DensityMatrix rho_plus(SpinQuantum j);
/// |j,-j><j,-j|
DensityMatrix rho_minus(SpinQuantum j);
/// a rho_plus + (1-a) rho_minus, a in [0,1].
DensityMatrix rho_mix(SpinQuantum j, double a);
DensityMatrix rho_star(SpinQuantum j);
DensityMatrix coherent_density(SpinQuantum j, const SpherePoint& p);

/// Parsed state descriptor: plus, minus, star, mix:a, jm:m, coh:theta,phi,
/// json:<path>.
struct StateSpec {
  enum class Kind { plus, minus, star, mix, jm, coherent, json };
  Kind kind = Kind::star;
  double a = 0.0;
  int two_m = 0;
  double theta = 0.0;
  double phi = 0.0;
  std::string path;
  std::string text;

  static StateSpec parse(const std::string& text);
  bool is_pure() const;
};

DensityMatrix named_state(const StateSpec& spec, SpinQuantum j);
/// Pure-state vector for descriptors that denote one; throws
/// ValidationError for mixed descriptors or a json matrix of rank > 1.
PureState named_pure_state(const StateSpec& spec, SpinQuantum j);

/// {"dim": N, "re": [[...]], "im": [[...]]}
DensityMatrix density_from_json(const nlohmann::json& doc);
nlohmann::json density_to_json(const DensityMatrix& rho);
DensityMatrix load_density(const std::string& path);

/// Rank-one extraction: returns the leading eigenvector when rho is pure
/// within tol::psd, otherwise throws ValidationError.
PureState pure_from_density(const DensityMatrix& rho);

}  // namespace monge
