#pragma once

#include <cstdint>
#include <vector>

#include "monge/husimi.hpp"
#include "monge/qstate.hpp"
#include "monge/sphere.hpp"

namespace monge {

/// Zeros of the Husimi function of a pure state, with multiplicity.
struct StellarRoots {
  SpinQuantum j{1};
  std::vector<SpherePoint> points;  // exactly 2j entries
};

/// Zeros of <eta|psi> as a polynomial in w = tan(theta/2) e^{-i phi}.
/// Vanishing top (bottom) coefficients put roots at the south (north)
/// pole; clusters of ill-conditioned roots that reconstruct the state as a
/// single multiple root are merged.
StellarRoots stellar_roots(const PureState& psi, SpinQuantum j);

/// Inverse map: the unit state (up to phase) whose Husimi zeros are the
/// given points. Phase is fixed so the largest component is real positive.
PureState state_from_roots(const StellarRoots& roots);

/// Mean geodesic cost of the optimal assignment between two root sets
/// (each root carries mass 1/2j).
double simplified_monge(const StellarRoots& a, const StellarRoots& b);
double simplified_monge(const PureState& a, const PureState& b, SpinQuantum j);

/// Monte-Carlo mean of simplified_monge between Haar-random states and a
/// fixed reference.
MeanEstimate random_state_distance_stats(SpinQuantum j, const PureState& reference,
                                         std::size_t samples, std::uint64_t seed,
                                         unsigned threads = 0);

/// Large-j mean distance of a random state from |j,m>: chi sin chi + cos chi
/// with sin chi = |m|/j (pi/2 for coherent states, 1 for m = 0).
double eigenstate_mean_prediction(SpinQuantum j, int two_m);

struct ScalingRow {
  int dim = 0;
  MeanEstimate distance;
};
struct ScalingTable {
  std::vector<ScalingRow> rows;
  double slope = 0.0;  // least-squares slope of ln(mean) against ln(dim)
};

/// Mean simplified_monge between independent Haar-random pairs for each j.
ScalingTable random_pair_scaling(const std::vector<SpinQuantum>& js, std::size_t samples,
                                 std::uint64_t seed, unsigned threads = 0);

enum class BasisPair { z_y, z_x };
BasisPair parse_basis_pair(const std::string& text);

/// simplified_monge between |j,m>_z and the J_y (or J_x) eigenstate with
/// eigenvalue m2.
double cross_basis_distance(SpinQuantum j, int two_m, int two_m2, BasisPair axes);

/// Eigenvector of J_y or J_x with eigenvalue m, obtained by rotating |j,m>.
PureState axis_eigenstate(SpinQuantum j, int two_m, Axis axis);

}  // namespace monge
