#pragma once

#include <cstdint>
#include <random>

#include "monge/qstate.hpp"

namespace monge {

using Rng = std::mt19937_64;

/// Independent generator for sample `index` of a run seeded with `seed`;
/// results do not depend on how samples are spread over threads.
Rng stream_rng(std::uint64_t seed, std::uint64_t index);

/// Haar-random pure state: normalized i.i.d. standard complex Gaussian.
PureState haar_pure_state(int dim, Rng& rng);
/// Hilbert-Schmidt random mixed state G G^dagger / tr(G G^dagger).
DensityMatrix random_density(int dim, Rng& rng);
/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE shape).
Matrix random_hermitian(int dim, Rng& rng);

}  // namespace monge
