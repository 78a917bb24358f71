#include "monge/random.hpp"

namespace monge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = cplx(re, im);
    }
  return m;
}

}  // namespace

Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

PureState haar_pure_state(int dim, Rng& rng) {
  return PureState::normalized(gaussian_matrix(dim, 1, rng).col(0));
}

DensityMatrix random_density(int dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

Matrix random_hermitian(int dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace monge
