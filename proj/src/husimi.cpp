#include "monge/husimi.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include "monge/format.hpp"
#include "monge/parallel.hpp"
#include "monge/states.hpp"

namespace monge {

HusimiField::HusimiField(DensityMatrix rho, SpinQuantum j) : rho_(std::move(rho)), j_(j) {
  if (rho_.dim() != j_.dim())
    throw ValidationError("Husimi field: state dimension " + std::to_string(rho_.dim()) +
                          " does not match 2j+1 = " + std::to_string(j_.dim()));
  deviation_ = rho_.matrix() - Matrix::Identity(j_.dim(), j_.dim()) / static_cast<double>(j_.dim());
}

double HusimiField::operator()(const SpherePoint& p) const {
  const int n = j_.dim();
  constexpr int stack_dim = 64;
  cplx buf[stack_dim];
  std::vector<cplx> heap;
  cplx* eta = buf;
  if (n > stack_dim) {
    heap.resize(n);
    eta = heap.data();
  }
  coherent_fill(j_.two_j(), p.theta, p.phi, eta);
  // H = 1 + N <eta|rho - I/N|eta>, using <eta|eta> = 1; the maximally
  // mixed state then gives exactly 1.
  double q = 0.0;
  for (int r = 0; r < n; ++r) {
    cplx row = 0.0;
    for (int c = 0; c < n; ++c) row += deviation_(r, c) * eta[c];
    q += (std::conj(eta[r]) * row).real();
  }
  return 1.0 + n * q;
}

std::vector<double> HusimiField::sample(const SphereGrid& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = (*this)(grid.nodes()[i]);
  return out;
}

HusimiField husimi(const DensityMatrix& rho, SpinQuantum j) { return HusimiField(rho, j); }

const SphereGrid& default_entropy_grid() {
  static const SphereGrid grid = gauss_product_grid(256, 512);
  return grid;
}

double wehrl_entropy(const DensityMatrix& rho, SpinQuantum j, const SphereGrid& grid) {
  const HusimiField h(rho, j);
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = h(grid.nodes()[i]);
    if (v > 0.0) s -= grid.weights()[i] * v * std::log(v);
  }
  return s;
}

double wehrl_entropy(const DensityMatrix& rho, SpinQuantum j) {
  return wehrl_entropy(rho, j, default_entropy_grid());
}

double wehrl_minimum(int dim) { return (dim - 1.0) / dim - std::log(static_cast<double>(dim)); }

double mean_wehrl(int dim) {
  if (dim < 1) throw ValidationError("dimension must be >= 1");
  double s = -std::log(static_cast<double>(dim));
  for (int m = 2; m <= dim; ++m) s += 1.0 / m;
  return s;
}

MeanEstimate sampled_mean_wehrl(int dim, std::size_t samples, std::uint64_t seed,
                                const SphereGrid& grid, unsigned threads) {
  if (dim < 2) throw ValidationError("dimension must be >= 2");
  if (samples < 2) throw ValidationError("need at least 2 samples");
  const SpinQuantum j(dim - 1);
  std::vector<double> values(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    Rng rng = stream_rng(seed, i);
    values[i] = wehrl_entropy(DensityMatrix::from_pure(haar_pure_state(dim, rng)), j, grid);
  });
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= samples;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (samples - 1);
  return {mean, std::sqrt(var / samples), samples};
}

void write_husimi_csv(std::ostream& os, const HusimiField& field, const SphereGrid& grid) {
  os << "theta,phi,H\n";
  for (const auto& p : grid.nodes())
    os << csv_number(p.theta) << ',' << csv_number(p.phi) << ',' << csv_number(field(p)) << '\n';
}

}  // namespace monge
