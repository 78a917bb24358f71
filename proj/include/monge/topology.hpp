#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monge/qstate.hpp"

namespace monge {

/// Degeneracy pattern of a spectrum: partition[i] is the multiplicity of
/// the i-th largest distinct eigenvalue.
struct SpectrumType {
  int dim = 0;
  std::vector<int> partition;
};

/// Sorts descending and merges neighbours closer than eps (single linkage).
SpectrumType classify_eigenvalues(Eigen::VectorXd values, double eps = 1e-8);
SpectrumType classify_spectrum(const DensityMatrix& rho, double eps = 1e-8);

struct StratumDimension {
  int total = 0;    // D = flag + simplex
  int flag = 0;     // real dimension of U(N)/(U(k_1) x ... x U(k_n))
  int simplex = 0;  // n - 1
};
StratumDimension stratum_dimension(const SpectrumType& t);

/// "M_112" style label.
std::string stratum_label(const SpectrumType& t);
/// "1+1+2"
std::string stratum_decomposition(const SpectrumType& t);
/// "E1>E2>E3=E4"
std::string stratum_ordering(const SpectrumType& t);
/// "[U(4)/(U(2)xT^2)]xG_3"
std::string stratum_structure(const SpectrumType& t);

/// Every ordered multiplicity pattern of dimension n (2^{n-1} of them), from
/// the generic (1,...,1) down to (n).
std::vector<SpectrumType> all_strata(int n);

/// Number of integer partitions of n, exact (n <= 400).
std::uint64_t partition_count(int n);
/// All partitions of n, each in non-increasing order.
std::vector<std::vector<int>> enumerate_partitions(int n);
/// exp(pi sqrt(2n/3)) / (4 sqrt(3) n)
double hardy_ramanujan(int n);

struct PartitionCensus {
  int n = 0;
  std::uint64_t partitions = 0;
  std::vector<std::uint64_t> parts_by_count;  // index m-1: patterns with m blocks
  std::uint64_t total_parts = 0;
};
PartitionCensus partition_census(int n);

}  // namespace monge
