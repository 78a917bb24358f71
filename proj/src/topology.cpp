#include "monge/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "monge/errors.hpp"

namespace monge {

SpectrumType classify_eigenvalues(Eigen::VectorXd values, double eps) {
  if (values.size() == 0) throw ValidationError("empty spectrum");
  if (!(eps >= 0.0)) throw ValidationError("merge tolerance must be nonnegative");
  std::sort(values.data(), values.data() + values.size(), std::greater<>());
  SpectrumType t;
  t.dim = static_cast<int>(values.size());
  t.partition.push_back(1);
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values(i - 1) - values(i) <= eps)
      ++t.partition.back();
    else
      t.partition.push_back(1);
  }
  return t;
}

SpectrumType classify_spectrum(const DensityMatrix& rho, double eps) {
  return classify_eigenvalues(rho.spectrum(), eps);
}

namespace {

void check(const SpectrumType& t) {
  int s = 0;
  for (int k : t.partition) {
    if (k < 1) throw ValidationError("multiplicities must be positive");
    s += k;
  }
  if (t.partition.empty() || s != t.dim) throw ValidationError("multiplicities must sum to N");
}

}  // namespace

StratumDimension stratum_dimension(const SpectrumType& t) {
  check(t);
  StratumDimension d;
  d.flag = t.dim * t.dim;
  for (int k : t.partition) d.flag -= k * k;
  d.simplex = static_cast<int>(t.partition.size()) - 1;
  d.total = d.flag + d.simplex;
  return d;
}

std::string stratum_label(const SpectrumType& t) {
  check(t);
  std::string s = "M_";
  for (int k : t.partition) s += std::to_string(k);
  return s;
}

std::string stratum_decomposition(const SpectrumType& t) {
  check(t);
  std::string s;
  for (std::size_t i = 0; i < t.partition.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(t.partition[i]);
  }
  return s;
}

std::string stratum_ordering(const SpectrumType& t) {
  check(t);
  std::string s;
  int e = 1;
  for (std::size_t b = 0; b < t.partition.size(); ++b) {
    for (int r = 0; r < t.partition[b]; ++r, ++e) {
      if (e > 1) s += r == 0 ? ">" : "=";
      s += "E" + std::to_string(e);
    }
  }
  return s;
}

std::string stratum_structure(const SpectrumType& t) {
  check(t);
  const std::string n = std::to_string(t.dim);
  if (t.partition.size() == 1) return "[U(" + n + ")/U(" + n + ")]xG_1={rho_*}";
  std::vector<int> big;
  int ones = 0;
  for (int k : t.partition) {
    if (k == 1)
      ++ones;
    else
      big.push_back(k);
  }
  std::sort(big.begin(), big.end(), std::greater<>());
  std::vector<std::string> factors;
  for (int k : big) factors.push_back("U(" + std::to_string(k) + ")");
  if (ones == 1) factors.push_back("T");
  if (ones > 1) factors.push_back("T^" + std::to_string(ones));
  std::string group;
  for (std::size_t i = 0; i < factors.size(); ++i) group += (i ? "x" : "") + factors[i];
  if (factors.size() > 1) group = "(" + group + ")";
  return "[U(" + n + ")/" + group + "]xG_" + std::to_string(t.partition.size());
}

std::vector<SpectrumType> all_strata(int n) {
  if (n < 1 || n > 20) throw ValidationError("stratum listing supports 1 <= N <= 20");
  // Bit i of the mask set means "cut after position i+1".
  std::vector<SpectrumType> out;
  const std::uint32_t full = (1u << (n - 1)) - 1;
  for (std::uint32_t c = 0; c <= full; ++c) {
    const std::uint32_t mask = full - c;
    SpectrumType t;
    t.dim = n;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (mask & (1u << i)) {
        t.partition.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    t.partition.push_back(run);
    out.push_back(std::move(t));
  }
  std::stable_sort(out.begin(), out.end(), [](const SpectrumType& a, const SpectrumType& b) {
    if (a.partition.size() != b.partition.size()) return a.partition.size() > b.partition.size();
    return a.partition < b.partition;
  });
  return out;
}

std::uint64_t partition_count(int n) {
  if (n < 0 || n > 400) throw ValidationError("partition_count supports 0 <= n <= 400");
  // p[k] over parts of size at most `part`, growing the part size.
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int k = part; k <= n; ++k) p[k] += p[k - part];
  return p[n];
}

std::vector<std::vector<int>> enumerate_partitions(int n) {
  if (n < 1 || n > 60) throw ValidationError("enumerate_partitions supports 1 <= n <= 60");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, max_part); k >= 1; --k) {
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

double hardy_ramanujan(int n) {
  if (n < 1) throw ValidationError("Hardy-Ramanujan estimate needs n >= 1");
  return std::exp(std::numbers::pi * std::sqrt(2.0 * n / 3.0)) / (4.0 * std::sqrt(3.0) * n);
}

PartitionCensus partition_census(int n) {
  if (n < 1 || n > 64) throw ValidationError("partition census supports 1 <= N <= 64");
  PartitionCensus c;
  c.n = n;
  c.partitions = partition_count(n);
  // Pascal row n-1: patterns with m blocks choose m-1 of the n-1 cuts.
  std::vector<std::uint64_t> row{1};
  for (int r = 1; r <= n - 1; ++r) {
    std::vector<std::uint64_t> next(r + 1, 1);
    for (int k = 1; k < r; ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
  }
  c.parts_by_count = row;
  for (auto x : row) c.total_parts += x;
  return c;
}

}  // namespace monge
