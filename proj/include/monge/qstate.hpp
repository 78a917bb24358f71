#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monge/errors.hpp"

namespace monge {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double norm = 1e-10;
inline constexpr double psd = 1e-9;
}  // namespace tol

/// Spin quantum number stored as 2j, so half-integers stay exact.
class SpinQuantum {
 public:
  explicit SpinQuantum(int two_j);

  /// Parses "3/2", "1.5", "2". Throws ValidationError for anything that is
  /// not a positive multiple of 1/2.
  static SpinQuantum parse(const std::string& text);

  int two_j() const { return two_j_; }
  double j() const { return 0.5 * two_j_; }
  int dim() const { return two_j_ + 1; }
  bool is_integer() const { return two_j_ % 2 == 0; }

  friend bool operator==(SpinQuantum a, SpinQuantum b) { return a.two_j_ == b.two_j_; }

 private:
  int two_j_;
};

/// Parses a half-integer such as "-1/2", "3/2", "0.5", "1" into twice its
/// value.
int parse_twice_half_integer(const std::string& text);

/// Unit vector in C^N. Components are ordered |j,j>, |j,j-1>, ..., |j,-j>.
class PureState {
 public:
  explicit PureState(Vector amplitudes);
  static PureState normalized(const Vector& v);

  int dim() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }

 private:
  Vector amp_;
};

class DensityMatrix {
 public:
  /// Validates hermiticity, unit trace and positivity within tol::*.
  explicit DensityMatrix(Matrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  /// Eigenvalues in descending order.
  Eigen::VectorXd spectrum() const;
  bool is_diagonal(double eps = 1e-12) const;

 private:
  Matrix m_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double hs_distance(const DensityMatrix& a, const DensityMatrix& b);
double bures_distance(const DensityMatrix& a, const DensityMatrix& b);

/// |<a|b>|^2
double transition_probability(const PureState& a, const PureState& b);
/// 2 arccos sqrt(p), in [0, pi].
double fubini_study(const PureState& a, const PureState& b);

/// exp(i t H) for Hermitian H.
Matrix unitary_from_hermitian(const Matrix& h, double t = 1.0);

/// rho -> exp(iH) rho exp(-iH).
DensityMatrix kicked_step(const DensityMatrix& rho, const Matrix& h);
/// rho -> U rho U^dagger; U must be unitary.
DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u);
PureState evolve(const Matrix& u, const PureState& psi);

// Angular momentum operators in the descending-m basis.
Matrix jz(SpinQuantum j);
Matrix jplus(SpinQuantum j);
Matrix jminus(SpinQuantum j);
Matrix jx(SpinQuantum j);
Matrix jy(SpinQuantum j);

enum class Axis { x, y, z };
/// exp(-i angle J_axis).
Matrix rotation(SpinQuantum j, Axis axis, double angle);

/// Throws ValidationError when the matrix is not Hermitian within
/// tol::herm (relative to its norm).
void require_hermitian(const Matrix& h, const char* what);

}  // namespace monge
