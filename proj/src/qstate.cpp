#include "monge/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace monge {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, m.norm()); }

Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eigen(const Matrix& m, bool vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, vectors ? Eigen::ComputeEigenvectors
                                                      : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("Hermitian eigensolver did not converge");
  return es;
}

// Distances are evaluated on a fixed argument order so that d(a,b) and
// d(b,a) agree bit for bit.
bool ordered_before(const Matrix& a, const Matrix& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx x = a.data()[i], y = b.data()[i];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw ValidationError(os.str());
  }
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

SpinQuantum::SpinQuantum(int two_j) : two_j_(two_j) {
  if (two_j < 1) throw ValidationError("spin quantum number must satisfy 2j >= 1");
}

SpinQuantum SpinQuantum::parse(const std::string& text) {
  return SpinQuantum(parse_twice_half_integer(text));
}

int parse_twice_half_integer(const std::string& text) {
  auto fail = [&]() -> int {
    throw ValidationError("not a half-integer: '" + text + "'");
  };
  if (text.empty()) return fail();
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      const long p = std::stol(num, &used);
      if (used != num.size()) return fail();
      const long q = std::stol(den, &used);
      if (used != den.size()) return fail();
      if (q == 1) return static_cast<int>(2 * p);
      if (q == 2) return static_cast<int>(p);
      return fail();
    }
    const double x = std::stod(text, &used);
    if (used != text.size()) return fail();
    const double twice = 2.0 * x;
    const double r = std::round(twice);
    if (std::abs(twice - r) > 1e-9) return fail();
    return static_cast<int>(r);
  } catch (const std::logic_error&) {
    return fail();
  }
}

PureState::PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() < 1) throw ValidationError("pure state must have dimension >= 1");
  if (std::abs(amp_.norm() - 1.0) > tol::norm)
    throw ValidationError("pure state is not normalized");
}

PureState PureState::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalize a zero vector");
  return PureState(v / n);
}

void require_hermitian(const Matrix& h, const char* what) {
  if (h.rows() != h.cols()) throw ValidationError(std::string(what) + " is not square");
  if ((h - h.adjoint()).norm() > tol::herm * scale_of(h))
    throw ValidationError(std::string(what) + " is not Hermitian");
}

DensityMatrix::DensityMatrix(Matrix m) {
  if (m.rows() < 1) throw ValidationError("density matrix must have dimension >= 1");
  require_hermitian(m, "density matrix");
  const cplx tr = m.trace();
  if (std::abs(tr - cplx(1.0, 0.0)) > tol::trace)
    throw ValidationError("density matrix trace differs from 1");
  m_ = hermitize(m);
  const double lowest = hermitian_eigen(m_, false).eigenvalues()(0);
  if (lowest < -tol::psd * scale_of(m_))
    throw ValidationError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw ValidationError("dimension must be >= 1");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Eigen::VectorXd DensityMatrix::spectrum() const {
  Eigen::VectorXd ev = hermitian_eigen(m_, false).eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

bool DensityMatrix::is_diagonal(double eps) const {
  for (int r = 0; r < dim(); ++r)
    for (int c = 0; c < dim(); ++c)
      if (r != c && std::abs(m_(r, c)) > eps) return false;
  return true;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a, b);
  if (ordered_before(b.matrix(), a.matrix())) return trace_distance(b, a);
  const Matrix diff = a.matrix() - b.matrix();
  return hermitian_eigen(diff, false).eigenvalues().cwiseAbs().sum();
}

double hs_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a, b);
  if (ordered_before(b.matrix(), a.matrix())) return hs_distance(b, a);
  return (a.matrix() - b.matrix()).norm();
}

double bures_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a, b);
  if (ordered_before(b.matrix(), a.matrix())) return bures_distance(b, a);
  const auto es = hermitian_eigen(a.matrix(), true);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_a = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
  const Matrix inner = hermitize(sqrt_a * b.matrix() * sqrt_a);
  const Eigen::VectorXd mu = hermitian_eigen(inner, false).eigenvalues();
  double fid = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu(i) > tol::psd) fid += std::sqrt(mu(i));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - fid)));
}

double transition_probability(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ValidationError("dimension mismatch between pure states");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fubini_study(const PureState& a, const PureState& b) {
  const double p = std::clamp(transition_probability(a, b), 0.0, 1.0);
  return 2.0 * std::acos(std::sqrt(p));
}

Matrix unitary_from_hermitian(const Matrix& h, double t) {
  require_hermitian(h, "generator");
  const auto es = hermitian_eigen(hermitize(h), true);
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::polar(1.0, t * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw ValidationError("unitary has the wrong dimension");
  return DensityMatrix(hermitize(u * rho.matrix() * u.adjoint()));
}

DensityMatrix kicked_step(const DensityMatrix& rho, const Matrix& h) {
  if (h.rows() != rho.dim()) throw ValidationError("Hamiltonian has the wrong dimension");
  return conjugate(rho, unitary_from_hermitian(h, 1.0));
}

PureState evolve(const Matrix& u, const PureState& psi) {
  if (u.cols() != psi.dim()) throw ValidationError("operator has the wrong dimension");
  return PureState::normalized(u * psi.amplitudes());
}

Matrix jz(SpinQuantum j) {
  Matrix m = Matrix::Zero(j.dim(), j.dim());
  for (int k = 0; k < j.dim(); ++k) m(k, k) = j.j() - k;
  return m;
}

Matrix jplus(SpinQuantum j) {
  Matrix m = Matrix::Zero(j.dim(), j.dim());
  const double jj = j.j();
  for (int k = 1; k < j.dim(); ++k) {
    const double mm = jj - k;
    m(k - 1, k) = std::sqrt(jj * (jj + 1.0) - mm * (mm + 1.0));
  }
  return m;
}

Matrix jminus(SpinQuantum j) { return jplus(j).adjoint(); }

Matrix jx(SpinQuantum j) { return 0.5 * (jplus(j) + jminus(j)); }

Matrix jy(SpinQuantum j) { return cplx(0.0, -0.5) * (jplus(j) - jminus(j)); }

Matrix rotation(SpinQuantum j, Axis axis, double angle) {
  switch (axis) {
    case Axis::x: return unitary_from_hermitian(jx(j), -angle);
    case Axis::y: return unitary_from_hermitian(jy(j), -angle);
    case Axis::z: break;
  }
  Matrix m = Matrix::Zero(j.dim(), j.dim());
  for (int k = 0; k < j.dim(); ++k) m(k, k) = std::polar(1.0, -angle * (j.j() - k));
  return m;
}

}  // namespace monge
