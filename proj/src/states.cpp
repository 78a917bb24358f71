#include "monge/states.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "monge/special.hpp"

namespace monge {

void coherent_fill(int n, double theta, double phi, cplx* out) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  if (n <= 256) {
    // Ratio recurrence from the larger end; the starting power stays above
    // 2^-128 because max(s, c) >= 1/sqrt(2).
    if (c >= s) {
      double m = std::pow(c, n);
      const double t = s / c;
      out[0] = m;
      for (int k = 1; k <= n; ++k) {
        m *= t * std::sqrt((n - k + 1.0) / k);
        out[k] = m;
      }
    } else {
      double m = std::pow(s, n);
      const double t = c / s;
      out[n] = m;
      for (int k = n - 1; k >= 0; --k) {
        m *= t * std::sqrt((k + 1.0) / (n - k));
        out[k] = m;
      }
    }
  } else {
    for (int k = 0; k <= n; ++k) {
      // k = j - m; log form keeps large j from overflowing the binomial.
      if ((k > 0 && s == 0.0) || (k < n && c == 0.0)) {
        out[k] = 0.0;
        continue;
      }
      double lg = 0.5 * log_binomial(n, k);
      if (k > 0) lg += k * std::log(s);
      if (k < n) lg += (n - k) * std::log(c);
      out[k] = std::exp(lg);
    }
  }
  if (phi != 0.0) {
    const cplx step = std::polar(1.0, phi);
    cplx ph = 1.0;
    for (int k = 1; k <= n; ++k) {
      // re-anchor periodically so the running product does not drift
      ph = (k % 32 == 0) ? std::polar(1.0, k * phi) : ph * step;
      out[k] *= ph;
    }
  }
}

PureState coherent_amplitudes(SpinQuantum j, const SpherePoint& p) {
  Vector v(j.dim());
  coherent_fill(j.two_j(), p.theta, p.phi, v.data());
  return PureState::normalized(v);
}

PureState eigenstate(SpinQuantum j, int two_m) {
  if (std::abs(two_m) > j.two_j() || (j.two_j() - two_m) % 2 != 0)
    throw ValidationError("m must satisfy -j <= m <= j with j - m integer");
  Vector v = Vector::Zero(j.dim());
  v((j.two_j() - two_m) / 2) = 1.0;
  return PureState(v);
}

DensityMatrix rho_plus(SpinQuantum j) { return DensityMatrix::from_pure(eigenstate(j, j.two_j())); }
DensityMatrix rho_minus(SpinQuantum j) {
  return DensityMatrix::from_pure(eigenstate(j, -j.two_j()));
}

DensityMatrix rho_mix(SpinQuantum j, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("mixture weight a must lie in [0, 1]");
  return DensityMatrix(a * rho_plus(j).matrix() + (1.0 - a) * rho_minus(j).matrix());
}

DensityMatrix rho_star(SpinQuantum j) { return DensityMatrix::maximally_mixed(j.dim()); }

DensityMatrix coherent_density(SpinQuantum j, const SpherePoint& p) {
  return DensityMatrix::from_pure(coherent_amplitudes(j, p));
}

namespace {

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size() && std::isfinite(x)) return x;
  } catch (const std::logic_error&) {
  }
  throw ValidationError("bad number in " + what + ": '" + s + "'");
}

}  // namespace

StateSpec StateSpec::parse(const std::string& text) {
  StateSpec s;
  s.text = text;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  const bool has_arg = colon != std::string::npos;
  auto no_arg = [&](Kind k) {
    if (has_arg) throw ValidationError("descriptor '" + head + "' takes no argument");
    s.kind = k;
  };
  if (head == "plus") {
    no_arg(Kind::plus);
  } else if (head == "minus") {
    no_arg(Kind::minus);
  } else if (head == "star") {
    no_arg(Kind::star);
  } else if (head == "mix") {
    s.kind = Kind::mix;
    s.a = parse_real(arg, text);
    if (!(s.a >= 0.0 && s.a <= 1.0)) throw ValidationError("mix:a requires a in [0, 1]");
  } else if (head == "jm") {
    s.kind = Kind::jm;
    s.two_m = parse_twice_half_integer(arg);
  } else if (head == "coh") {
    s.kind = Kind::coherent;
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw ValidationError("coh:theta,phi needs two angles");
    s.theta = parse_real(arg.substr(0, comma), text);
    s.phi = parse_real(arg.substr(comma + 1), text);
    if (!(s.theta >= 0.0 && s.theta <= std::numbers::pi))
      throw ValidationError("coherent state theta must lie in [0, pi]");
  } else if (head == "json") {
    s.kind = Kind::json;
    s.path = arg;
    if (s.path.empty()) throw ValidationError("json: descriptor needs a path");
  } else {
    throw ValidationError("unknown state descriptor: '" + text + "'");
  }
  return s;
}

bool StateSpec::is_pure() const {
  return kind == Kind::plus || kind == Kind::minus || kind == Kind::jm ||
         kind == Kind::coherent || (kind == Kind::mix && (a == 0.0 || a == 1.0));
}

DensityMatrix named_state(const StateSpec& spec, SpinQuantum j) {
  switch (spec.kind) {
    case StateSpec::Kind::plus: return rho_plus(j);
    case StateSpec::Kind::minus: return rho_minus(j);
    case StateSpec::Kind::star: return rho_star(j);
    case StateSpec::Kind::mix: return rho_mix(j, spec.a);
    case StateSpec::Kind::jm: return DensityMatrix::from_pure(eigenstate(j, spec.two_m));
    case StateSpec::Kind::coherent: return coherent_density(j, SpherePoint(spec.theta, spec.phi));
    case StateSpec::Kind::json: {
      DensityMatrix rho = load_density(spec.path);
      if (rho.dim() != j.dim())
        throw ValidationError("state in " + spec.path + " has dimension " +
                              std::to_string(rho.dim()) + ", expected " +
                              std::to_string(j.dim()));
      return rho;
    }
  }
  throw ValidationError("unknown descriptor kind");
}

PureState named_pure_state(const StateSpec& spec, SpinQuantum j) {
  switch (spec.kind) {
    case StateSpec::Kind::plus: return eigenstate(j, j.two_j());
    case StateSpec::Kind::minus: return eigenstate(j, -j.two_j());
    case StateSpec::Kind::jm: return eigenstate(j, spec.two_m);
    case StateSpec::Kind::coherent: return coherent_amplitudes(j, SpherePoint(spec.theta, spec.phi));
    default: return pure_from_density(named_state(spec, j));
  }
}

PureState pure_from_density(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  if (es.info() != Eigen::Success) throw SolverError("Hermitian eigensolver did not converge");
  const int top = rho.dim() - 1;
  if (std::abs(es.eigenvalues()(top) - 1.0) > tol::psd)
    throw ValidationError("state is not pure");
  Vector v = es.eigenvectors().col(top);
  // Fix the global phase so the largest component is real and positive.
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  v *= std::polar(1.0, -std::arg(v(idx)));
  return PureState::normalized(v);
}

DensityMatrix density_from_json(const nlohmann::json& doc) {
  try {
    const int n = doc.at("dim").get<int>();
    if (n < 1) throw ValidationError("dim must be positive");
    const auto& re = doc.at("re");
    const bool has_im = doc.contains("im");
    if (!re.is_array() || static_cast<int>(re.size()) != n)
      throw ValidationError("'re' must be a dim x dim array");
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
      if (!re[r].is_array() || static_cast<int>(re[r].size()) != n)
        throw ValidationError("'re' must be a dim x dim array");
      for (int c = 0; c < n; ++c) {
        double im = 0.0;
        if (has_im) {
          const auto& row = doc.at("im").at(r);
          if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ValidationError("'im' must be a dim x dim array");
          im = row.at(c).get<double>();
        }
        m(r, c) = cplx(re[r][c].get<double>(), im);
      }
    }
    return DensityMatrix(m);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed density matrix JSON: ") + e.what());
  }
}

nlohmann::json density_to_json(const DensityMatrix& rho) {
  const int n = rho.dim();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int r = 0; r < n; ++r) {
    nlohmann::json rr = nlohmann::json::array(), ir = nlohmann::json::array();
    for (int c = 0; c < n; ++c) {
      rr.push_back(rho(r, c).real());
      ir.push_back(rho(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"dim", n}, {"re", re}, {"im", im}};
}

DensityMatrix load_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
  return density_from_json(doc);
}

}  // namespace monge
