#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "monge/analytic.hpp"
#include "monge/dynamics.hpp"
#include "monge/format.hpp"
#include "monge/husimi.hpp"
#include "monge/parallel.hpp"
#include "monge/special.hpp"
#include "monge/states.hpp"
#include "monge/stellar.hpp"
#include "monge/topology.hpp"
#include "monge/transport.hpp"

namespace monge::cli {

namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

enum class Format { text, csv, json };

Format parse_format(const std::string& text, Format fallback) {
  if (text.empty()) return fallback;
  if (text == "text") return Format::text;
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw ValidationError("format must be text, csv or json, got '" + text + "'");
}

struct Config {
  std::string j_text;
  std::string grid_text = "64x128";
  std::uint64_t seed = 1;
  std::string format;
  std::string out_path;
  unsigned threads = 0;

  SpinQuantum j() const {
    if (j_text.empty()) throw ValidationError("--j is required for this command");
    return SpinQuantum::parse(j_text);
  }
};

// Text cell padding for aligned tables.
std::string table_text(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::string cell = r[c];
      if (c + 1 < r.size()) cell.resize(width[c] + 2, ' ');
      line += cell;
    }
    os << line << '\n';
  }
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// ---- dist -------------------------------------------------------------

struct DistArgs {
  std::string a, b;
  std::string metric = "monge";
  std::string plan_path;
};

void cmd_dist(const Config& cfg, const DistArgs& args, std::ostream& out) {
  static const std::vector<std::string> metrics{"trace", "hs",    "bures",         "fs",
                                                "monge", "monge-numeric", "smonge"};
  if (std::find(metrics.begin(), metrics.end(), args.metric) == metrics.end())
    throw ValidationError("unknown metric '" + args.metric + "'");
  const SpinQuantum j = cfg.j();
  const StateSpec sa = StateSpec::parse(args.a);
  const StateSpec sb = StateSpec::parse(args.b);
  const Format fmt = parse_format(cfg.format, Format::text);
  if (!args.plan_path.empty() && args.metric != "monge-numeric")
    throw ValidationError("--plan is only available with --metric monge-numeric");

  if (args.metric == "monge-numeric") {
    const auto grid = parse_grid(cfg.grid_text);
    const MongeBracket r = monge_numeric(named_state(sa, j), named_state(sb, j), j, grid);
    if (!args.plan_path.empty()) {
      std::ofstream plan(args.plan_path);
      if (!plan) throw ValidationError("cannot write " + args.plan_path);
      write_plan_csv(plan, r.plan, *grid, *grid);
    }
    json doc = bracket_json(r);
    if (fmt == Format::json) {
      doc["metric"] = args.metric;
      out << doc.dump(2) << '\n';
    } else if (fmt == Format::csv) {
      out << "estimate,lower,upper,resolution,l1_bound,discretization_radius,pivots\n";
      out << csv_number(r.estimate) << ',' << csv_number(r.lower) << ',' << csv_number(r.upper)
          << ',' << doc["resolution"].get<std::string>() << ',' << csv_number(r.l1_bound) << ','
          << csv_number(r.discretization_radius) << ',' << r.plan.pivots << '\n';
    } else {
      out << "estimate " << number(r.estimate) << '\n'
          << "lower " << number(r.lower) << '\n'
          << "upper " << number(r.upper) << '\n'
          << "resolution " << doc["resolution"].get<std::string>() << '\n'
          << "l1_bound " << number(r.l1_bound) << '\n'
          << "discretization_radius " << number(r.discretization_radius) << '\n'
          << "pivots " << r.plan.pivots << '\n';
    }
    return;
  }

  double value = 0.0;
  std::string path, detail;
  if (args.metric == "fs" || args.metric == "smonge") {
    if (!sa.is_pure() || !sb.is_pure())
      throw ValidationError("metric " + args.metric + " needs pure states");
    const PureState pa = named_pure_state(sa, j);
    const PureState pb = named_pure_state(sb, j);
    value = args.metric == "fs" ? fubini_study(pa, pb) : simplified_monge(pa, pb, j);
  } else {
    const DensityMatrix da = named_state(sa, j);
    const DensityMatrix db = named_state(sb, j);
    if (args.metric == "trace") value = trace_distance(da, db);
    if (args.metric == "hs") value = hs_distance(da, db);
    if (args.metric == "bures") value = bures_distance(da, db);
    if (args.metric == "monge") {
      const MongeResult r = monge_exact(da, db, j);
      value = r.value;
      path = r.path;
      detail = r.detail;
    }
  }
  if (fmt == Format::json) {
    json doc{{"metric", args.metric}, {"value", value}};
    if (!path.empty()) {
      doc["path"] = path;
      doc["detail"] = detail;
    }
    out << doc.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    out << "metric,value,path\n"
        << args.metric << ',' << csv_number(value) << ',' << csv_field(path) << '\n';
  } else {
    out << number(value);
    if (!path.empty()) out << "  path: " << path << " (" << detail << ")";
    out << '\n';
  }
}

// ---- metric comparison -----------------------------------------------------------

struct ComparisonArgs {
  double a = 0.5;
  double xi = pi / 2;
};

struct ComparisonRow {
  std::string pair;
  double trace, hs, bures, monge;
  std::string path;
  double asymptotic;
};

ComparisonRow comparison_row(const std::string& name, const DensityMatrix& x, const DensityMatrix& y,
                     SpinQuantum j, double asymptotic, const Config& cfg) {
  ComparisonRow r{name, trace_distance(x, y), hs_distance(x, y), bures_distance(x, y), 0.0, "", asymptotic};
  try {
    const MongeResult m = monge_exact(x, y, j);
    r.monge = m.value;
    r.path = m.path;
  } catch (const PathRefused&) {
    const MongeBracket b = monge_numeric(x, y, j, parse_grid(cfg.grid_text));
    r.monge = b.estimate;
    r.path = "numeric [" + number(b.lower) + ", " + number(b.upper) + "]";
  }
  return r;
}

void cmd_comparison(const Config& cfg, const ComparisonArgs& args, std::ostream& out) {
  const SpinQuantum j = cfg.j();
  if (!(args.a >= 0.0 && args.a <= 1.0)) throw ValidationError("--a must lie in [0, 1]");
  if (!(args.xi >= 0.0 && args.xi <= pi)) throw ValidationError("--xi must lie in [0, pi]");
  const double n = j.dim();
  const double line = pi - 2.0 * std::sqrt(pi / n);
  const DensityMatrix plus = rho_plus(j), minus = rho_minus(j), star = rho_star(j);
  const DensityMatrix mix = rho_mix(j, args.a);
  const DensityMatrix coh = coherent_density(j, SpherePoint(args.xi, 0.0));

  std::vector<ComparisonRow> rows;
  rows.push_back(comparison_row("(rho+,rho-)", plus, minus, j, line, cfg));
  rows.push_back(comparison_row("(rho+,rho*)", plus, star, j, 0.5 * line, cfg));
  if (j.is_integer())
    rows.push_back(comparison_row("(|0>,rho*)", DensityMatrix::from_pure(eigenstate(j, 0)), star, j,
                              pi / 2 - 1, cfg));
  for (int two_m = j.two_j(); two_m > -j.two_j(); two_m -= 2) {
    const double nn = 0.5 * (j.two_j() + two_m);  // n = j + m
    const std::string name = "(|" + std::to_string(two_m) + "/2>,|" + std::to_string(two_m - 2) + "/2>)";
    rows.push_back(comparison_row(name, DensityMatrix::from_pure(eigenstate(j, two_m)),
                              DensityMatrix::from_pure(eigenstate(j, two_m - 2)), j,
                              1.0 / std::sqrt((n - nn) * nn), cfg));
  }
  rows.push_back(comparison_row("(rho+,rho_a)", plus, mix, j, line * (1 - args.a), cfg));
  rows.push_back(comparison_row("(rho-,rho_a)", minus, mix, j, line * args.a, cfg));
  rows.push_back(comparison_row("(rho+,rho_xi)", plus, coh, j, args.xi, cfg));
  rows.push_back(comparison_row("(rho-,rho_xi)", minus, coh, j, pi - args.xi, cfg));

  const Format fmt = parse_format(cfg.format, Format::text);
  if (fmt == Format::json) {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"pair", r.pair},
                     {"trace", r.trace},
                     {"hs", r.hs},
                     {"bures", r.bures},
                     {"monge", r.monge},
                     {"path", r.path},
                     {"asymptotic", r.asymptotic}});
    out << json{{"j", j.j()}, {"a", args.a}, {"xi", args.xi}, {"rows", doc}}.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    out << "pair,trace,hs,bures,monge,path,asymptotic\n";
    for (const auto& r : rows)
      out << csv_field(r.pair) << ',' << csv_number(r.trace) << ',' << csv_number(r.hs) << ','
          << csv_number(r.bures) << ',' << csv_number(r.monge) << ',' << csv_field(r.path) << ','
          << csv_number(r.asymptotic) << '\n';
  } else {
    std::vector<std::vector<std::string>> cells{
        {"pair", "trace", "hs", "bures", "monge", "path", "large-N"}};
    for (const auto& r : rows)
      cells.push_back({r.pair, number(r.trace), number(r.hs), number(r.bures), number(r.monge),
                       r.path, number(r.asymptotic)});
    out << "j = " << j.j() << ", a = " << number(args.a) << ", xi = " << number(args.xi) << '\n'
        << table_text(cells);
  }
}

// ---- husimi-export ----------------------------------------------------

void cmd_husimi(const Config& cfg, const std::string& state, std::ostream& out) {
  const SpinQuantum j = cfg.j();
  const auto grid = parse_grid(cfg.grid_text);
  const HusimiField h(named_state(StateSpec::parse(state), j), j);
  const Format fmt = parse_format(cfg.format, Format::csv);
  if (fmt == Format::csv) {
    write_husimi_csv(out, h, *grid);
    return;
  }
  const auto values = h.sample(*grid);
  if (fmt == Format::json) {
    json doc = json::array();
    for (std::size_t i = 0; i < grid->size(); ++i)
      doc.push_back({{"theta", grid->nodes()[i].theta}, {"phi", grid->nodes()[i].phi}, {"H", values[i]}});
    out << doc.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < grid->size(); ++i)
      out << number(grid->nodes()[i].theta) << ' ' << number(grid->nodes()[i].phi) << ' '
          << number(values[i]) << '\n';
  }
}

// ---- stellar ----------------------------------------------------------

void cmd_stellar(const Config& cfg, const std::string& state, std::ostream& out) {
  const SpinQuantum j = cfg.j();
  const StateSpec spec = StateSpec::parse(state);
  if (!spec.is_pure()) throw ValidationError("stellar roots need a pure state");
  const StellarRoots roots = stellar_roots(named_pure_state(spec, j), j);
  const Format fmt = parse_format(cfg.format, Format::json);
  if (fmt == Format::json) {
    json doc = json::array();
    for (const auto& p : roots.points) doc.push_back({{"theta", p.theta}, {"phi", p.phi}});
    out << doc.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    out << "theta,phi\n";
    for (const auto& p : roots.points) out << csv_number(p.theta) << ',' << csv_number(p.phi) << '\n';
  } else {
    for (const auto& p : roots.points) out << number(p.theta) << ' ' << number(p.phi) << '\n';
  }
}

// ---- stats ------------------------------------------------------------

struct StatsArgs {
  std::string kind = "distance";
  std::string reference = "coh:0,0";
  std::size_t samples = 1000;
  std::string js;
};

std::vector<SpinQuantum> parse_spin_list(const std::string& text) {
  std::vector<SpinQuantum> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(SpinQuantum::parse(item));
  return out;
}

void cmd_stats(const Config& cfg, const StatsArgs& args, std::ostream& out) {
  if (args.samples < 1) throw ValidationError("--samples must be positive");
  struct Row {
    int dim;
    MeanEstimate e;
  };
  std::vector<Row> rows;
  std::optional<double> slope, prediction;
  if (args.kind == "distance") {
    const SpinQuantum j = cfg.j();
    const StateSpec ref = StateSpec::parse(args.reference);
    if (!ref.is_pure()) throw ValidationError("the reference must be a pure state");
    rows.push_back({j.dim(), random_state_distance_stats(j, named_pure_state(ref, j), args.samples,
                                                         cfg.seed, cfg.threads)});
    if (ref.kind == StateSpec::Kind::coherent) prediction = pi / 2;
    if (ref.kind == StateSpec::Kind::jm) prediction = eigenstate_mean_prediction(j, ref.two_m);
  } else if (args.kind == "scaling") {
    const auto js = args.js.empty() ? std::vector<SpinQuantum>{} : parse_spin_list(args.js);
    const ScalingTable t = random_pair_scaling(js, args.samples, cfg.seed, cfg.threads);
    for (const auto& r : t.rows) rows.push_back({r.dim, r.distance});
    slope = t.slope;
  } else if (args.kind == "wehrl") {
    const SpinQuantum j = cfg.j();
    rows.push_back({j.dim(), sampled_mean_wehrl(j.dim(), args.samples, cfg.seed,
                                                default_entropy_grid(), cfg.threads)});
    prediction = mean_wehrl(j.dim());
  } else {
    throw ValidationError("--kind must be distance, scaling or wehrl");
  }

  const Format fmt = parse_format(cfg.format, Format::csv);
  if (fmt == Format::json) {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"N", r.dim}, {"mean", r.e.mean}, {"stderr", r.e.std_error}, {"samples", r.e.samples}});
    json top{{"kind", args.kind}, {"rows", doc}};
    if (slope) top["slope"] = *slope;
    if (prediction) top["prediction"] = *prediction;
    out << top.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    out << "N,mean,stderr\n";
    for (const auto& r : rows)
      out << r.dim << ',' << csv_number(r.e.mean) << ',' << csv_number(r.e.std_error) << '\n';
  } else {
    std::vector<std::vector<std::string>> cells{{"N", "mean", "stderr"}};
    for (const auto& r : rows)
      cells.push_back({std::to_string(r.dim), number(r.e.mean), number(r.e.std_error)});
    out << table_text(cells);
    if (slope) out << "slope " << number(*slope) << '\n';
    if (prediction) out << "large-j prediction " << number(*prediction) << '\n';
  }
}

// ---- lyapunov ---------------------------------------------------------

struct LyapunovArgs {
  double p = 1.7;
  double k = 6.0;
  double xi0 = 0.1;
  double theta0 = 1.0;
  double phi0 = 0.5;
  int steps = 20;
  std::string metric = "smonge";
};

void cmd_lyapunov(const Config& cfg, const LyapunovArgs& args, std::ostream& out) {
  DivergenceRun run;
  run.j = cfg.j();
  run.p = args.p;
  run.k = args.k;
  run.xi0 = args.xi0;
  if (!(args.theta0 >= 0.0 && args.theta0 <= pi)) throw ValidationError("--theta0 must lie in [0, pi]");
  run.start = SpherePoint(args.theta0, args.phi0);
  run.steps = args.steps;
  if (args.metric == "smonge") {
    run.metric = DivergenceMetric::simplified;
  } else if (args.metric == "monge-numeric") {
    run.metric = DivergenceMetric::numeric;
    run.grid = parse_grid(cfg.grid_text);
  } else {
    throw ValidationError("lyapunov metric must be smonge or monge-numeric");
  }
  const auto series = divergence_series(run);
  const Format fmt = parse_format(cfg.format, Format::csv);
  if (fmt == Format::json) {
    json doc = json::array();
    for (const auto& s : series) {
      json row{{"t", s.t}, {"distance", s.distance}, {"lambda", nullptr}};
      if (std::isfinite(s.lambda)) row["lambda"] = s.lambda;
      doc.push_back(row);
    }
    out << doc.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    out << "t,distance,lambda\n";
    for (const auto& s : series)
      out << s.t << ',' << csv_number(s.distance) << ','
          << (std::isfinite(s.lambda) ? csv_number(s.lambda) : std::string()) << '\n';
  } else {
    std::vector<std::vector<std::string>> cells{{"t", "distance", "lambda"}};
    for (const auto& s : series)
      cells.push_back({std::to_string(s.t), number(s.distance),
                       std::isfinite(s.lambda) ? number(s.lambda) : std::string("-")});
    out << table_text(cells);
  }
}

// ---- localization -----------------------------------------------------

struct LocalizationArgs {
  std::string op = "jz";
  double p = 1.7;
  double k = 6.0;
};

Matrix operator_from_spec(const std::string& text, SpinQuantum j, const LocalizationArgs& args) {
  if (text == "jz") return jz(j);
  if (text == "jx") return jx(j);
  if (text == "jy") return jy(j);
  if (text == "identity") return Matrix::Identity(j.dim(), j.dim());
  if (text == "kicked") return kicked_top(j, args.p, args.k);
  if (text.rfind("json:", 0) == 0) {
    const std::string path = text.substr(5);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ValidationError(path + ": " + e.what());
    }
    const int n = doc.value("dim", 0);
    if (n != j.dim()) throw ValidationError("operator dimension does not match j");
    Matrix m(n, n);
    try {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          m(r, c) = cplx(doc.at("re").at(r).at(c).get<double>(),
                         doc.contains("im") ? doc.at("im").at(r).at(c).get<double>() : 0.0);
    } catch (const json::exception& e) {
      throw ValidationError(path + ": " + e.what());
    }
    return m;
  }
  throw ValidationError("operator must be jz, jx, jy, identity, kicked or json:<path>");
}

void cmd_localization(const Config& cfg, const LocalizationArgs& args, std::ostream& out) {
  const SpinQuantum j = cfg.j();
  const Localization loc = localization(operator_from_spec(args.op, j, args), j, parse_grid(cfg.grid_text));
  const Format fmt = parse_format(cfg.format, Format::text);
  if (fmt == Format::json) {
    out << json{{"gamma", loc.gamma},
                {"degenerate", loc.degenerate},
                {"distances", loc.distances},
                {"paths", loc.paths},
                {"coherent_bound", coherent_to_star(j)}}
               .dump(2)
        << '\n';
  } else if (fmt == Format::csv) {
    out << "index,distance,path\n";
    for (std::size_t i = 0; i < loc.distances.size(); ++i)
      out << i << ',' << csv_number(loc.distances[i]) << ',' << loc.paths[i] << '\n';
  } else {
    out << "gamma " << number(loc.gamma) << '\n';
    out << "coherent bound " << number(coherent_to_star(j)) << '\n';
    if (loc.degenerate) out << "degenerate operator: eigenbasis is arbitrary\n";
    for (std::size_t i = 0; i < loc.distances.size(); ++i)
      out << i << ' ' << number(loc.distances[i]) << ' ' << loc.paths[i] << '\n';
  }
}

// ---- topology ---------------------------------------------------------

struct TopologyArgs {
  int n = 0;
  std::string state;
  double eps = 1e-8;
};

void cmd_topology(const Config& cfg, const TopologyArgs& args, std::ostream& out) {
  const Format fmt = parse_format(cfg.format, Format::text);
  if (!args.state.empty()) {
    const SpinQuantum j = cfg.j();
    const SpectrumType t = classify_spectrum(named_state(StateSpec::parse(args.state), j), args.eps);
    const StratumDimension d = stratum_dimension(t);
    if (fmt == Format::json) {
      out << json{{"label", stratum_label(t)}, {"partition", t.partition}, {"D", d.total},
                  {"D1", d.flag}, {"D2", d.simplex}, {"structure", stratum_structure(t)}}
                 .dump(2)
          << '\n';
    } else {
      out << stratum_label(t) << ' ' << stratum_structure(t) << ' ' << d.total << '=' << d.flag
          << '+' << d.simplex << '\n';
    }
    return;
  }
  if (args.n < 1) throw ValidationError("--n must be a positive dimension");
  const auto strata = all_strata(args.n);
  const PartitionCensus census = partition_census(args.n);
  if (fmt == Format::json) {
    json rows = json::array();
    for (const auto& t : strata) {
      const auto d = stratum_dimension(t);
      rows.push_back({{"label", stratum_label(t)},
                      {"decomposition", stratum_decomposition(t)},
                      {"subspace", stratum_ordering(t)},
                      {"structure", stratum_structure(t)},
                      {"D", d.total},
                      {"D1", d.flag},
                      {"D2", d.simplex}});
    }
    out << json{{"N", args.n},
                {"partitions", census.partitions},
                {"parts_by_count", census.parts_by_count},
                {"total_parts", census.total_parts},
                {"strata", rows}}
               .dump(2)
        << '\n';
  } else if (fmt == Format::csv) {
    out << "label,decomposition,subspace,structure,D,D1,D2\n";
    for (const auto& t : strata) {
      const auto d = stratum_dimension(t);
      out << stratum_label(t) << ',' << stratum_decomposition(t) << ',' << stratum_ordering(t) << ','
          << csv_field(stratum_structure(t)) << ',' << d.total << ',' << d.flag << ',' << d.simplex
          << '\n';
    }
  } else {
    std::vector<std::vector<std::string>> cells{
        {"label", "decomposition", "subspace", "structure", "D=D1+D2"}};
    for (const auto& t : strata) {
      const auto d = stratum_dimension(t);
      cells.push_back({stratum_label(t), stratum_decomposition(t), stratum_ordering(t),
                       stratum_structure(t),
                       std::to_string(d.total) + "=" + std::to_string(d.flag) + "+" +
                           std::to_string(d.simplex)});
    }
    out << table_text(cells);
    out << "P(N) = " << census.partitions << ", parts = " << census.total_parts << " (by block count:";
    for (auto c : census.parts_by_count) out << ' ' << c;
    out << ")\n";
  }
}

}  // namespace

std::shared_ptr<const SphereGrid> parse_grid(const std::string& text) {
  const auto bad = [&]() {
    return ValidationError("grid must be <thetaN>x<phiN> or fibonacci:<n>, got '" + text + "'");
  };
  const auto to_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) throw bad();
    return std::stoi(s);
  };
  if (text.rfind("fibonacci:", 0) == 0) {
    const int n = to_int(text.substr(10));
    if (n < 2) throw bad();
    return std::make_shared<const SphereGrid>(fibonacci_grid(n));
  }
  const auto x = text.find('x');
  if (x == std::string::npos) throw bad();
  const int q = to_int(text.substr(0, x));
  const int m = to_int(text.substr(x + 1));
  if (q < 1 || m < 1) throw bad();
  return std::make_shared<const SphereGrid>(gauss_product_grid(q, m));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distances between spin-j quantum states: standard metrics, Monge transport on "
               "the Husimi sphere, stellar roots, Wehrl entropy and spectrum topology."};
  app.name("monge-cli");
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--j", cfg.j_text, "spin quantum number: 1/2, 3/2, 1.5, 2, ...");
  app.add_option("--grid", cfg.grid_text, "sphere grid <thetaN>x<phiN> or fibonacci:<n>")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--format", cfg.format, "text, csv or json (default depends on the command)");
  app.add_option("--out", cfg.out_path, "write output to this file instead of stdout");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();

  DistArgs dist;
  auto* c_dist = app.add_subcommand("dist", "distance between two states");
  c_dist->add_option("a", dist.a, "first state descriptor")->required();
  c_dist->add_option("b", dist.b, "second state descriptor")->required();
  c_dist->add_option("--metric", dist.metric, "trace|hs|bures|fs|monge|monge-numeric|smonge")
      ->capture_default_str();
  c_dist->add_option("--plan", dist.plan_path, "monge-numeric: write the transport plan as CSV");

  ComparisonArgs t2;
  auto* c_table2 = app.add_subcommand("table2", "standard distances against the Monge distance");
  c_table2->add_option("--a", t2.a, "mixing weight of rho_a")->capture_default_str();
  c_table2->add_option("--xi", t2.xi, "polar angle of the coherent state rho_xi")->capture_default_str();

  std::string husimi_state;
  auto* c_husimi = app.add_subcommand("husimi-export", "Husimi function sampled on the grid");
  c_husimi->add_option("state", husimi_state, "state descriptor")->required();

  std::string stellar_state;
  auto* c_stellar = app.add_subcommand("stellar", "stellar roots of a pure state");
  c_stellar->add_option("state", stellar_state, "pure state descriptor")->required();

  LyapunovArgs ly;
  auto* c_ly = app.add_subcommand("lyapunov", "distance growth of two nearby coherent states under the kicked top");
  c_ly->add_option("--p", ly.p, "rotation angle about y")->capture_default_str();
  c_ly->add_option("--k", ly.k, "torsion strength")->capture_default_str();
  c_ly->add_option("--xi0", ly.xi0, "initial separation angle")->capture_default_str();
  c_ly->add_option("--theta0", ly.theta0, "colatitude of the first state")->capture_default_str();
  c_ly->add_option("--phi0", ly.phi0, "longitude of the first state")->capture_default_str();
  c_ly->add_option("--steps", ly.steps, "number of periods")->capture_default_str();
  c_ly->add_option("--metric", ly.metric, "smonge or monge-numeric")->capture_default_str();

  LocalizationArgs loc;
  auto* c_loc = app.add_subcommand("localization", "mean Monge distance of eigenvectors from rho*");
  c_loc->add_option("--operator", loc.op, "jz|jx|jy|identity|kicked|json:<path>")->capture_default_str();
  c_loc->add_option("--p", loc.p, "kicked: rotation angle")->capture_default_str();
  c_loc->add_option("--k", loc.k, "kicked: torsion strength")->capture_default_str();

  TopologyArgs topo;
  auto* c_topo = app.add_subcommand("topology", "strata of the space of N-level density matrices");
  c_topo->add_option("--n", topo.n, "dimension N");
  c_topo->add_option("--state", topo.state, "classify this state instead (needs --j)");
  c_topo->add_option("--eps", topo.eps, "eigenvalue merge tolerance")->capture_default_str();

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "Monte-Carlo statistics over Haar-random states");
  c_stats->add_option("--kind", stats.kind, "distance|scaling|wehrl")->capture_default_str();
  c_stats->add_option("--reference", stats.reference, "distance: reference pure state")
      ->capture_default_str();
  c_stats->add_option("--samples", stats.samples, "number of samples")->capture_default_str();
  c_stats->add_option("--js", stats.js, "scaling: comma-separated spins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::ostringstream buffer;
    if (c_dist->parsed()) cmd_dist(cfg, dist, buffer);
    if (c_table2->parsed()) cmd_comparison(cfg, t2, buffer);
    if (c_husimi->parsed()) cmd_husimi(cfg, husimi_state, buffer);
    if (c_stellar->parsed()) cmd_stellar(cfg, stellar_state, buffer);
    if (c_ly->parsed()) cmd_lyapunov(cfg, ly, buffer);
    if (c_loc->parsed()) cmd_localization(cfg, loc, buffer);
    if (c_topo->parsed()) cmd_topology(cfg, topo, buffer);
    if (c_stats->parsed()) cmd_stats(cfg, stats, buffer);
    if (cfg.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out_path);
      if (!file) throw ValidationError("cannot write " + cfg.out_path);
      file << buffer.str();
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const PathRefused& e) {
    err << "solver failure: " << e.what() << "\nhint: --metric monge-numeric\n";
    return 3;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace monge::cli
