// hsol: command-line front end for checking soliton equations on H^n.
//
// Exit codes: 0 success / pass, 1 residual above tolerance or a rejected
// construction, 2 configuration, parse or domain error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hsol/config.hpp"
#include "hsol/format.hpp"
#include "hsol/geodesics.hpp"

namespace {

using namespace hsol;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Point parse_point(const std::string& text) { return Point(parse_number_list(text)); }

std::vector<std::string> var_names(int n) {
  if (n == 2) return {"x", "y"};
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::vector<std::string> coord_names(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

// Joins coefficient*monomial terms, dropping zero coefficients.
std::string polynomial_text(const std::vector<std::pair<double, std::string>>& terms) {
  std::string out;
  for (const auto& [coef, mono] : terms) {
    if (coef == 0.0) continue;
    const double mag = std::fabs(coef);
    std::string body = mono.empty() ? format_shortest(mag) : (mag == 1.0 ? mono : format_shortest(mag) + "*" + mono);
    if (out.empty()) {
      out = coef < 0 ? "-" + body : body;
    } else {
      out += coef < 0 ? " - " + body : " + " + body;
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> killing_nd_texts(const KillingND& k, const std::vector<std::string>& v) {
  const int n = k.n;
  const int m = n - 1;
  std::vector<std::string> out;
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<double, std::string>> terms;
    const double half = k.a[static_cast<std::size_t>(i)] / 2;
    terms.push_back({half, v[static_cast<std::size_t>(i)] + "^2"});
    for (int j = 0; j < n; ++j) {
      if (j != i) terms.push_back({-half, v[static_cast<std::size_t>(j)] + "^2"});
    }
    for (int j = 0; j < m; ++j) {
      if (j != i) terms.push_back({k.a[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(j)] + "*" + v[static_cast<std::size_t>(i)]});
    }
    terms.push_back({k.b, v[static_cast<std::size_t>(i)]});
    terms.push_back({k.c[static_cast<std::size_t>(i)], ""});
    out.push_back(polynomial_text(terms));
  }
  std::vector<std::pair<double, std::string>> last;
  for (int j = 0; j < m; ++j) last.push_back({k.a[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(j)] + "*" + v[static_cast<std::size_t>(m)]});
  last.push_back({k.b, v[static_cast<std::size_t>(m)]});
  out.push_back(polynomial_text(last));
  return out;
}

std::string polynomial_p_text(const PotentialParams& f, const std::vector<std::string>& v) {
  const int m = f.n - 1;
  std::vector<std::pair<double, std::string>> terms;
  for (int k = 0; k < f.n; ++k) terms.push_back({f.a / 2, v[static_cast<std::size_t>(k)] + "^2"});
  for (int k = 0; k < m; ++k) terms.push_back({f.b[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)]});
  terms.push_back({f.c, ""});
  return polynomial_text(terms);
}

std::string potential_text(const PotentialParams& f, const std::vector<std::string>& v) {
  const int m = f.n - 1;
  const std::string& h = v[static_cast<std::size_t>(m)];
  std::vector<std::pair<double, std::string>> terms;
  for (int k = 0; k < m; ++k) terms.push_back({f.a / 2, v[static_cast<std::size_t>(k)] + "^2/" + h});
  for (int k = 0; k < m; ++k) terms.push_back({f.b[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)] + "/" + h});
  terms.push_back({f.a / 2, h});
  terms.push_back({f.c, "1/" + h});
  terms.push_back({f.e, ""});
  std::string s = polynomial_text(terms);
  // "c*1/y" reads oddly; keep it parseable but tidy the unit numerator.
  for (std::size_t pos; (pos = s.find("*1/")) != std::string::npos;) s.replace(pos, 3, "/");
  return s;
}

std::string g_text(const PotentialParams& f, double K, const std::vector<std::string>& v) {
  const std::string& h = v.back();
  bool b_zero = true;
  for (double b : f.b) b_zero = b_zero && b == 0.0;
  if (f.a == 0.0 && b_zero) return polynomial_text({{K / f.c, h}});
  return polynomial_text({{K, h}}) + " / (" + polynomial_p_text(f, v) + ")";
}

std::string signature(const std::vector<std::string>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s + ")";
}

PotentialParams potential_from_cli(int n, double a, const std::string& b, double c, double e) {
  PotentialParams p;
  p.n = n;
  p.a = a;
  p.b = b.empty() ? std::vector<double>(static_cast<std::size_t>(n - 1), 0.0) : parse_number_list(b);
  p.c = c;
  p.e = e;
  validate_potential(p);
  return p;
}

void print_tensor(std::ostream& os, const std::string& name, const SymTensor2& t) {
  os << name << " =\n";
  for (int i = 0; i < t.dim(); ++i) {
    os << "  [";
    for (int j = 0; j < t.dim(); ++j) os << (j ? ", " : "") << format_shortest(t(i, j));
    os << "]\n";
  }
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string config;
  std::string out;
  double tol = -1.0;
  std::vector<std::string> grid;
  bool no_timestamp = false;
  bool dump_points = false;
  bool print_config = false;
  int threads = 0;
};

int run_check(const CheckArgs& args) {
  ProblemConfig cfg = load_problem_config(args.config);
  for (const auto& g : args.grid) apply_grid_override(cfg, g);
  if (args.tol >= 0.0) cfg.tolerance = args.tol;
  if (args.print_config) {
    std::cout << dump_json(problem_config_to_json(cfg));
    return kExitPass;
  }
  const auto rep = grid_residual_report(cfg.problem, cfg.grid, cfg.tolerance, GridOptions{args.threads, args.dump_points});
  const std::optional<std::string> stamp = args.no_timestamp ? std::nullopt : std::optional<std::string>(utc_timestamp());
  const std::string text = dump_json(report_to_json(rep, stamp));
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write report to '" + args.out + "'");
    f << text;
    std::cout << "verdict: " << (rep.pass ? "pass" : "fail") << "  max_abs = " << format17(rep.max_abs)
              << "  tolerance = " << format17(rep.tolerance) << "  points = " << rep.points << "\n";
  }
  return rep.pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- curvature

int run_curvature(int dim, const std::string& point_text) {
  const Point p = parse_point(point_text);
  if (dim != 0 && dim != p.dim()) throw ConfigError("--dim does not match the number of point coordinates");
  const int n = p.dim();
  std::cout << "point = (";
  for (int i = 0; i < n; ++i) std::cout << (i ? ", " : "") << format_shortest(p[i]);
  std::cout << ")  n = " << n << "\n";
  print_tensor(std::cout, "g", metric_at(p));
  std::cout << "Christoffel symbols (nonzero):\n";
  const auto gam = christoffels_at(p);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (gam(k, i, j) != 0.0) {
          std::cout << "  Gamma^" << k + 1 << "_" << i + 1 << j + 1 << " = " << format_shortest(gam(k, i, j)) << "\n";
        }
      }
    }
  }
  print_tensor(std::cout, "Ric", ricci_at(p));
  std::cout << "S = " << format_shortest(scalar_curvature(n)) << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------- family

struct FamilyArgs {
  std::string name;
  int dim = 0;
  std::string a, b, c;
  double e = 0.0;
  std::string point;
};

int run_family(const FamilyArgs& args) {
  std::optional<VectorFieldSpec> field;
  std::optional<PotentialParams> potential;
  auto scalar = [](const std::string& s, const char* what) {
    if (s.empty()) return 0.0;
    auto v = parse_number_list(s);
    if (v.size() != 1) throw ConfigError(std::string("--") + what + " takes a single number for this family");
    return v[0];
  };
  if (args.name == "killing2d") {
    if (args.dim != 0 && args.dim != 2) throw ConfigError("killing2d lives in dimension 2");
    field = build_killing_2d(scalar(args.a, "a"), scalar(args.b, "b"), scalar(args.c, "c"));
  } else if (args.name == "killing_nd") {
    const int n = args.dim;
    check_dimension(n);
    auto list = [&](const std::string& s) {
      return s.empty() ? std::vector<double>(static_cast<std::size_t>(n - 1), 0.0) : parse_number_list(s);
    };
    field = build_killing_nd(n, list(args.a), scalar(args.b, "b"), list(args.c));
  } else if (args.name == "potential") {
    const int n = args.dim == 0 ? 2 : args.dim;
    potential = potential_from_cli(n, scalar(args.a, "a"), args.b, scalar(args.c, "c"), args.e);
  } else {
    throw ConfigError("unknown family '" + args.name + "' (expected killing2d, killing_nd, potential)");
  }

  const int n = field ? field_dimension(*field) : potential->n;
  const auto xs = coord_names(n);
  std::vector<std::string> comps;
  if (field) {
    KillingND as_nd;
    if (const auto* k2 = std::get_if<Killing2D>(&*field)) {
      as_nd = KillingND{2, {k2->a}, k2->b, {k2->c}};
    } else {
      as_nd = std::get<KillingND>(*field);
    }
    comps = killing_nd_texts(as_nd, xs);
    std::cout << "family: " << args.name << " (Killing field)\n";
  } else {
    std::cout << "family: potential\n";
    std::cout << "F = " << potential_text(*potential, xs) << "\n";
    std::cout << "P = " << polynomial_p_text(*potential, xs) << "  [" << to_string(zero_free_check(*potential)) << "]\n";
    field = GradientOfPotential{*potential};
    const int m = n - 1;
    const auto& pp = *potential;
    for (int i = 0; i < m; ++i) {
      comps.push_back(polynomial_text({{pp.a, xs[static_cast<std::size_t>(i)] + "*" + xs[static_cast<std::size_t>(m)]},
                                             {pp.b[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(m)]}}));
    }
    std::vector<std::pair<double, std::string>> last{{pp.a / 2, xs[static_cast<std::size_t>(m)] + "^2"}};
    for (int i = 0; i < m; ++i) last.push_back({-pp.a / 2, xs[static_cast<std::size_t>(i)] + "^2"});
    for (int i = 0; i < m; ++i) last.push_back({-pp.b[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(i)]});
    last.push_back({-pp.c, ""});
    comps.push_back(polynomial_text(last));
  }
  std::cout << (potential ? "grad F components:\n" : "components:\n");
  nlohmann::json custom = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    std::cout << "  X" << i + 1 << " = " << comps[static_cast<std::size_t>(i)] << "\n";
    custom.push_back(comps[static_cast<std::size_t>(i)]);
  }
  std::cout << "custom field: " << nlohmann::json{{"family", "custom"}, {"components", custom}}.dump() << "\n";
  if (!args.point.empty()) {
    const Point p = parse_point(args.point);
    const auto vals = field_value_at(*field, p);
    std::cout << "X(p) = (";
    for (std::size_t i = 0; i < vals.size(); ++i) std::cout << (i ? ", " : "") << format_shortest(vals[i]);
    std::cout << ")\n";
    std::cout << "max |L_X g| at p = " << format_shortest(lie_derivative_metric(*field, p).max_abs()) << "\n";
    if (potential) std::cout << "F(p) = " << format_shortest(potential_value(*potential, p)) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------- derive-g

struct DeriveArgs {
  int dim = 2;
  double a = 0.0;
  std::string b;
  double c = 0.0;
  double e = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  std::vector<std::string> points;
};

int run_derive_g(const DeriveArgs& args) {
  const PotentialParams f = potential_from_cli(args.dim, args.a, args.b, args.c, args.e);
  const int n = f.n;
  const auto verdict = zero_free_check(f);
  const auto names = var_names(n);
  std::cout << "P" << signature(names) << " = " << polynomial_p_text(f, names) << "\n";
  std::cout << "zero-free check: " << to_string(verdict) << "\n";
  if (verdict == ZeroFreeVerdict::has_zero) {
    std::cout << "P has zeros in H^" << n << "; no conformal factor G exists for this potential\n";
    return kExitFail;
  }
  if (verdict == ZeroFreeVerdict::degenerate_zero_polynomial) {
    std::cout << "P is identically zero: F is constant and G is unconstrained\n";
    return kExitFail;
  }
  if (is_degenerate_lambda(n, args.lambda, args.rho)) {
    std::cout << "degenerate case: lambda = -(n-1)(1-n*rho) = " << format_shortest(killing_lambda_grb(n, args.rho))
              << "; the equation forces F constant and leaves G unconstrained\n";
    return kExitFail;
  }
  const auto G = derived_conformal_factor(f, args.lambda, args.rho);
  const double K = conformal_numerator(n, args.lambda, args.rho);
  std::cout << "G" << signature(names) << " = " << g_text(f, K, names) << "\n";
  std::cout << "G expression: " << g_text(f, K, coord_names(n)) << "\n";
  std::cout << "F" << signature(names) << " = " << potential_text(f, names) << "\n";
  std::vector<std::string> pts = args.points;
  if (pts.empty()) {
    std::string base(static_cast<std::size_t>(0), ' ');
    for (int i = 0; i < n - 1; ++i) base += "0,";
    pts = {base + "0.5", base + "1", base + "2"};
  }
  for (const auto& s : pts) {
    const Point p = parse_point(s);
    std::cout << "  G(" << s << ") = " << format_shortest(conformal_value(G, p)) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------- geodesic

struct GeodesicArgs {
  std::string point;
  std::string velocity;
  double t_max = 1.0;
  double dt = 1e-3;
  std::string out;
  std::string config;
  std::string along;
};

int run_geodesic(const GeodesicArgs& args) {
  const Point p = parse_point(args.point);
  const auto v = parse_number_list(args.velocity);
  Trajectory traj;
  int code = kExitPass;
  try {
    traj = integrate_geodesic(GeodesicState{p, v}, args.t_max, args.dt);
  } catch (const GeodesicDomainExit& e) {
    std::cerr << "hsol: " << e.what() << "\n";
    traj = e.partial();
    code = kExitError;
  }
  if (args.out.empty()) {
    write_trajectory_csv(std::cout, traj);
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write trajectory to '" + args.out + "'");
    write_trajectory_csv(f, traj);
  }
  if (!args.config.empty()) {
    const auto cfg = load_problem_config(args.config);
    const auto rows = evaluate_along_geodesic(cfg.problem, traj);
    if (args.along.empty()) {
      write_along_csv(std::cout, rows);
    } else {
      std::ofstream f(args.along, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + args.along + "'");
      write_along_csv(f, rows);
    }
  }
  return code;
}

// ---------------------------------------------------------------- audit-ad

constexpr double kAuditThreshold = 1e-4;

int run_audit(int dim, const std::vector<std::string>& exprs, const std::vector<std::string>& points) {
  std::vector<Point> pts;
  for (const auto& s : points) pts.push_back(parse_point(s));
  int n = dim;
  if (n == 0) n = pts.empty() ? 2 : pts.front().dim();
  for (const auto& p : pts) {
    if (p.dim() != n) throw ConfigError("all points must have dimension " + std::to_string(n));
  }
  if (pts.empty()) throw ConfigError("audit-ad needs at least one --point");
  std::vector<Expr> parsed;
  for (const auto& text : exprs) parsed.push_back(Expr::parse(text, n));
  bool ok = true;
  std::cout << "expression | point | grad_dev | hess_dev | status\n";
  for (std::size_t t = 0; t < exprs.size(); ++t) {
    const std::string& text = exprs[t];
    const Expr& e = parsed[t];
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Point& p = pts[k];
      const Jet2 jet = e.eval_jet(p);
      const Jet2 fd = fd_derivatives([&](const Point& q) { return e.eval(q); }, p, default_fd_steps(p));
      double gdev = 0.0;
      double hdev = 0.0;
      for (int i = 0; i < n; ++i) {
        gdev = std::max(gdev, relative_deviation(jet.d(i), fd.d(i)));
        for (int j = 0; j < n; ++j) hdev = std::max(hdev, relative_deviation(jet.dd(i, j), fd.dd(i, j)));
      }
      const bool good = gdev < kAuditThreshold && hdev < kAuditThreshold;
      ok = ok && good;
      std::cout << text << " | " << points[k] << " | " << format_shortest(gdev) << " | " << format_shortest(hdev) << " | "
                << (good ? "ok" : "DEVIATES") << "\n";
    }
  }
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify Ricci, Ricci-Bourguignon and G-Ricci-Bourguignon solitons on the upper half-space H^n"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "Evaluate a soliton residual over a grid and write a JSON report");
  c_check->add_option("--config", check.config, "Problem file (JSON)")->required();
  c_check->add_option("--out", check.out, "Report path (default: stdout)");
  c_check->add_option("--tol", check.tol, "Override the tolerance");
  c_check->add_option("--grid", check.grid, "Override one axis: AXIS=min:max:count (repeatable)");
  c_check->add_flag("--no-timestamp", check.no_timestamp, "Omit the timestamp field");
  c_check->add_flag("--dump-points", check.dump_points, "Include per-node residuals");
  c_check->add_flag("--print-config", check.print_config, "Print the validated configuration and exit");
  c_check->add_option("--threads", check.threads, "Worker threads (0: OpenMP default)");

  int curv_dim = 0;
  std::string curv_point;
  auto* c_curv = app.add_subcommand("curvature", "Print metric, Christoffel symbols, Ricci tensor and scalar curvature");
  c_curv->add_option("--dim", curv_dim, "Dimension (default: inferred from the point)");
  c_curv->add_option("--point", curv_point, "Comma-separated coordinates, e.g. 0,2")->required();

  FamilyArgs fam;
  auto* c_fam = app.add_subcommand("family", "Print a closed-form solution family as expressions");
  c_fam->add_option("name", fam.name, "killing2d | killing_nd | potential")->required();
  c_fam->add_option("--dim", fam.dim, "Dimension");
  c_fam->add_option("--a", fam.a, "a (list for killing_nd)");
  c_fam->add_option("--b", fam.b, "b (list for potential)");
  c_fam->add_option("--c", fam.c, "c (list for killing_nd)");
  c_fam->add_option("--e", fam.e, "e (potential constant)");
  c_fam->add_option("--point", fam.point, "Evaluate at this point");

  DeriveArgs der;
  auto* c_der = app.add_subcommand("derive-g", "Derive the conformal factor G of a gradient G-RB soliton");
  c_der->add_option("--dim", der.dim, "Dimension (default 2)");
  c_der->add_option("--a", der.a, "Potential coefficient a");
  c_der->add_option("--b", der.b, "Potential coefficients b_1..b_{n-1}, comma-separated");
  c_der->add_option("--c", der.c, "Potential coefficient c");
  c_der->add_option("--e", der.e, "Potential constant e");
  c_der->add_option("--lambda", der.lambda, "Soliton constant lambda");
  c_der->add_option("--rho", der.rho, "Bourguignon parameter rho");
  c_der->add_option("--point", der.points, "Sample G at this point (repeatable)");

  GeodesicArgs geo;
  auto* c_geo = app.add_subcommand("geodesic", "Integrate a geodesic with RK4 and export CSV");
  c_geo->add_option("--point", geo.point, "Start point")->required();
  c_geo->add_option("--velocity", geo.velocity, "Initial velocity")->required();
  c_geo->add_option("--t-max", geo.t_max, "Final affine parameter");
  c_geo->add_option("--dt", geo.dt, "Step size");
  c_geo->add_option("--out", geo.out, "Trajectory CSV path (default: stdout)");
  c_geo->add_option("--config", geo.config, "Problem file to evaluate along the trajectory");
  c_geo->add_option("--along", geo.along, "CSV path for the along-trajectory evaluation");

  int audit_dim = 0;
  std::vector<std::string> audit_exprs;
  std::vector<std::string> audit_points;
  auto* c_audit = app.add_subcommand("audit-ad", "Compare jet derivatives against central differences");
  c_audit->add_option("--dim", audit_dim, "Dimension (default: inferred from the points)");
  c_audit->add_option("--expr", audit_exprs, "Expression in x1..xn (repeatable)")->required();
  c_audit->add_option("--point", audit_points, "Evaluation point (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (c_check->parsed()) return run_check(check);
    if (c_curv->parsed()) return run_curvature(curv_dim, curv_point);
    if (c_fam->parsed()) return run_family(fam);
    if (c_der->parsed()) return run_derive_g(der);
    if (c_geo->parsed()) return run_geodesic(geo);
    if (c_audit->parsed()) return run_audit(audit_dim, audit_exprs, audit_points);
  } catch (const std::exception& e) {
    std::cerr << "hsol: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
