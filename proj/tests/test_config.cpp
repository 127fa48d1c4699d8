#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <clocale>

#include "hsol/config.hpp"
#include "hsol/format.hpp"
#include "support.hpp"

using namespace hsol;
using hsol::testing::Gen;

namespace {

const char* kKilling = R"json({
  "dimension": 2, "kind": "ricci", "lambda": -1, "rho": 0,
  "field": {"family": "killing2d", "a": 1, "b": 2, "c": 3},
  "G": "unit",
  "grid": [{"min": -2, "max": 2, "count": 20}, {"min": 0.1, "max": 4, "count": 20}],
  "tolerance": 1e-9
})json";

std::string config_error(const std::string& text) {
  try {
    (void)parse_problem_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

void check_round_trip(const ProblemConfig& cfg) {
  const std::string text = dump_json(problem_config_to_json(cfg));
  const ProblemConfig back = parse_problem_config_text(text);
  CHECK(dump_json(problem_config_to_json(back)) == text);
  CHECK(back.grid.axes == cfg.grid.axes);
  CHECK(back.tolerance == cfg.tolerance);
  CHECK(back.problem.kind == cfg.problem.kind);
  CHECK(back.problem.lambda == cfg.problem.lambda);
  CHECK(back.problem.rho == cfg.problem.rho);
  Gen g(701);
  for (int s = 0; s < 20; ++s) {
    const Point p = g.point(cfg.problem.n, 1.0, 0.5, 2.0);
    CHECK(soliton_residual(back.problem, p) == soliton_residual(cfg.problem, p));
  }
}

}  // namespace

TEST_CASE("the reference configuration parses") {
  const auto cfg = parse_problem_config_text(kKilling);
  CHECK(cfg.problem.n == 2);
  CHECK(cfg.problem.kind == SolitonKind::ricci);
  CHECK(cfg.problem.lambda == -1.0);
  REQUIRE(cfg.problem.field.has_value());
  CHECK(std::get<Killing2D>(*cfg.problem.field) == Killing2D{1, 2, 3});
  CHECK(std::holds_alternative<UnitFactor>(cfg.problem.G));
  CHECK(cfg.grid.axes == GridSpec::standard(2).axes);
  CHECK(cfg.tolerance == 1e-9);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK(config_error(replace(kKilling, "\"tolerance\"", "\"tolerence\"")).find("unknown key 'tolerence'") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"c\": 3}", "\"c\": 3, \"d\": 4}")).find("unknown key 'd'") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"count\": 20}]", "\"count\": 20, \"step\": 1}]")).find("unknown key 'step'") != std::string::npos);
}

TEST_CASE("invalid configurations name the problem") {
  CHECK(config_error(replace(kKilling, "\"rho\": 0", "\"rho\": 0.3")).find("invalid rho = 0.3") != std::string::npos);
  CHECK(config_error("{").find("malformed JSON") != std::string::npos);
  CHECK(config_error("[1]").find("JSON object") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"dimension\": 2", "\"dimension\": 3")).find("dimension") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"ricci\"", "\"einstein\"")).find("einstein") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"min\": 0.1", "\"min\": 0.01")).find("floor") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"lambda\": -1", "\"lambda\": \"-1\"")).find("lambda must be a number") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"count\": 20}]", "\"count\": 2.5}]")).find("integer") != std::string::npos);
  CHECK(config_error(replace(kKilling, "\"G\": \"unit\"", "\"G\": {\"type\": \"custom\", \"expr\": \"x3\"}")).find("G.expr") != std::string::npos);
  CHECK_THROWS_AS(load_problem_config("/nonexistent/problem.json"), ConfigError);
}

TEST_CASE("all field families and factors parse") {
  const char* nd = R"json({"dimension": 3, "kind": "g_ricci_bourguignon", "lambda": 0.5, "rho": 0.25,
    "field": {"family": "killing_nd", "a": [1, 0.5], "b": -1, "c": [0, 2]},
    "G": {"type": "custom", "expr": "exp(x1) + x3^2"},
    "grid": [{"min": -1, "max": 1, "count": 3}, {"min": -1, "max": 1, "count": 3}, {"min": 0.5, "max": 1, "count": 2}]})json";
  const auto a = parse_problem_config_text(nd);
  CHECK(a.tolerance == kDefaultTolerance);
  CHECK(std::get<KillingND>(*a.problem.field) == KillingND{3, {1, 0.5}, -1, {0, 2}});
  check_round_trip(a);

  const char* grad = R"json({"dimension": 2, "kind": "gradient_grb", "lambda": 1, "rho": 0,
    "potential": {"a": 0, "b": [0], "c": 1, "e": 0}, "G": {"type": "derived"},
    "grid": [{"min": -2, "max": 2, "count": 5}, {"min": 0.1, "max": 4, "count": 5}], "tolerance": 1e-10})json";
  const auto b = parse_problem_config_text(grad);
  CHECK(std::holds_alternative<DerivedFactor>(b.problem.G));
  CHECK(conformal_value(b.problem.G, Point{0, 2}) == 4.0);
  check_round_trip(b);

  const char* custom = R"json({"dimension": 2, "kind": "rb", "lambda": 1, "rho": 0.5,
    "field": {"family": "custom", "components": ["x1*x2", "sin(x1)"]},
    "grid": [{"min": -2, "max": 2, "count": 5}, {"min": 0.1, "max": 4, "count": 5}]})json";
  const auto c = parse_problem_config_text(custom);
  CHECK(c.problem.kind == SolitonKind::ricci_bourguignon);
  check_round_trip(c);

  const char* constant = R"json({"dimension": 2, "kind": "ricci", "lambda": -2,
    "field": {"family": "constant", "v": [1, 1]},
    "grid": [{"min": 0, "max": 0, "count": 1}, {"min": 2, "max": 2, "count": 1}]})json";
  check_round_trip(parse_problem_config_text(constant));

  const char* gradient_field = R"json({"dimension": 2, "kind": "g_ricci_bourguignon", "lambda": 0.3, "rho": 0.1,
    "field": {"family": "gradient", "a": 2, "b": [1], "c": 3, "e": 0}, "G": {"type": "derived"},
    "grid": [{"min": -2, "max": 2, "count": 5}, {"min": 0.1, "max": 4, "count": 5}]})json";
  const auto e = parse_problem_config_text(gradient_field);
  CHECK(std::holds_alternative<GradientOfPotential>(*e.problem.field));
  check_round_trip(e);
}

TEST_CASE("grid overrides") {
  auto cfg = parse_problem_config_text(kKilling);
  apply_grid_override(cfg, "x2=0.5:1:3");
  CHECK(cfg.grid.axes[1] == GridAxis{0.5, 1, 3});
  apply_grid_override(cfg, "1=-1:1:2");
  CHECK(cfg.grid.axes[0] == GridAxis{-1, 1, 2});
  CHECK_THROWS_AS(apply_grid_override(cfg, "x3=0:1:2"), ConfigError);
  CHECK_THROWS_AS(apply_grid_override(cfg, "x2=0.5:1"), ConfigError);
  CHECK_THROWS_AS(apply_grid_override(cfg, "x2=0.5:1:2.5"), ConfigError);
  CHECK_THROWS_AS(apply_grid_override(cfg, "x2=0.001:1:2"), ConfigError);
  CHECK_THROWS_AS(apply_grid_override(cfg, "y=0:1:2"), ConfigError);
}

TEST_CASE("report layout") {
  const auto cfg = parse_problem_config_text(kKilling);
  const auto rep = grid_residual_report(cfg.problem, cfg.grid, cfg.tolerance);
  const ojson j = report_to_json(rep, std::nullopt);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"problem", "grid", "points", "max_abs", "max_frobenius", "argmax_point", "tolerance", "verdict"});
  CHECK(j["verdict"] == "pass");
  CHECK(j["points"] == 400);

  const ojson stamped = report_to_json(rep, std::string("2026-01-01T00:00:00Z"));
  CHECK(stamped["timestamp"] == "2026-01-01T00:00:00Z");

  const std::string text = dump_json(j);
  CHECK(text.find("\"tolerance\": 1.0000000000000001e-09") != std::string::npos);
  CHECK(text.find("\"max_abs\": " + format17(rep.max_abs)) != std::string::npos);
  CHECK(ojson::parse(text) == j);
}

TEST_CASE("number formatting ignores the process locale") {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  const bool switched = std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr || std::setlocale(LC_NUMERIC, "fr_FR.UTF-8") != nullptr;
  CHECK(format17(0.1) == "0.10000000000000001");
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(format17(-2.5e-300) == "-2.5e-300");
  CHECK(format17(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format17(0.0) == "0");
  CHECK(format_shortest(1e21) == "1e+21");
  CHECK(parse_number_list("0.5, -1,2e3") == std::vector<double>{0.5, -1, 2000});
  CHECK_THROWS(parse_number_list("0,5;"));
  CHECK_THROWS(parse_number_list(""));
  std::setlocale(LC_NUMERIC, saved.c_str());
  if (!switched) MESSAGE("no alternative locale installed; checked under the C locale only");
}

TEST_CASE("property: formatted numbers read back exactly") {
  Gen g(702);
  for (int s = 0; s < 2000; ++s) {
    const double v = g.uniform(-1, 1) * std::pow(10.0, g.integer(-300, 300));
    CHECK(std::stod(format17(v)) == v);
    CHECK(std::stod(format_shortest(v)) == v);
  }
}
