#include "hsol/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hsol/format.hpp"

namespace hsol {

namespace {

using json = nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

double get_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
  return v.get<int>();
}

std::vector<double> get_numbers(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_number(e, what + " entry"));
  return out;
}

std::string get_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw ConfigError(what + " must be a string");
  return v.get<std::string>();
}

PotentialParams parse_potential(const json& v, int n, const std::string& where, bool family_key) {
  if (!v.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> keys{"a", "b", "c", "e"};
  if (family_key) keys.insert("family");
  reject_unknown_keys(v, keys, where);
  PotentialParams p;
  p.n = n;
  p.a = get_number(require(v, "a", where), where + ".a");
  p.b = get_numbers(require(v, "b", where), where + ".b");
  p.c = get_number(require(v, "c", where), where + ".c");
  p.e = v.contains("e") ? get_number(v.at("e"), where + ".e") : 0.0;
  validate_potential(p);
  return p;
}

VectorFieldSpec parse_field(const json& v, int n) {
  if (!v.is_object()) throw ConfigError("field must be an object");
  const std::string family = get_string(require(v, "family", "field"), "field.family");
  if (family == "killing2d") {
    reject_unknown_keys(v, {"family", "a", "b", "c"}, "field");
    if (n != 2) throw ConfigError("field family killing2d requires dimension 2");
    return build_killing_2d(get_number(require(v, "a", "field"), "field.a"), get_number(require(v, "b", "field"), "field.b"),
                            get_number(require(v, "c", "field"), "field.c"));
  }
  if (family == "killing_nd") {
    reject_unknown_keys(v, {"family", "a", "b", "c"}, "field");
    return build_killing_nd(n, get_numbers(require(v, "a", "field"), "field.a"),
                            get_number(require(v, "b", "field"), "field.b"),
                            get_numbers(require(v, "c", "field"), "field.c"));
  }
  if (family == "gradient") return GradientOfPotential{parse_potential(v, n, "field", true)};
  if (family == "constant") {
    reject_unknown_keys(v, {"family", "v"}, "field");
    auto vals = get_numbers(require(v, "v", "field"), "field.v");
    if (vals.size() != static_cast<std::size_t>(n)) throw ConfigError("constant field needs " + std::to_string(n) + " entries");
    return ConstantField{std::move(vals)};
  }
  if (family == "custom") {
    reject_unknown_keys(v, {"family", "components"}, "field");
    const auto& comps = require(v, "components", "field");
    if (!comps.is_array()) throw ConfigError("field.components must be an array of strings");
    std::vector<std::string> texts;
    for (const auto& c : comps) texts.push_back(get_string(c, "field.components entry"));
    try {
      return build_custom_field(n, texts);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("field.components: ") + e.what());
    }
  }
  throw ConfigError("unknown field family '" + family + "' (expected killing2d, killing_nd, gradient, constant, custom)");
}

ConformalFactorSpec parse_factor(const json& v, const SolitonProblem& prob) {
  std::string type;
  if (v.is_string()) {
    type = v.get<std::string>();
  } else if (v.is_object()) {
    reject_unknown_keys(v, {"type", "expr"}, "G");
    type = get_string(require(v, "type", "G"), "G.type");
  } else {
    throw ConfigError("G must be a string or an object");
  }
  if (type == "unit") {
    if (v.is_object() && v.contains("expr")) throw ConfigError("G.expr is only valid for type custom");
    return UnitFactor{};
  }
  if (type == "derived") {
    if (v.is_object() && v.contains("expr")) throw ConfigError("G.expr is only valid for type custom");
    const PotentialParams* pot = nullptr;
    if (prob.potential) pot = &*prob.potential;
    if (!pot && prob.field) {
      if (const auto* g = std::get_if<GradientOfPotential>(&*prob.field)) pot = &g->potential;
    }
    if (!pot) throw ConfigError("G type derived needs a potential (or a gradient field)");
    return derived_conformal_factor(*pot, prob.lambda, prob.rho);
  }
  if (type == "custom") {
    if (!v.is_object()) throw ConfigError("G custom needs an object with an expr");
    const std::string src = get_string(require(v, "expr", "G"), "G.expr");
    try {
      return CustomFactor{Expr::parse(src, prob.n), src};
    } catch (const ParseError& e) {
      throw ConfigError(std::string("G.expr: ") + e.what());
    }
  }
  throw ConfigError("unknown G type '" + type + "' (expected unit, derived, custom)");
}

GridAxis parse_axis(const json& v, std::size_t d) {
  const std::string where = "grid axis x" + std::to_string(d + 1);
  if (!v.is_object()) throw ConfigError(where + " must be an object {min, max, count}");
  reject_unknown_keys(v, {"min", "max", "count"}, where);
  return GridAxis{get_number(require(v, "min", where), where + ".min"), get_number(require(v, "max", where), where + ".max"),
                  get_int(require(v, "count", where), where + ".count")};
}

}  // namespace

ProblemConfig parse_problem_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  reject_unknown_keys(doc, {"dimension", "kind", "lambda", "rho", "field", "potential", "G", "grid", "tolerance"},
                      "configuration");
  ProblemConfig cfg;
  auto& prob = cfg.problem;
  prob.n = get_int(require(doc, "dimension", "configuration"), "dimension");
  if (prob.n < 2) throw ConfigError("dimension must be at least 2");
  prob.kind = parse_soliton_kind(get_string(require(doc, "kind", "configuration"), "kind"));
  prob.lambda = get_number(require(doc, "lambda", "configuration"), "lambda");
  prob.rho = doc.contains("rho") ? get_number(doc.at("rho"), "rho") : 0.0;
  if (prob.kind == SolitonKind::ricci && prob.rho != 0.0) {
    throw ConfigError("invalid rho = " + format_shortest(prob.rho) + ": kind=ricci requires rho = 0");
  }
  if (doc.contains("field") && doc.contains("potential")) throw ConfigError("give either field or potential, not both");
  if (doc.contains("field")) prob.field = parse_field(doc.at("field"), prob.n);
  if (doc.contains("potential")) prob.potential = parse_potential(doc.at("potential"), prob.n, "potential", false);
  if (doc.contains("G")) prob.G = parse_factor(doc.at("G"), prob);
  validate_problem(prob);

  const auto& grid = require(doc, "grid", "configuration");
  if (!grid.is_array()) throw ConfigError("grid must be an array of {min, max, count} axes");
  for (std::size_t d = 0; d < grid.size(); ++d) cfg.grid.axes.push_back(parse_axis(grid[d], d));
  if (cfg.grid.dim() != prob.n) {
    throw ConfigError("grid has " + std::to_string(cfg.grid.dim()) + " axes but dimension is " + std::to_string(prob.n));
  }
  validate_grid(cfg.grid);

  cfg.tolerance = doc.contains("tolerance") ? get_number(doc.at("tolerance"), "tolerance") : kDefaultTolerance;
  if (!(cfg.tolerance >= 0.0)) throw ConfigError("tolerance must be non-negative");
  return cfg;
}

ProblemConfig parse_problem_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem_config(doc);
}

ProblemConfig load_problem_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_config_text(ss.str());
}

namespace {

ojson potential_json(const PotentialParams& p) {
  ojson o;
  o["a"] = p.a;
  o["b"] = p.b;
  o["c"] = p.c;
  o["e"] = p.e;
  return o;
}

ojson field_json(const VectorFieldSpec& X) {
  ojson o;
  o["family"] = field_family_name(X);
  if (const auto* k = std::get_if<Killing2D>(&X)) {
    o["a"] = k->a;
    o["b"] = k->b;
    o["c"] = k->c;
  } else if (const auto* k = std::get_if<KillingND>(&X)) {
    o["a"] = k->a;
    o["b"] = k->b;
    o["c"] = k->c;
  } else if (const auto* g = std::get_if<GradientOfPotential>(&X)) {
    const ojson pot = potential_json(g->potential);
    for (const auto& [key, value] : pot.items()) o[key] = value;
  } else if (const auto* c = std::get_if<ConstantField>(&X)) {
    o["v"] = c->v;
  } else if (const auto* c = std::get_if<CustomField>(&X)) {
    o["components"] = c->sources;
  }
  return o;
}

}  // namespace

ojson problem_to_json(const SolitonProblem& prob) {
  ojson o;
  o["dimension"] = prob.n;
  o["kind"] = to_string(prob.kind);
  o["lambda"] = prob.lambda;
  o["rho"] = prob.rho;
  if (prob.field) o["field"] = field_json(*prob.field);
  if (prob.potential) o["potential"] = potential_json(*prob.potential);
  if (std::holds_alternative<UnitFactor>(prob.G)) {
    o["G"] = "unit";
  } else if (std::holds_alternative<DerivedFactor>(prob.G)) {
    o["G"] = ojson{{"type", "derived"}};
  } else {
    o["G"] = ojson{{"type", "custom"}, {"expr", std::get<CustomFactor>(prob.G).source}};
  }
  return o;
}

ojson grid_to_json(const GridSpec& grid) {
  ojson axes = ojson::array();
  for (const auto& a : grid.axes) axes.push_back(ojson{{"min", a.min}, {"max", a.max}, {"count", a.count}});
  return axes;
}

ojson problem_config_to_json(const ProblemConfig& cfg) {
  ojson o = problem_to_json(cfg.problem);
  o["grid"] = grid_to_json(cfg.grid);
  o["tolerance"] = cfg.tolerance;
  return o;
}

void apply_grid_override(ProblemConfig& cfg, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("grid override '" + text + "' must look like AXIS=min:max:count");
  std::string axis = text.substr(0, eq);
  if (!axis.empty() && (axis[0] == 'x' || axis[0] == 'X')) axis.erase(0, 1);
  int index = 0;
  try {
    std::size_t used = 0;
    index = std::stoi(axis, &used);
    if (used != axis.size()) throw std::invalid_argument(axis);
  } catch (const std::exception&) {
    throw ConfigError("grid override '" + text + "': bad axis name");
  }
  if (index < 1 || index > cfg.grid.dim()) throw ConfigError("grid override '" + text + "': axis out of range");
  std::string rest = text.substr(eq + 1);
  for (char& ch : rest) {
    if (ch == ':') ch = ',';
  }
  std::vector<double> parts;
  try {
    parts = parse_number_list(rest);
  } catch (const std::invalid_argument&) {
    throw ConfigError("grid override '" + text + "' must look like AXIS=min:max:count");
  }
  if (parts.size() != 3 || parts[2] != std::floor(parts[2]) || parts[2] < 1 || parts[2] > 1e9) {
    throw ConfigError("grid override '" + text + "' must look like AXIS=min:max:count with integer count");
  }
  cfg.grid.axes[static_cast<std::size_t>(index - 1)] = GridAxis{parts[0], parts[1], static_cast<int>(parts[2])};
  validate_grid(cfg.grid);
}

ojson report_to_json(const ResidualReport& rep, const std::optional<std::string>& timestamp) {
  ojson o;
  o["problem"] = problem_to_json(rep.problem);
  o["grid"] = grid_to_json(rep.grid);
  o["points"] = rep.points;
  o["max_abs"] = rep.max_abs;
  o["max_frobenius"] = rep.max_frobenius;
  o["argmax_point"] = rep.argmax_point;
  o["tolerance"] = rep.tolerance;
  o["verdict"] = rep.pass ? "pass" : "fail";
  if (timestamp) o["timestamp"] = *timestamp;
  if (!rep.dump.empty()) {
    ojson d = ojson::array();
    for (const auto& pr : rep.dump) d.push_back(ojson{{"point", pr.point}, {"max_abs", pr.max_abs}, {"frobenius", pr.frobenius}});
    o["point_residuals"] = std::move(d);
  }
  return o;
}

namespace {

void dump_rec(std::ostringstream& os, const ojson& v, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * level), ' ');
  switch (v.type()) {
    case ojson::value_t::number_float:
      os << format17(v.get<double>());
      return;
    case ojson::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      const bool scalars = std::all_of(v.begin(), v.end(), [](const ojson& e) { return e.is_primitive(); });
      if (scalars) {
        os << '[';
        bool first = true;
        for (const auto& e : v) {
          os << (first ? "" : ", ");
          dump_rec(os, e, indent, level + 1);
          first = false;
        }
        os << ']';
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& e : v) {
        os << (first ? "" : ",\n") << pad;
        dump_rec(os, e, indent, level + 1);
        first = false;
      }
      os << '\n' << close << ']';
      return;
    }
    case ojson::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : v.items()) {
        os << (first ? "" : ",\n") << pad << ojson(key).dump() << ": ";
        dump_rec(os, value, indent, level + 1);
        first = false;
      }
      os << '\n' << close << '}';
      return;
    }
    default:
      os << v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const ojson& value, int indent) {
  std::ostringstream os;
  dump_rec(os, value, indent, 0);
  os << '\n';
  return os.str();
}

}  // namespace hsol
