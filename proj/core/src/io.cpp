#include "soco/io.hpp"

#include <cmath>
#include <fstream>

namespace soco {

json number(double v) {
  if (std::isnan(v) || is_infinite(v)) return nullptr;
  return v;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

/// Cost table entry: a number or null for +∞.
double cost_entry(const json& j, const std::string& where) {
  if (j.is_null()) return kInfinity;
  return real(j, where);
}

double real_or(const json& j, const char* key, double fallback, const std::string& where) {
  auto it = j.find(key);
  return it == j.end() ? fallback : real(*it, where + "." + key);
}

std::size_t index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<double> reals(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(real(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Vec2 vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
  return {real(j[0], where + "[0]"), real(j[1], where + "[1]")};
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

TableCost table_cost(const json& j, std::size_t n, const std::string& where) {
  const json& arr = j.is_object() ? field(j, "values", where) : j;
  if (!arr.is_array()) fail(where, "expected an array of values");
  if (arr.size() != n) {
    fail(where, "has " + std::to_string(arr.size()) + " values for a space of " + std::to_string(n) + " points");
  }
  std::vector<double> vals;
  vals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = cost_entry(arr[i], where + "[" + std::to_string(i) + "]");
    if (v < 0) fail(where, "hitting costs must be non-negative");
    vals.push_back(v);
  }
  return TableCost(std::move(vals));
}

LineCost line_cost(const json& j, const std::string& where) {
  const std::string type = text(field(j, "type", where), where + ".type");
  if (type == "abs") {
    return PiecewiseLinear::abs(real(field(j, "weight", where), where + ".weight"),
                                real(field(j, "center", where), where + ".center"),
                                real_or(j, "offset", 0.0, where));
  }
  if (type == "piecewise_linear") {
    return PiecewiseLinear(reals(field(j, "knots", where), where + ".knots"),
                           reals(field(j, "values", where), where + ".values"),
                           real(field(j, "left_slope", where), where + ".left_slope"),
                           real(field(j, "right_slope", where), where + ".right_slope"));
  }
  if (type == "quadratic") {
    return Quadratic{real(field(j, "curvature", where), where + ".curvature"),
                     real(field(j, "center", where), where + ".center"), real_or(j, "offset", 0.0, where)};
  }
  fail(where + ".type", "unknown line cost '" + type + "' (expected abs, piecewise_linear or quadratic)");
}

ConeCost cone_cost(const json& j, const std::string& where) {
  const std::string type = text(field(j, "type", where), where + ".type");
  if (type != "cone") fail(where + ".type", "unknown plane cost '" + type + "' (expected cone)");
  return ConeCost(real(field(j, "alpha", where), where + ".alpha"), vec2(field(j, "vertex", where), where + ".vertex"),
                  vec2(field(j, "normal", where), where + ".normal"),
                  real(field(j, "penalty", where), where + ".penalty"));
}

DiscreteSpace discrete_space(const json& s, const std::string& kind) {
  if (kind == "cube") {
    const json& b = field(s, "bits", "space");
    if (!b.is_number_integer()) fail("space.bits", "expected an integer");
    return DiscreteSpace::binary_cube(b.get<int>(), real_or(s, "scale", 1.0, "space"));
  }
  if (s.contains("coordinates")) return DiscreteSpace::on_line(reals(s["coordinates"], "space.coordinates"));
  const json& m = field(s, "matrix", "space");
  if (!m.is_array() || m.empty()) fail("space.matrix", "expected a non-empty square array");
  const std::size_t n = m.size();
  std::vector<double> d;
  d.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = "space.matrix[" + std::to_string(i) + "]";
    if (!m[i].is_array() || m[i].size() != n) fail(w, "row length differs from the number of rows");
    for (std::size_t k = 0; k < n; ++k) d.push_back(real(m[i][k], w + "[" + std::to_string(k) + "]"));
  }
  return DiscreteSpace::from_matrix(n, std::move(d));
}

template <class P, class F>
std::optional<std::vector<P>> read_points(const json& j, F&& point) {
  auto it = j.find("predictions");
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) fail("predictions", "expected an array");
  std::vector<P> out;
  for (std::size_t i = 0; i < it->size(); ++i) out.push_back(point((*it)[i], "predictions[" + std::to_string(i) + "]"));
  return out;
}

Switching switching_of(const json& j) {
  auto it = j.find("switching");
  if (it == j.end()) return Switching::metric;
  const std::string s = text(*it, "switching");
  if (s == "metric") return Switching::metric;
  if (s == "half_squared") return Switching::half_squared;
  fail("switching", "expected 'metric' or 'half_squared'");
}

std::optional<double> alpha_of(const json& j) {
  auto it = j.find("alpha");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return real(*it, "alpha");
}

AnyEpisode parse(const json& j) {
  if (!j.is_object()) fail("instance", "expected a JSON object");
  const json& s = field(j, "space", "instance");
  const std::string kind = text(field(s, "kind", "space"), "space.kind");
  const json& costs = field(j, "costs", "instance");
  if (!costs.is_array()) fail("costs", "expected an array");
  if (j.contains("T")) {
    const std::size_t T = index(j["T"], "T");
    if (T != costs.size()) {
      fail("T", "declares " + std::to_string(T) + " rounds but costs has " + std::to_string(costs.size()));
    }
  }
  const Switching sw = switching_of(j);
  const std::optional<double> alpha = alpha_of(j);
  auto where = [](std::size_t t) { return "costs[" + std::to_string(t) + "]"; };

  if (kind == "finite" || kind == "cube") {
    DiscreteSpace space = discrete_space(s, kind);
    const std::size_t n = space.size();
    std::vector<TableCost> fs;
    for (std::size_t t = 0; t < costs.size(); ++t) fs.push_back(table_cost(costs[t], n, where(t)));
    const std::size_t x0 = index(field(j, "x0", "instance"), "x0");
    auto preds = read_points<std::size_t>(j, [](const json& p, const std::string& w) { return index(p, w); });
    return Episode<DiscreteSpace>{Instance<DiscreteSpace>(std::move(space), x0, std::move(fs), sw, alpha),
                                  std::move(preds)};
  }
  if (kind == "line") {
    std::vector<LineCost> fs;
    for (std::size_t t = 0; t < costs.size(); ++t) fs.push_back(line_cost(costs[t], where(t)));
    const double x0 = real(field(j, "x0", "instance"), "x0");
    auto preds = read_points<double>(j, [](const json& p, const std::string& w) { return real(p, w); });
    return Episode<RealLine>{Instance<RealLine>(RealLine{}, x0, std::move(fs), sw, alpha), std::move(preds)};
  }
  if (kind == "plane") {
    std::vector<ConeCost> fs;
    for (std::size_t t = 0; t < costs.size(); ++t) fs.push_back(cone_cost(costs[t], where(t)));
    const Vec2 x0 = vec2(field(j, "x0", "instance"), "x0");
    auto preds = read_points<Vec2>(j, [](const json& p, const std::string& w) { return vec2(p, w); });
    return Episode<Plane>{Instance<Plane>(Plane{}, x0, std::move(fs), sw, alpha), std::move(preds)};
  }
  fail("space.kind", "unknown space '" + kind + "' (expected finite, cube, line or plane)");
}

template <class S>
json header(const Instance<S>& inst, json space) {
  json j;
  j["space"] = std::move(space);
  j["T"] = inst.horizon();
  j["switching"] = inst.switching() == Switching::metric ? "metric" : "half_squared";
  if (inst.alpha()) j["alpha"] = *inst.alpha();
  return j;
}

json pairs(const std::vector<std::pair<std::string, double>>& ps) {
  json j = json::object();
  for (const auto& [k, v] : ps) j[k] = number(v);
  return j;
}

json numbers(const std::vector<double>& v) {
  json j = json::array();
  for (double x : v) j.push_back(number(x));
  return j;
}

}  // namespace

AnyEpisode episode_from_json(const json& j) {
  try {
    return parse(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed instance: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    // constructor validation (bad metric, x0 outside the space, ...)
    throw ConfigError(std::string("invalid instance: ") + e.what());
  }
}

AnyEpisode load_episode(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
  return episode_from_json(j);
}

json to_json(const Instance<DiscreteSpace>& inst) {
  const DiscreteSpace& s = inst.space();
  json space;
  if (s.form() == DiscreteSpace::Form::cube) {
    space = {{"kind", "cube"}, {"bits", s.bits()}, {"scale", s.scale()}};
  } else if (!s.coordinates().empty()) {
    space = {{"kind", "finite"}, {"coordinates", s.coordinates()}};
  } else {
    json m = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < s.size(); ++k) row.push_back(s.distance(i, k));
      m.push_back(std::move(row));
    }
    space = {{"kind", "finite"}, {"matrix", std::move(m)}};
  }
  json j = header(inst, std::move(space));
  j["x0"] = inst.x0();
  json costs = json::array();
  for (const TableCost& f : inst.costs()) {
    json row = json::array();
    for (double v : f.values()) row.push_back(number(v));
    costs.push_back(std::move(row));
  }
  j["costs"] = std::move(costs);
  return j;
}

json to_json(const Instance<RealLine>& inst) {
  json j = header(inst, {{"kind", "line"}});
  j["x0"] = inst.x0();
  json costs = json::array();
  for (const LineCost& f : inst.costs()) {
    if (const Quadratic* q = f.as_quadratic()) {
      costs.push_back({{"type", "quadratic"}, {"curvature", q->curvature}, {"center", q->center}, {"offset", q->offset}});
    } else {
      const PiecewiseLinear* p = f.as_piecewise_linear();
      costs.push_back({{"type", "piecewise_linear"},
                       {"knots", p->knots()},
                       {"values", p->values()},
                       {"left_slope", p->left_slope()},
                       {"right_slope", p->right_slope()}});
    }
  }
  j["costs"] = std::move(costs);
  return j;
}

json to_json(const Instance<Plane>& inst) {
  json j = header(inst, {{"kind", "plane"}});
  j["x0"] = {inst.x0().x, inst.x0().y};
  json costs = json::array();
  for (const ConeCost& f : inst.costs()) {
    costs.push_back({{"type", "cone"},
                     {"alpha", f.alpha()},
                     {"vertex", {f.minimizer().x, f.minimizer().y}},
                     {"normal", {f.normal().x, f.normal().y}},
                     {"penalty", f.penalty()}});
  }
  j["costs"] = std::move(costs);
  return j;
}

json to_json(const AnyEpisode& ep) {
  return std::visit(
      [](const auto& e) {
        json j = to_json(e.instance);
        if (e.predictions) {
          json p = json::array();
          for (const auto& x : *e.predictions) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Vec2>) {
              p.push_back({x.x, x.y});
            } else {
              p.push_back(x);
            }
          }
          j["predictions"] = std::move(p);
        }
        return j;
      },
      ep);
}

json to_json(const DualCertificate& c) {
  return {{"kind", "dual"},
          {"t", c.t},
          {"alpha", c.alpha},
          {"delta", c.delta},
          {"status", c.status},
          {"exact", c.exact},
          {"feasible", c.feasible},
          {"U", number(c.U)},
          {"y", numbers(c.y)},
          {"cover_residuals", numbers(c.cover_residuals)},
          {"cap_residuals", numbers(c.cap_residuals)},
          {"min_residual", number(c.min_residual)}};
}

json to_json(const PrimalCertificate& c) {
  return {{"kind", "primal"},
          {"t", c.t},
          {"alpha", c.alpha},
          {"delta", c.delta},
          {"status", c.status},
          {"exact", c.exact},
          {"feasible", c.feasible},
          {"objective", number(c.objective)},
          {"Delta", numbers(c.Delta)},
          {"residuals", numbers(c.residuals)},
          {"min_residual", number(c.min_residual)}};
}

json to_json(const BoundReport& b) {
  json j = {{"id", b.id}, {"inputs", pairs(b.inputs)}, {"value", number(b.value)}};
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

json to_json(const GameTranscript& t) {
  json rounds = json::array();
  for (const GameRound& r : t.rounds) {
    json jr = {{"t", r.t}, {"cost", r.cost}, {"advice", numbers(r.advice)}, {"decision", numbers(r.decision)}};
    if (r.branch != 0) jr["branch"] = r.branch;
    rounds.push_back(std::move(jr));
  }
  return {{"game", t.game},
          {"algorithm", t.algorithm},
          {"params", pairs(t.params)},
          {"alg_cost", number(t.alg_cost)},
          {"baseline", t.baseline_label},
          {"baseline_cost", number(t.baseline_cost)},
          {"measured_cr", number(t.cr)},
          {"branch", t.branch},
          {"extras", pairs(t.extras)},
          {"rounds", std::move(rounds)}};
}

json to_json(const EpisodeReport& r) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    json jc = {{"id", c.id}, {"lhs", number(c.lhs)}, {"rhs", number(c.rhs)}, {"pass", c.pass}};
    if (!c.note.empty()) jc["note"] = c.note;
    checks.push_back(std::move(jc));
  }
  json bounds = json::array();
  for (const BoundReport& b : r.bounds) bounds.push_back(to_json(b));
  json j = {{"algorithm", r.algorithm},
            {"params", pairs(r.params)},
            {"T", r.T},
            {"alg_cost", number(r.alg_cost)},
            {"adv_cost", number(r.adv_cost)},
            {"rob_cost", number(r.rob_cost)},
            {"blind_cost", number(r.blind_cost)},
            {"opt_method", r.opt_method},
            {"checks", std::move(checks)},
            {"all_checks_pass", r.all_checks_pass()},
            {"bounds", std::move(bounds)},
            {"bounds_skipped", r.bounds_skipped},
            {"warnings", r.warnings}};
  if (r.opt_cost) j["opt_cost"] = number(*r.opt_cost);
  if (r.error_bound) j["error_bound"] = number(*r.error_bound);
  if (r.eta) j["eta"] = number(*r.eta);
  if (r.eta_degenerate) j["eta_degenerate"] = true;
  if (r.measured_cr) j["measured_cr"] = number(*r.measured_cr);
  if (r.alpha) j["alpha"] = number(*r.alpha);
  return j;
}

}  // namespace soco
