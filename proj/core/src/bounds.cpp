#include "soco/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "simplex.hpp"
#include "soco/cost.hpp"
#include "soco/error.hpp"

namespace soco {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void check_lp_inputs(int t, double alpha, double delta) {
  if (!(alpha > 0) || !(delta > 0) || !std::isfinite(alpha) || !std::isfinite(delta)) {
    throw ParameterError("alpha and delta must be positive and finite");
  }
  if (t < 1 || t > kMaxCertificateT) {
    throw ParameterError("t must lie in 1.." + std::to_string(kMaxCertificateT) + " (got " +
                         std::to_string(t) + ")");
  }
}

template <class T>
double to_double(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) return v.template convert_to<double>();
  else return static_cast<double>(v);
}

// Variables: W = U + 1, then y_1..y_t.
template <class T>
lp::Problem<T> dual_problem(int t, T a, T d) {
  const auto n = static_cast<std::size_t>(t) + 1;
  lp::Problem<T> p;
  p.c.assign(n, T(0));
  p.c[0] = T(1);
  for (int s = 1; s <= t; ++s) {
    std::vector<T> row(n, T(0));
    for (int i = s; i <= t; ++i) {
      T coef = d * (T(1) + a * T(i - s + 1));
      if (i <= t - 1) coef += a;
      if (i >= s + 1) coef -= T(2);
      row[static_cast<std::size_t>(i)] = coef;
    }
    p.add(std::move(row), lp::Sense::ge, T(1) + a * T(t - s + 1));
  }
  for (int s = 1; s <= t; ++s) {
    std::vector<T> row(n, T(0));
    row[0] = T(1);
    for (int i = s; i <= t; ++i) row[static_cast<std::size_t>(i)] = -d;
    row[static_cast<std::size_t>(s)] -= T(2);
    p.add(std::move(row), lp::Sense::ge, T(0));
  }
  return p;
}

// Variables Δ_1..Δ_t; minimize the negated objective without the constant αt.
template <class T>
lp::Problem<T> primal_problem(int t, T a, T d) {
  const auto n = static_cast<std::size_t>(t);
  lp::Problem<T> p;
  p.c.assign(n, T(0));
  for (int j = 1; j <= t; ++j) p.c[static_cast<std::size_t>(j - 1)] = -(T(1) + a * T(t - j + 1));
  for (int s = 1; s <= t; ++s) {
    std::vector<T> row(n, T(0));
    for (int j = 1; j <= s; ++j) {
      T coef = d + d * a * T(s - j + 1) + a;
      if (j < s) coef -= T(2);
      row[static_cast<std::size_t>(j - 1)] = coef;
    }
    p.add(std::move(row), lp::Sense::le, T(2) - a - d * a * T(s));
  }
  return p;
}

template <class T>
std::pair<lp::Status, std::vector<double>> run_lp(const lp::Problem<T>& p) {
  auto sol = lp::solve(p);
  std::vector<double> x;
  for (const auto& v : sol.x) x.push_back(to_double(v));
  return {sol.status, x};
}

const char* status_name(lp::Status s) {
  switch (s) {
    case lp::Status::optimal: return "optimal";
    case lp::Status::infeasible: return "infeasible";
    case lp::Status::unbounded: return "unbounded";
  }
  return "unknown";
}

bool residual_ok(double residual, double scale) {
  return residual >= -kLpTolerance * std::fmax(1.0, scale);
}

bool is_positive_integer(double x) {
  double r = std::round(x);
  return r >= 1 && std::fabs(x - r) <= 1e-9 * std::fmax(1.0, r);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

DualCertificate check_dual(int t, double alpha, double delta, std::vector<double> y, double U) {
  if (static_cast<int>(y.size()) != t) throw ParameterError("dual point has the wrong length");
  DualCertificate c;
  c.t = t;
  c.alpha = alpha;
  c.delta = delta;
  c.U = U;
  c.y = std::move(y);
  c.status = "candidate";
  c.feasible = true;
  c.min_residual = kInfinity;
  auto yi = [&](int i) { return c.y[static_cast<std::size_t>(i - 1)]; };
  for (int i = 1; i <= t; ++i) {
    c.min_residual = std::fmin(c.min_residual, yi(i));
    c.feasible = c.feasible && residual_ok(yi(i), 0.0);
  }
  for (int s = 1; s <= t; ++s) {
    double lhs = 0.0, scale = 0.0;
    for (int i = s; i <= t; ++i) {
      double term = delta * (1.0 + alpha * (i - s + 1)) * yi(i);
      if (i <= t - 1) term += alpha * yi(i);
      if (i >= s + 1) term -= 2.0 * yi(i);
      lhs += term;
      scale += std::fabs(term);
    }
    double rhs = 1.0 + alpha * (t - s + 1);
    double r = lhs - rhs;
    c.cover_residuals.push_back(r);
    c.min_residual = std::fmin(c.min_residual, r);
    c.feasible = c.feasible && residual_ok(r, scale + rhs);
  }
  for (int s = 1; s <= t; ++s) {
    double tail = 0.0;
    for (int i = s; i <= t; ++i) tail += yi(i);
    double need = 2.0 * yi(s) + delta * tail;
    double r = U + 1.0 - need;
    c.cap_residuals.push_back(r);
    c.min_residual = std::fmin(c.min_residual, r);
    c.feasible = c.feasible && residual_ok(r, need);
  }
  return c;
}

PrimalCertificate check_primal(int t, double alpha, double delta, std::vector<double> Delta) {
  if (static_cast<int>(Delta.size()) != t) throw ParameterError("primal point has the wrong length");
  PrimalCertificate c;
  c.t = t;
  c.alpha = alpha;
  c.delta = delta;
  c.Delta = std::move(Delta);
  c.status = "candidate";
  c.feasible = true;
  c.min_residual = kInfinity;
  for (double d : c.Delta) {
    c.min_residual = std::fmin(c.min_residual, d);
    c.feasible = c.feasible && residual_ok(d, 0.0);
  }
  for (int s = 1; s <= t; ++s) {
    double lhs = 0.0, scale = 0.0;
    for (int j = 1; j <= s; ++j) {
      double coef = delta + delta * alpha * (s - j + 1) + alpha - (j < s ? 2.0 : 0.0);
      double term = coef * c.Delta[static_cast<std::size_t>(j - 1)];
      lhs += term;
      scale += std::fabs(term);
    }
    double rhs = 2.0 - alpha - delta * alpha * s;
    double r = rhs - lhs;
    c.residuals.push_back(r);
    c.min_residual = std::fmin(c.min_residual, r);
    c.feasible = c.feasible && residual_ok(r, scale + std::fabs(rhs));
  }
  c.objective = primal_objective(alpha, delta, c.Delta);
  return c;
}

DualCertificate solve_U(int t, double alpha, double delta) {
  check_lp_inputs(t, alpha, delta);
  const bool exact = t <= kExactLpMaxT;
  auto [status, x] = exact ? run_lp(dual_problem<Rational>(t, Rational(alpha), Rational(delta)))
                           : run_lp(dual_problem<double>(t, alpha, delta));
  if (status != lp::Status::optimal) {
    DualCertificate c;
    c.t = t;
    c.alpha = alpha;
    c.delta = delta;
    c.exact = exact;
    c.status = status_name(status);
    return c;
  }
  std::vector<double> y(x.begin() + 1, x.end());
  DualCertificate c = check_dual(t, alpha, delta, std::move(y), x[0] - 1.0);
  c.exact = exact;
  c.status = "optimal";
  return c;
}

PrimalCertificate solve_L(int t, double alpha, double delta) {
  check_lp_inputs(t, alpha, delta);
  const bool exact = t <= kExactLpMaxT;
  auto [status, x] = exact ? run_lp(primal_problem<Rational>(t, Rational(alpha), Rational(delta)))
                           : run_lp(primal_problem<double>(t, alpha, delta));
  if (status != lp::Status::optimal) {
    PrimalCertificate c;
    c.t = t;
    c.alpha = alpha;
    c.delta = delta;
    c.exact = exact;
    c.status = status_name(status);
    c.objective = status == lp::Status::unbounded ? kInfinity : 0.0;
    return c;
  }
  PrimalCertificate c = check_primal(t, alpha, delta, std::move(x));
  c.exact = exact;
  c.status = "optimal";
  return c;
}

double growth_ratio(double alpha, double delta) { return 2.0 / (alpha + delta * (1.0 + alpha)); }

double tilde_U(double alpha, double delta) {
  if (!(alpha > 0) || !(delta > 0)) throw ParameterError("alpha and delta must be positive");
  const double k = 2.0 / (alpha * delta);
  if (!is_positive_integer(k)) {
    throw ParameterError("closed-form U needs 2/(alpha*delta) to be an integer (got " + fmt(k) + ")");
  }
  const double denom = 2.0 - alpha - delta * (1.0 + alpha);
  if (std::fabs(denom) < 1e-12) {
    throw ParameterError("closed-form U is singular when 2 - alpha - delta*(1+alpha) = 0");
  }
  const double head = alpha * std::pow(growth_ratio(alpha, delta), std::round(k));
  return head + 2.0 / (denom * denom) * (head - (2.0 - alpha) / delta + 1.0);
}

std::vector<double> closed_form_dual_y(int t, double alpha, double delta) {
  check_lp_inputs(t, alpha, delta);
  const double r = growth_ratio(alpha, delta);
  std::vector<double> y(static_cast<std::size_t>(t));
  for (int s = 0; s < t; ++s) {
    double lag = std::max(s - 1, 0);
    double v = std::max((2.0 - lag * alpha * delta) / (2.0 * delta), 0.0);
    y[static_cast<std::size_t>(t - s - 1)] = std::pow(r, s) * v;
  }
  return y;
}

double robustness_multiplier(double alpha, double delta) {
  const double u = tilde_U(alpha, delta);
  return (4.0 * u + 4.0) / delta + 2.0 * u + 5.0;
}

double lower_bound_horizon(double alpha, double delta) {
  if (!(alpha > 0) || !(delta > 0)) throw ParameterError("alpha and delta must be positive");
  return (2.0 - alpha * (1.0 - delta * delta)) / (alpha * delta * (1.0 + delta));
}

std::vector<double> closed_form_Delta(int t, double alpha, double delta) {
  check_lp_inputs(t, alpha, delta);
  const double K = 2.0 - alpha * (1.0 - delta * delta);
  const double c = alpha * delta * (1.0 + delta);
  const double r = growth_ratio(alpha, delta);
  std::vector<double> d(static_cast<std::size_t>(t));
  for (int s = 1; s <= t; ++s) d[static_cast<std::size_t>(s - 1)] = 0.5 * (K - s * c) * std::pow(r, s);
  return d;
}

double closed_form_L_objective(int t, double alpha, double delta) {
  check_lp_inputs(t, alpha, delta);
  const double K = 2.0 - alpha * (1.0 - delta * delta);
  const double c = alpha * delta * (1.0 + delta);
  const double r = growth_ratio(alpha, delta);
  const double T = t;
  const double A = 1.0 + alpha * (T + 1.0);
  const double rt = std::pow(r, T);
  const double S0 = r * (rt - 1.0) / (r - 1.0);
  const double S1 = r * (1.0 - (T + 1.0) * rt + T * rt * r) / ((1.0 - r) * (1.0 - r));
  const double S2 = r *
                    (1.0 + r - (T + 1.0) * (T + 1.0) * rt + (2.0 * T * T + 2.0 * T - 1.0) * rt * r -
                     T * T * rt * r * r) /
                    std::pow(1.0 - r, 3);
  return alpha * T + 0.5 * (K * A * S0 - (K * alpha + c * A) * S1 + c * alpha * S2);
}

double primal_objective(double alpha, double /*delta*/, const std::vector<double>& Delta) {
  const double t = static_cast<double>(Delta.size());
  double obj = alpha * t;
  for (std::size_t j = 1; j <= Delta.size(); ++j) {
    obj += Delta[j - 1] * (1.0 + alpha * (t - static_cast<double>(j) + 1.0));
  }
  return obj;
}

BoundReport aos_consistency_bound(double delta, double eta) {
  if (!(delta > 0)) throw ParameterError("delta must be positive");
  if (!(eta >= 0)) throw ParameterError("eta must be non-negative");
  return {"aos.consistency", {{"delta", delta}, {"eta", eta}}, (1.0 + 2.0 * delta) * (1.0 + 2.0 * eta), ""};
}

double admissible_alpha(double alpha, double delta) {
  if (!(alpha > 0) || !(delta > 0)) throw ParameterError("alpha and delta must be positive");
  const double k = 2.0 / (alpha * delta);
  double n = std::ceil(k);
  if (n - k > 1.0 - 1e-9) n = std::round(k);  // k already integral up to rounding
  return 2.0 / (delta * n);
}

BoundReport aos_robustness_bound(double alpha, double delta) {
  double m = robustness_multiplier(alpha, delta);
  return {"aos.robustness",
          {{"alpha", alpha}, {"delta", delta}},
          m * std::max(1.0, 2.0 / alpha),
          "((4U+4)/delta + 2U + 5) * max(1, 2/alpha) with U the closed-form bound"};
}

BoundReport aos_bound(double alpha, double delta, double eta) {
  BoundReport a = aos_consistency_bound(delta, eta);
  BoundReport b = aos_robustness_bound(alpha, delta);
  return {"aos", {{"alpha", alpha}, {"delta", delta}, {"eta", eta}}, std::min(a.value, b.value), ""};
}

BoundReport consistency_robustness_lower_bound(double alpha, double delta) {
  const double th = lower_bound_horizon(alpha, delta);
  if (!is_positive_integer(th)) {
    throw ParameterError("lower-bound horizon (2-alpha(1-delta^2))/(alpha delta (1+delta)) = " + fmt(th) +
                         " is not an integer");
  }
  const int t = static_cast<int>(std::round(th));
  PrimalCertificate lp = solve_L(t, alpha, delta);
  const double leading = alpha * delta / 4.0 * std::pow(growth_ratio(alpha, delta), t);
  return {"lower_bound.consistency_robustness",
          {{"alpha", alpha}, {"delta", delta}, {"t", static_cast<double>(t)}},
          lp.objective,
          "LP value L(t); leading term alpha*delta/4*r^t = " + fmt(leading)};
}

BoundReport memoryless_lower_bound(double alpha) {
  if (!(alpha > 0) || !(alpha < 0.25)) throw ParameterError("memoryless lower bound needs 0 < alpha < 1/4");
  return {"lower_bound.memoryless",
          {{"alpha", alpha}},
          1.0 / std::sqrt(8.0 * alpha),
          "leading term only; the o(1/sqrt(alpha)) correction is dropped"};
}

BoundReport aobd_bound(double beta_lo, double beta_hi, double eta) {
  if (!(beta_lo > 0) || !(beta_hi >= beta_lo)) throw ParameterError("need 0 < beta_lo <= beta_hi");
  if (!(eta >= 0)) throw ParameterError("eta must be non-negative");
  const double a = (1.0 + (2.0 + 1.0 / beta_hi) * beta_lo) * (1.0 + 2.0 * eta);
  const double b = 1.0 + (2.0 + 1.0 / beta_lo) * beta_hi;
  std::string note;
  if (2.0 * beta_lo * beta_hi + beta_lo < 1.0 - 1e-12) note = "2*beta_lo*beta_hi + beta_lo < 1: bound does not apply";
  return {"aobd", {{"beta_lo", beta_lo}, {"beta_hi", beta_hi}, {"eta", eta}}, std::min(a, b), note};
}

BoundReport aobd_bound_delta(double delta, double eta) {
  if (!(delta > 0) || delta > 2.0) throw ParameterError("specialized AOBD bound needs 0 < delta <= 2");
  if (!(eta >= 0)) throw ParameterError("eta must be non-negative");
  const double a = (1.0 + delta) * (1.0 + 2.0 * eta);
  const double b = 1.0 + 3.0 / delta + 2.0 / (delta * delta);
  return {"aobd.delta", {{"delta", delta}, {"eta", eta}}, std::min(a, b), ""};
}

BoundReport one_dim_lower_bound(double delta) {
  if (!(delta > 0) || !(delta < 0.5)) throw ParameterError("one-dimensional lower bound needs 0 < delta < 1/2");
  return {"lower_bound.one_dim", {{"delta", delta}}, 1.0 / (2.0 * delta), ""};
}

BoundSet applicable_bounds(double alpha, double delta, double eta, double beta_lo, double beta_hi) {
  BoundSet out;
  auto attempt = [&](const char* id, auto&& fn) {
    try {
      out.reports.push_back(fn());
    } catch (const ParameterError& e) {
      out.skipped.push_back(std::string(id) + ": " + e.what());
    }
  };
  attempt("aos.consistency", [&] { return aos_consistency_bound(delta, eta); });
  attempt("aos.robustness", [&] { return aos_robustness_bound(alpha, delta); });
  attempt("aos", [&] { return aos_bound(alpha, delta, eta); });
  attempt("lower_bound.consistency_robustness", [&] { return consistency_robustness_lower_bound(alpha, delta); });
  attempt("lower_bound.memoryless", [&] { return memoryless_lower_bound(alpha); });
  attempt("aobd", [&] { return aobd_bound(beta_lo, beta_hi, eta); });
  attempt("aobd.delta", [&] { return aobd_bound_delta(delta, eta); });
  attempt("lower_bound.one_dim", [&] { return one_dim_lower_bound(delta); });
  return out;
}

}  // namespace soco
