#include "lttorus/interp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lttorus/parallel.hpp"
#include "lttorus/special.hpp"

namespace lttorus::interp {

using special::kPi;

std::string to_string(Which which) { return which == Which::K1 ? "K1" : "K2"; }

Which which_from_string(const std::string& name) {
  if (name == "K1" || name == "k1") return Which::K1;
  if (name == "K2" || name == "k2") return Which::K2;
  throw std::invalid_argument("unknown constant '" + name + "' (expected k1 or k2)");
}

double g_objective(double lambda, double beta) {
  if (!(lambda > 0.0) || !(beta > 0.0))
    throw std::domain_error("g_objective: requires lambda > 0 and beta > 0");
  const double s = beta + lambda;
  return std::sqrt(lambda) * special::xcoth_kernel(s) / s;
}

double f_objective(double lambda, double beta) {
  if (!(lambda > 0.0) || !(beta >= 0.0 && beta < 1.0))
    throw std::domain_error("f_objective: requires lambda > 0 and 0 <= beta < 1");
  return std::sqrt(lambda) * special::xcoth_excess(lambda - beta);
}

namespace {

// Maximizes fn over lambda on a logarithmic grid, then refines the best
// interior grid point by golden-section search in log(lambda).
template <class Fn>
ConstantResult sup_search(Fn&& fn, Which which, double beta, const SupOptions& opts) {
  if (opts.grid_points < 3 || !(opts.lambda_min > 0.0) || !(opts.lambda_max > opts.lambda_min))
    throw std::invalid_argument("SupOptions: need grid_points >= 3 and 0 < lambda_min < lambda_max");

  const int n = opts.grid_points;
  const double t0 = std::log(opts.lambda_min);
  const double dt = (std::log(opts.lambda_max) - t0) / (n - 1);
  auto at = [&](double t) { return fn(std::exp(t)); };

  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = at(t0 + i * dt);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  ConstantResult result;
  result.which = which;
  result.beta = beta;
  result.grid_points = n;
  double best_t = t0 + best * dt;

  const bool interior = best > 0 && best < n - 1;
  if (interior) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = best_t - dt;
    double b = best_t + dt;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = at(c);
    double fd = at(d);
    while (b - a > opts.refine_rel_tol) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = at(d);
      }
    }
    const double tm = 0.5 * (a + b);
    const double fm = at(tm);
    for (auto [t, v] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{tm, fm}}) {
      if (v > best_value) {
        best_value = v;
        best_t = t;
      }
    }
    result.refined = true;
  }

  result.interior_max = best_value;
  result.value = std::max(1.0, best_value);
  if (interior && best_value >= 1.0 - opts.tie_tol) result.argmax_lambda = std::exp(best_t);
  return result;
}

// Bisection on excess(beta) = interior_max - 1. For K1 the excess is positive
// left of the root, for K2 right of it.
ThresholdBracket bisect_threshold(Which which, double lo, double hi, double tol,
                                  const SupOptions& opts) {
  auto excess = [&](double beta) { return k_constant(which, beta, opts).interior_max - 1.0; };
  const bool positive_below = which == Which::K1;
  const double e_lo = excess(lo);
  const double e_hi = excess(hi);
  if ((e_lo > 0.0) != positive_below || (e_hi > 0.0) == positive_below)
    throw std::runtime_error("threshold bisection: excess does not change sign on [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((excess(mid) > 0.0) == positive_below)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

void check_tol(double tol) {
  if (!(tol > 0.0 && tol <= 0.01)) throw std::invalid_argument("threshold tol must lie in (0, 0.01]");
}

}  // namespace

ConstantResult k1(double beta, const SupOptions& opts) {
  if (!(beta > 0.0)) throw std::domain_error("k1: beta must be > 0");
  return sup_search([beta](double lambda) { return g_objective(lambda, beta); }, Which::K1, beta,
                    opts);
}

ConstantResult k2(double beta, const SupOptions& opts) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::domain_error("k2: beta must lie in [0, 1)");
  return sup_search([beta](double lambda) { return f_objective(lambda, beta); }, Which::K2, beta,
                    opts);
}

ConstantResult k_constant(Which which, double beta, const SupOptions& opts) {
  return which == Which::K1 ? k1(beta, opts) : k2(beta, opts);
}

ThresholdBracket beta_star_bracket(double tol, const SupOptions& opts) {
  check_tol(tol);
  return bisect_threshold(Which::K1, 1e-4, 1.0, tol, opts);
}

ThresholdBracket beta_star_star_bracket(double tol, const SupOptions& opts) {
  check_tol(tol);
  return bisect_threshold(Which::K2, 0.0, 1.0 - 1e-6, tol, opts);
}

double beta_star(double tol, const SupOptions& opts) { return beta_star_bracket(tol, opts).mid(); }

double beta_star_star(double tol, const SupOptions& opts) {
  return beta_star_star_bracket(tol, opts).mid();
}

const ThresholdBracket& cached_beta_star() {
  static const ThresholdBracket bracket = bisect_threshold(Which::K1, 1e-4, 1.0, 1e-10, {});
  return bracket;
}

const ThresholdBracket& cached_beta_star_star() {
  static const ThresholdBracket bracket =
      bisect_threshold(Which::K2, 0.0, 1.0 - 1e-6, 1e-10, {});
  return bracket;
}

double coth_series_sum(double c, bool exclude_zero, long terms) {
  if (terms < 1) throw std::invalid_argument("coth_series_sum: need at least one term");
  if (exclude_zero ? !(c > -1.0) : !(c > 0.0))
    throw std::domain_error("coth_series_sum: series has a pole");

  // int_x^inf dt / (t^2 + c)
  auto tail_integral = [c](double x) {
    if (c > 0.0) {
      const double r = std::sqrt(c);
      return std::atan(r / x) / r;
    }
    if (c < 0.0) {
      const double a = std::sqrt(-c);
      return std::log1p(2.0 * a / (x - a)) / (2.0 * a);
    }
    return 1.0 / x;
  };

  const double k_max = static_cast<double>(terms);
  double sum = 2.0 * 0.5 * (tail_integral(k_max) + tail_integral(k_max + 1.0));
  for (long k = terms; k >= 1; --k) {
    const double kk = static_cast<double>(k);
    sum += 2.0 / (kk * kk + c);
  }
  if (!exclude_zero) sum += 1.0 / c;
  return sum;
}

SeriesBound series_bound_check(double beta, double lambda, Which which) {
  if (!(lambda > 0.0)) throw std::domain_error("series_bound_check: lambda must be > 0");
  const ConstantResult k = k_constant(which, beta);
  SeriesBound out;
  out.lhs = which == Which::K1 ? coth_series_sum(beta + lambda, false)
                               : coth_series_sum(lambda - beta, true);
  out.rhs = k.value * kPi / std::sqrt(lambda);
  return out;
}

CurveTable export_curve(Which which, double beta_min, double beta_max, int n,
                        const SupOptions& opts) {
  if (n < 2) throw std::invalid_argument("export_curve: need n >= 2");
  if (!(beta_max > beta_min)) throw std::invalid_argument("export_curve: need beta_min < beta_max");
  if (which == Which::K1 && !(beta_min > 0.0))
    throw std::invalid_argument("export_curve: K1 requires beta > 0");
  if (which == Which::K2 && !(beta_min >= 0.0 && beta_max < 1.0))
    throw std::invalid_argument("export_curve: K2 requires beta in [0, 1)");

  CurveTable table;
  table.which = which;
  table.rows.resize(static_cast<std::size_t>(n));
  parallel_for(table.rows.size(), [&](std::size_t i) {
    const double beta =
        i + 1 == table.rows.size() ? beta_max : beta_min + (beta_max - beta_min) * i / (n - 1);
    const ConstantResult r = k_constant(which, beta, opts);
    table.rows[i] = {beta, r.value, r.argmax_lambda};
  });

  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double prev = table.rows[i - 1].value;
    const double cur = table.rows[i].value;
    const double slack = 1e-10 * std::max(prev, cur);
    const bool ok = which == Which::K1 ? cur <= prev + slack : cur >= prev - slack;
    if (!ok) throw std::logic_error("export_curve: monotonicity violated at beta = " +
                                    std::to_string(table.rows[i].beta));
  }
  return table;
}

std::string to_csv(const CurveTable& table) {
  std::ostringstream out;
  out << std::setprecision(15);
  out << "beta,K,argmax_lambda\n";
  for (const auto& row : table.rows) {
    out << row.beta << ',' << row.value << ',';
    if (row.argmax_lambda)
      out << *row.argmax_lambda;
    else
      out << "inf";
    out << '\n';
  }
  return out.str();
}

}  // namespace lttorus::interp
