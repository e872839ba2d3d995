#pragma once

// Sharp constants K1(beta), K2(beta) of the L_inf - H^1 - L_2 interpolation
// inequalities on the circle, and the thresholds beta_* / beta_** at which
// they stop being equal to 1.
//
//   ||u||_inf^2 <= K1(beta) (int u'^2 + alpha^2 beta u^2)^{1/2} (int u^2)^{1/2}
//   ||u||_inf^2 <= K2(beta) (int u'^2 - beta u^2)^{1/2} (int u^2)^{1/2},  mean(u) = 0
//
// Both constants are suprema over lambda > 0 of explicit coth expressions
// whose limit as lambda -> infinity is 1.

#include <optional>
#include <string>
#include <vector>

namespace lttorus::interp {

enum class Which { K1, K2 };

std::string to_string(Which which);
Which which_from_string(const std::string& name);

struct SupOptions {
  double lambda_min = 1e-10;
  double lambda_max = 1e8;
  int grid_points = 2000;
  // Golden-section stopping width, relative in lambda.
  double refine_rel_tol = 1e-12;
  // A finite maximizer is reported when the interior maximum reaches 1 - tie_tol.
  double tie_tol = 1e-9;
};

struct ConstantResult {
  Which which = Which::K1;
  double beta = 0.0;
  // max(1, interior_max); the 1 is the analytic limit at lambda -> infinity.
  double value = 1.0;
  // Absent when the supremum is only approached as lambda -> infinity.
  std::optional<double> argmax_lambda;
  double interior_max = 0.0;
  int grid_points = 0;
  bool refined = false;
};

/// sqrt(lambda) coth(pi sqrt(beta+lambda)) / sqrt(beta+lambda); beta, lambda > 0.
double g_objective(double lambda, double beta);

/// sqrt(lambda) (h(lambda-beta) - 1/pi) / (lambda-beta), h(s) = sqrt(s) coth(pi sqrt(s));
/// lambda > 0, 0 <= beta < 1.
double f_objective(double lambda, double beta);

ConstantResult k1(double beta, const SupOptions& opts = {});
ConstantResult k2(double beta, const SupOptions& opts = {});
ConstantResult k_constant(Which which, double beta, const SupOptions& opts = {});

struct ThresholdBracket {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
};

// Bisection brackets for the thresholds, hi - lo <= tol. For beta_* the upper
// end satisfies K1 = 1; for beta_** the lower end satisfies K2 = 1.
ThresholdBracket beta_star_bracket(double tol, const SupOptions& opts = {});
ThresholdBracket beta_star_star_bracket(double tol, const SupOptions& opts = {});

/// Smallest beta with K1(beta) = 1, to within tol (tol in (0, 0.01]).
double beta_star(double tol = 1e-6, const SupOptions& opts = {});
/// Largest beta with K2(beta) = 1, to within tol (tol in (0, 0.01]).
double beta_star_star(double tol = 1e-6, const SupOptions& opts = {});

/// Brackets computed once at tolerance 1e-10 with default options; safe to
/// call from several threads.
const ThresholdBracket& cached_beta_star();
const ThresholdBracket& cached_beta_star_star();

/// sum over k in Z (or Z \ {0}) of 1/(k^2 + c), by direct summation of
/// |k| <= terms plus the mean of the two integral bounds for the tail.
double coth_series_sum(double c, bool exclude_zero, long terms = 100000);

struct SeriesBound {
  double lhs = 0.0;  // the series
  double rhs = 0.0;  // K pi / sqrt(lambda)
};

/// K1: sum_Z 1/(k^2+beta+lambda) vs K1(beta) pi/sqrt(lambda).
/// K2: sum_{Z\0} 1/(k^2-beta+lambda) vs K2(beta) pi/sqrt(lambda).
SeriesBound series_bound_check(double beta, double lambda, Which which);

struct CurveRow {
  double beta = 0.0;
  double value = 1.0;
  std::optional<double> argmax_lambda;
};

struct CurveTable {
  Which which = Which::K1;
  std::vector<CurveRow> rows;
};

/// n equally spaced beta values in [beta_min, beta_max]. Throws std::logic_error
/// if the computed column violates the monotonicity of the constant.
CurveTable export_curve(Which which, double beta_min, double beta_max, int n,
                        const SupOptions& opts = {});

/// CSV with header "beta,K,argmax_lambda"; absent maximizers print as "inf".
std::string to_csv(const CurveTable& table);

}  // namespace lttorus::interp
