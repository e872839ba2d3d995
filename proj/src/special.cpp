#include "lttorus/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace lttorus::special {

namespace {

// Radius of the power-series branch of h(s) around s = 0.
constexpr double kSeriesRadius = 0.01;

// Taylor coefficients of t*coth(t) in powers of u = t^2:
// 2^{2n} B_{2n} / (2n)!. Eight terms past the constant keep the truncation
// error below 1e-17 for |u| <= pi^2 * kSeriesRadius.
constexpr std::array<double, 9> kTcothCoeffs = {
    1.0,
    1.0 / 3.0,
    -1.0 / 45.0,
    2.0 / 945.0,
    -1.0 / 4725.0,
    2.0 / 93555.0,
    -1382.0 / 638512875.0,
    4.0 / 18243225.0,
    -3617.0 / 162820783125.0,
};

// sum_{n >= first} c_n u^{n - first}, Horner form.
double tcoth_tail(double u, std::size_t first) {
  double acc = 0.0;
  for (std::size_t n = kTcothCoeffs.size(); n-- > first;) acc = acc * u + kTcothCoeffs[n];
  return acc;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double semiclassical_constant(double gamma, int d) {
  if (!(gamma >= 0.0)) throw std::domain_error("semiclassical_constant: gamma must be >= 0");
  if (d < 1) throw std::domain_error("semiclassical_constant: d must be >= 1");
  const double half_d = 0.5 * d;
  const double log_value = log_gamma(gamma + 1.0) - log_gamma(gamma + half_d + 1.0) -
                           d * std::log(2.0) - half_d * std::log(kPi);
  return std::exp(log_value);
}

std::pair<double, double> product_identity_check(double gamma, int d) {
  if (!(gamma >= 1.0)) throw std::domain_error("product_identity_check: gamma must be >= 1");
  if (d < 1) throw std::domain_error("product_identity_check: d must be >= 1");
  double product = 1.0;
  for (int j = 1; j <= d; ++j) product *= semiclassical_constant(gamma + 0.5 * (j - 1), 1);
  return {product, semiclassical_constant(gamma, d)};
}

double lt_to_orthonormal_constant(double lt_constant, int d) {
  if (!(lt_constant > 0.0)) throw std::domain_error("lt_to_orthonormal_constant: L must be > 0");
  if (d < 1) throw std::domain_error("lt_to_orthonormal_constant: d must be >= 1");
  const double two_over_d = 2.0 / d;
  return two_over_d * std::pow(1.0 + 0.5 * d, 1.0 + two_over_d) * std::pow(lt_constant, two_over_d);
}

double xcoth_kernel(double s) {
  if (!(s > -1.0)) throw std::domain_error("xcoth_kernel: argument must exceed -1 (cot pole)");
  if (std::abs(s) < kSeriesRadius) return tcoth_tail(kPi * kPi * s, 0) / kPi;
  if (s > 0.0) {
    const double r = std::sqrt(s);
    return r / std::tanh(kPi * r);
  }
  const double r = std::sqrt(-s);
  return r * std::cos(kPi * r) / std::sin(kPi * r);
}

double xcoth_excess(double s) {
  if (!(s > -1.0)) throw std::domain_error("xcoth_excess: argument must exceed -1 (cot pole)");
  if (std::abs(s) < kSeriesRadius) return kPi * tcoth_tail(kPi * kPi * s, 1);
  return (xcoth_kernel(s) - 1.0 / kPi) / s;
}

}  // namespace lttorus::special
