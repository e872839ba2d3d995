#include "lttorus/attractor.hpp"

#include <algorithm>
#include <cmath>

#include "lttorus/special.hpp"

namespace lttorus::attractor {

double default_c_p() { return special::kPi / 6.0; }

void validate(const FlowParams& p) {
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!positive(p.nu)) throw std::invalid_argument("nu must be positive");
  if (!positive(p.mu)) throw std::invalid_argument("mu must be positive");
  if (!positive(p.L)) throw std::invalid_argument("L must be positive");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(p.grad_g_norm >= 0.0) || !std::isfinite(p.grad_g_norm))
    throw std::invalid_argument("grad_g_norm must be nonnegative");
}

double dim_bound_square(const FlowParams& p, double c_lt) {
  validate(p);
  if (!(c_lt > 0.0)) throw std::invalid_argument("c_lt must be positive");
  const double g = p.grad_g_norm;
  const double first = c_lt / 8.0 * g * g / (p.nu * p.mu * p.mu * p.mu);
  const double second = c_lt / std::sqrt(2.0) * g * p.L / (p.nu * p.mu);
  return std::min(first, second);
}

double dim_bound_elongated(const FlowParams& p, double c_p, double c_q) {
  validate(p);
  if (!(c_p > 0.0) || !(c_q > 0.0)) throw std::invalid_argument("c_p and c_q must be positive");
  if (p.nu > 8.0 * p.mu * p.L * p.L)
    throw ValidityError("elongated-torus bound needs nu <= 8 mu L^2");
  return (c_p / 2.0 + std::sqrt(c_p * c_q)) * kolmogorov_number(p);
}

double kolmogorov_number(const FlowParams& p) {
  validate(p);
  return p.grad_g_norm * p.grad_g_norm / (p.nu * p.mu * p.mu * p.mu);
}

}  // namespace lttorus::attractor
