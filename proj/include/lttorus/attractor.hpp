#pragma once

// Closed-form dimension estimates for the attractor of the damped-driven
// Navier-Stokes system u_t + (u.grad)u = nu Laplace u - mu u - grad p + g on a
// 2D torus of periods L/alpha x L.

#include <stdexcept>
#include <string>

namespace lttorus::attractor {

struct FlowParams {
  double nu = 1.0;
  double mu = 1.0;
  double L = 1.0;
  double alpha = 1.0;        // in (0, 1]
  double grad_g_norm = 0.0;  // ||grad g||
};

// Thrown when a bound is requested outside the hypotheses it was proved under.
class ValidityError : public std::domain_error {
 public:
  explicit ValidityError(const std::string& what) : std::domain_error(what) {}
};

inline constexpr double kDefaultCLT = 1.5;
double default_c_p();  // pi / 6
inline constexpr double kDefaultCQ = 6.0;

/// Throws std::invalid_argument unless nu, mu, L > 0, alpha in (0, 1], grad_g_norm >= 0.
void validate(const FlowParams& p);

/// min((c_lt/8) G^2/(nu mu^3), (c_lt/sqrt2) G L/(nu mu)), G = ||grad g||.
double dim_bound_square(const FlowParams& p, double c_lt = kDefaultCLT);

/// (c_p/2 + sqrt(c_p c_q)) G^2/(nu mu^3); requires nu <= 8 mu L^2.
double dim_bound_elongated(const FlowParams& p, double c_p = default_c_p(), double c_q = kDefaultCQ);

/// G^2/(nu mu^3).
double kolmogorov_number(const FlowParams& p);

}  // namespace lttorus::attractor
