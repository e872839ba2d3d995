#pragma once

#include <stdexcept>
#include <utility>

namespace lttorus::special {

inline constexpr double kPi = 3.14159265358979323846;

/// Order of a Riesz mean (gamma-moment of negative eigenvalues); gamma >= 1.
class RieszOrder {
 public:
  explicit RieszOrder(double gamma) : gamma_(gamma) {
    if (!(gamma >= 1.0)) throw std::domain_error("RieszOrder: gamma must be >= 1");
  }
  double value() const { return gamma_; }

 private:
  double gamma_;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Semiclassical Lieb-Thirring constant
///   Gamma(gamma+1) / (2^d pi^{d/2} Gamma(gamma+d/2+1)).
double semiclassical_constant(double gamma, int d);

/// Both sides of prod_{j=1}^d L^cl_{gamma+(j-1)/2,1} = L^cl_{gamma,d}.
/// first = product of one-dimensional constants, second = direct value.
std::pair<double, double> product_identity_check(double gamma, int d);

/// Converts a 1-moment Lieb-Thirring constant into the constant of the
/// equivalent orthonormal-family inequality: (2/d)(1+d/2)^{1+2/d} L^{2/d}.
double lt_to_orthonormal_constant(double lt_constant, int d);

/// h(s) = sqrt(s) coth(pi sqrt(s)), continued analytically through s = 0
/// to sqrt(-s) cot(pi sqrt(-s)) on (-1, 0). Throws std::domain_error for s <= -1.
double xcoth_kernel(double s);

/// (h(s) - 1/pi) / s, the same function with the constant term removed and
/// the simple zero divided out; finite at s = 0 (value pi/3).
double xcoth_excess(double s);

}  // namespace lttorus::special
