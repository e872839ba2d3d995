#pragma once

// Lieb-Thirring bounds for H = -Laplace - P(V P .) on the torus
// (0, 2pi/alpha_1) x ... x (0, 2pi/alpha_{d-1}) x (0, 2pi), where P removes
// the mean in the last (shortest) coordinate:
//
//   sum lambda_n^gamma <= (pi/sqrt3)^d prod_j K1(beta_j) K2(delta) L^cl_{gamma,d} int V^{gamma+d/2},
//   delta = sum_j alpha_j^2 beta_j < 1.
//
// With beta_j = beta_* every K-factor equals 1 as long as delta <= beta_**,
// which holds for all period ratios when d <= 19.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lttorus/report.hpp"

namespace lttorus::torus {

class TorusGeometry {
 public:
  // alphas must satisfy 0 < alpha_1 <= ... <= alpha_{d-1} <= alpha_d = 1, d >= 2.
  explicit TorusGeometry(std::vector<double> alphas);

  int dim() const { return static_cast<int>(alphas_.size()); }
  const std::vector<double>& alphas() const { return alphas_; }
  double period(int axis) const;
  double volume() const;

 private:
  std::vector<double> alphas_;
};

struct BetaSelection {
  std::vector<double> betas;  // d - 1 entries
  double delta = 0.0;
  double constant_factor = 1.0;  // prod K1(beta_j) * K2(delta)
  bool in_unit_regime = true;
  double shrink = 1.0;  // betas = shrink * beta_*
};

/// beta_j = beta_* for all j; outside the unit regime either keeps them
/// (delta < 1) or shrinks them uniformly to the admissible factor that
/// minimizes prod K1 * K2 (delta >= 1).
BetaSelection choose_betas(const TorusGeometry& geom);

/// (pi/sqrt3)^d * sel.constant_factor * L^cl_{gamma,d}.
double lt_constant_bound(double gamma, const BetaSelection& sel, int d);

// Real scalar potential V(x) = sum_m vhat_m exp(i sum_j m_j alpha_j x_j),
// m_j in [-B_j, B_j], with vhat_{-m} = conj(vhat_m) and V >= 0.
class ScalarPotentialD {
 public:
  static ScalarPotentialD from_coefficients(std::vector<int> bands,
                                            std::vector<std::complex<double>> coeffs);
  static ScalarPotentialD constant(int d, double value);

  int dim() const { return static_cast<int>(bands_.size()); }
  const std::vector<int>& bands() const { return bands_; }
  // vhat_m, zero outside the band box.
  std::complex<double> coeff(const std::vector<int>& m) const;
  // V at angles theta_j = alpha_j x_j.
  double evaluate_angles(const std::vector<double>& theta) const;

 private:
  ScalarPotentialD(std::vector<int> bands, std::vector<std::complex<double>> coeffs);
  std::size_t flat_index(const std::vector<int>& m) const;

  std::vector<int> bands_;
  std::vector<std::complex<double>> coeffs_;
};

/// V = |w|^2 for w with i.i.d. complex Gaussian coefficients (std `scale`) on
/// the box prod [-w_bands_j, w_bands_j]; V has bands 2 * w_bands.
ScalarPotentialD random_scalar_potential(const std::vector<int>& w_bands, double scale,
                                         std::uint64_t seed);

/// Minimum of V over a tensor grid of `samples_per_axis`^d angles.
double min_value_on_grid(const ScalarPotentialD& v, int samples_per_axis);

inline constexpr long kModeBudget = 5000;

/// N_j = B_j + ceil(6 / alpha_j).
std::vector<int> default_torus_truncation(const ScalarPotentialD& v, const TorusGeometry& geom);

/// Galerkin matrix on the tensor Fourier modes |k_j| <= N_j. With
/// `projected` the basis is the range of P (k_d != 0); otherwise the k_d = 0
/// modes are kept and see only the kinetic term. Throws std::length_error
/// past kModeBudget modes.
Eigen::MatrixXcd assemble_torus_operator(const ScalarPotentialD& v, const TorusGeometry& geom,
                                         const std::vector<int>& truncation,
                                         bool projected = true);

struct PowerIntegral {
  double value = 0.0;
  int nodes = 0;
  bool converged = true;
};

/// int over the torus of max(V, 0)^p, tensor rectangle rule with grid_j nodes
/// per axis (default 8(2 B_j + 1)); convergence checked by doubling.
PowerIntegral potential_power_integral(const ScalarPotentialD& v, const TorusGeometry& geom,
                                       double p, std::optional<std::vector<int>> grid = std::nullopt);

struct TorusReport {
  BoundReport bound;
  TorusGeometry geometry;
  BetaSelection selection;
  std::vector<int> truncation;
};

TorusReport verify_bound_torus(const ScalarPotentialD& v, const TorusGeometry& geom, double gamma,
                               std::optional<std::vector<int>> truncation = std::nullopt,
                               std::optional<std::vector<int>> grid = std::nullopt);

}  // namespace lttorus::torus
