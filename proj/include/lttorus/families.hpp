#pragma once

// Orthonormal families of periodic vector functions and the trace
// inequalities for U(x,x) = sum_n phi_n(x) phi_n(x)^*:
//
//   int Tr[U(x,x)^3] <= K1(beta)^2 sum_n int |phi_n'|^2 + alpha^2 beta |phi_n|^2
//   int Tr[U(x,x)^3] <= K2(beta)^2 sum_n int |phi_n'|^2 - beta |phi_n|^2   (zero mean, period 2pi)
//
// Members are stored by their coefficients in the orthonormal basis
// sqrt(alpha/2pi) exp(i k alpha x), alpha = 2pi/period, so the L2 Gram matrix
// is the plain coefficient Gram matrix.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lttorus/interp.hpp"
#include "lttorus/report.hpp"

namespace lttorus::families {

struct OrthonormalFamily {
  int size = 0;  // N
  int dim = 1;   // M
  int band = 0;
  double period = 0.0;
  bool zero_mean = false;
  // members[n](k + band, j) = phi_n coefficient of mode k, component j.
  std::vector<Eigen::MatrixXcd> members;

  double frequency() const;
  Eigen::MatrixXcd gram() const;
  // phi_n(x) as an M-vector.
  Eigen::VectorXcd evaluate(int n, double x) const;
};

/// max |G - I|.
double gram_defect(const OrthonormalFamily& fam);

/// Largest eigenvalue of the Gram matrix (<= 1 for suborthonormal families).
double gram_norm(const OrthonormalFamily& fam);

/// Gaussian coefficients orthonormalized by modified Gram-Schmidt (two passes).
/// Needs N <= M(2 band + 1), or N <= 2 M band when zero_mean. Rank-deficient
/// draws are retried with derived seeds up to three times.
OrthonormalFamily random_orthonormal_family(int size, int dim, int band, double period,
                                            bool zero_mean, std::uint64_t seed);

/// Applies the orthogonal projector onto a random `subspace_dim`-dimensional
/// subspace of the admissible coefficient space to every member. The result is
/// suborthonormal (0 <= G <= I).
OrthonormalFamily project_to_random_subspace(const OrthonormalFamily& fam, int subspace_dim,
                                             std::uint64_t seed);

struct KineticMode {
  enum class Kind { Add, Subtract };
  Kind kind = Kind::Subtract;
  double alpha = 1.0;  // Add only

  static KineticMode add(double alpha) { return {Kind::Add, alpha}; }
  static KineticMode subtract() { return {Kind::Subtract, 1.0}; }
};

struct DensityKinetic {
  double rho_cube_integral = 0.0;  // int Tr[U(x,x)^3] dx
  double kinetic = 0.0;            // sum_n sum_k w(k) |phi_n(k)|^2
  int quadrature_nodes = 0;
  bool converged = true;
};

/// w(k) = (alpha k)^2 + alpha^2 beta for Add, k^2 - beta for Subtract.
DensityKinetic density_and_kinetic(const OrthonormalFamily& fam, double beta, KineticMode mode);

BoundReport verify_trace1(const OrthonormalFamily& fam, double alpha, double beta);
BoundReport verify_trace2(const OrthonormalFamily& fam, double beta);

// A single periodic scalar function, coefficients in the same basis.
struct PeriodicFunction {
  int band = 0;
  double period = 0.0;
  std::vector<std::complex<double>> coeffs;  // index k + band

  std::complex<double> evaluate(double x) const;
};

/// max |u|^2: dense grid of 16(2 band + 1) nodes, then up to 4 Newton steps on |u|^2.
double sup_norm_squared(const PeriodicFunction& u);

/// ||u||_inf^2 <= K (sum w(k)|u_k|^2)^{1/2} (sum |u_k|^2)^{1/2} with K = K1(beta)
/// (Add, period 2pi/alpha) or K2(beta) (Subtract, zero mean, period 2pi).
BoundReport verify_interpolation(const PeriodicFunction& u, interp::Which which, double beta,
                                 double alpha = 1.0);

}  // namespace lttorus::families
