#pragma once

// Fourier-Galerkin discretization of one-dimensional periodic Schrodinger
// operators with M x M Hermitian matrix potentials:
//
//   H1(beta)  = -d^2/dx^2 + alpha^2 beta - V(x)      on L2(0, 2pi/alpha)^M
//   H2(delta) = -d^2/dx^2 - delta - P(V(x) P .)      on zero-mean L2(0, 2pi)^M
//
// and checks of the Riesz-mean bounds
//
//   sum lambda_j^gamma <= (pi/sqrt3) K(beta) L^cl_{gamma,1} int Tr V^{gamma+1/2}.
//
// Fourier convention: V(x) = sum_k Vhat_k exp(i k alpha x), alpha = 2pi/period,
// and the Galerkin basis is sqrt(alpha/2pi) exp(i k alpha x).

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lttorus/report.hpp"

namespace lttorus::spectral1d {

class MatrixPotential {
 public:
  // Validates Hermitian symmetry Vhat_{-k} = Vhat_k^* and pointwise PSD
  // (smallest eigenvalue >= -1e-10 on a dense sample grid). coeffs[k + band]
  // holds Vhat_k for k in [-band, band].
  static MatrixPotential from_coefficients(std::vector<Eigen::MatrixXcd> coeffs, double period);
  static MatrixPotential constant(const Eigen::MatrixXcd& value, double period);

  int dim() const { return dim_; }
  int band() const { return band_; }
  double period() const { return period_; }
  double frequency() const;  // 2 pi / period

  // Vhat_k, zero outside the band.
  Eigen::MatrixXcd coeff(int k) const;
  const std::vector<Eigen::MatrixXcd>& coeffs() const { return coeffs_; }

  Eigen::MatrixXcd evaluate(double x) const;

  // Unitary gauge V -> U V U^* with U constant in x.
  MatrixPotential conjugated(const Eigen::MatrixXcd& unitary) const;

 private:
  MatrixPotential(std::vector<Eigen::MatrixXcd> coeffs, double period);

  int dim_ = 0;
  int band_ = 0;
  double period_ = 0.0;
  std::vector<Eigen::MatrixXcd> coeffs_;
};

/// Minimum over `samples` equispaced points of the smallest eigenvalue of V(x).
double min_pointwise_eigenvalue(const MatrixPotential& v, int samples);

/// V(x) = W(x) W(x)^* for a random W of band `band` with i.i.d. complex
/// Gaussian coefficients of standard deviation `scale`; the result has band
/// 2*band and is PSD pointwise by construction.
MatrixPotential random_psd_potential(int dim, int band, double period, double scale,
                                     std::uint64_t seed);

struct QuadratureResult {
  double value = 0.0;
  int nodes = 0;
  bool converged = true;  // |Q(2 nodes) - Q(nodes)| <= 1e-8 |Q(2 nodes)|
};

/// int_0^period Tr[V(x)^p] dx by the rectangle rule with `grid` nodes.
/// Eigenvalues of V(x) below zero are clipped to zero before powering.
QuadratureResult trace_power_integral(const MatrixPotential& v, double p, int grid);

/// Starts at `grid` and doubles until converged (at most max_doublings times).
QuadratureResult converged_trace_power_integral(const MatrixPotential& v, double p, int grid,
                                                int max_doublings = 8);

int default_truncation(const MatrixPotential& v);
int default_quadrature_grid(int band);

/// Galerkin matrix of H1 on modes k in [-N, N]; size M(2N+1). Requires
/// v.period() == 2pi/alpha and N >= v.band().
Eigen::MatrixXcd assemble_h1(const MatrixPotential& v, double alpha, double beta, int truncation);

/// Galerkin matrix of H2 on modes 0 < |k| <= N; size 2MN. Requires
/// v.period() == 2pi.
Eigen::MatrixXcd assemble_h2(const MatrixPotential& v, double delta, int truncation);

enum class OperatorKind { H1, H2 };

struct EigenReport {
  // Magnitudes of the negative eigenvalues, descending.
  std::vector<double> negatives;
  int truncation = 0;
  OperatorKind op = OperatorKind::H1;
  double alpha = 1.0;
  double beta = 0.0;   // H1 only
  double delta = 0.0;  // H2 only
};

/// Eigenvalues below -1e-12 * max|A_ij|, returned as magnitudes. Throws
/// std::invalid_argument for non-Hermitian input and std::runtime_error if
/// the eigensolver fails.
EigenReport negative_spectrum(const Eigen::MatrixXcd& a);

/// negative_spectrum of the assembled operator, with the metadata filled in.
EigenReport spectrum_h1(const MatrixPotential& v, double alpha, double beta, int truncation);
EigenReport spectrum_h2(const MatrixPotential& v, double delta, int truncation);

/// sum of negatives^gamma; gamma >= 1.
double riesz_mean(const EigenReport& report, double gamma);

BoundReport verify_bound_h1(const MatrixPotential& v, double alpha, double beta, double gamma,
                            std::optional<int> truncation = std::nullopt,
                            std::optional<int> grid = std::nullopt);

BoundReport verify_bound_h2(const MatrixPotential& v, double delta, double gamma,
                            std::optional<int> truncation = std::nullopt,
                            std::optional<int> grid = std::nullopt);

}  // namespace lttorus::spectral1d
