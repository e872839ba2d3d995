#include "lttorus/spectral1d.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "lttorus/interp.hpp"
#include "lttorus/special.hpp"

namespace lttorus::spectral1d {

using special::kPi;
using Complex = std::complex<double>;

namespace {

constexpr double kPsdTolerance = 1e-10;

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_matching_period(const MatrixPotential& v, double period) {
  if (std::abs(v.period() - period) > 1e-12 * period)
    throw std::invalid_argument("dimension mismatch: potential period " +
                                std::to_string(v.period()) + " != operator period " +
                                std::to_string(period));
}

void check_gamma(double gamma) { (void)special::RieszOrder(gamma); }

// Fills the potential part of a Galerkin matrix: block (a, b) = -Vhat_{k_a - k_b}.
void add_potential_blocks(const MatrixPotential& v, const std::vector<int>& modes,
                          Eigen::MatrixXcd& a) {
  const int m = v.dim();
  const int n = static_cast<int>(modes.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int diff = modes[i] - modes[j];
      if (std::abs(diff) > v.band()) continue;
      a.block(i * m, j * m, m, m) -= v.coeffs()[diff + v.band()];
    }
  }
}

}  // namespace

MatrixPotential::MatrixPotential(std::vector<Eigen::MatrixXcd> coeffs, double period)
    : dim_(static_cast<int>(coeffs.front().rows())),
      band_(static_cast<int>(coeffs.size() / 2)),
      period_(period),
      coeffs_(std::move(coeffs)) {}

MatrixPotential MatrixPotential::from_coefficients(std::vector<Eigen::MatrixXcd> coeffs,
                                                   double period) {
  if (!(period > 0.0)) throw std::invalid_argument("MatrixPotential: period must be > 0");
  if (coeffs.empty() || coeffs.size() % 2 == 0)
    throw std::invalid_argument("MatrixPotential: need 2*band+1 coefficient matrices");
  const auto m = coeffs.front().rows();
  if (m < 1) throw std::invalid_argument("MatrixPotential: matrix dimension must be >= 1");
  double scale = 0.0;
  for (const auto& c : coeffs) {
    if (c.rows() != m || c.cols() != m)
      throw std::invalid_argument("MatrixPotential: coefficient blocks must all be M x M");
    scale = std::max(scale, max_abs(c));
  }

  const int band = static_cast<int>(coeffs.size() / 2);
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int k = 0; k <= band; ++k) {
    const Eigen::MatrixXcd& pos = coeffs[band + k];
    const Eigen::MatrixXcd& neg = coeffs[band - k];
    if (max_abs(neg - pos.adjoint()) > tol)
      throw std::invalid_argument("MatrixPotential: coefficients violate Vhat_{-k} = Vhat_k^*");
  }
  // Exact Hermitian symmetry keeps every Galerkin matrix exactly Hermitian.
  coeffs[band] = (0.5 * (coeffs[band] + coeffs[band].adjoint())).eval();
  for (int k = 1; k <= band; ++k) coeffs[band - k] = coeffs[band + k].adjoint();

  MatrixPotential v(std::move(coeffs), period);
  const int samples = std::max(512, 8 * (2 * band + 1));
  if (min_pointwise_eigenvalue(v, samples) < -kPsdTolerance * std::max(1.0, scale))
    throw std::invalid_argument("MatrixPotential: potential is not pointwise positive semidefinite");
  return v;
}

MatrixPotential MatrixPotential::constant(const Eigen::MatrixXcd& value, double period) {
  return from_coefficients({value}, period);
}

double MatrixPotential::frequency() const { return 2.0 * kPi / period_; }

Eigen::MatrixXcd MatrixPotential::coeff(int k) const {
  if (std::abs(k) > band_) return Eigen::MatrixXcd::Zero(dim_, dim_);
  return coeffs_[k + band_];
}

Eigen::MatrixXcd MatrixPotential::evaluate(double x) const {
  const double w = frequency();
  Eigen::MatrixXcd out = coeffs_[band_];
  for (int k = 1; k <= band_; ++k) {
    const Complex phase = std::polar(1.0, k * w * x);
    out += phase * coeffs_[band_ + k] + std::conj(phase) * coeffs_[band_ - k];
  }
  return out;
}

MatrixPotential MatrixPotential::conjugated(const Eigen::MatrixXcd& unitary) const {
  if (unitary.rows() != dim_ || unitary.cols() != dim_)
    throw std::invalid_argument("MatrixPotential::conjugated: dimension mismatch");
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(unitary * c * unitary.adjoint());
  return from_coefficients(std::move(out), period_);
}

double min_pointwise_eigenvalue(const MatrixPotential& v, int samples) {
  if (samples < 1) throw std::invalid_argument("min_pointwise_eigenvalue: need samples >= 1");
  double lowest = std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  for (int j = 0; j < samples; ++j) {
    solver.compute(v.evaluate(v.period() * j / samples), Eigen::EigenvaluesOnly);
    lowest = std::min(lowest, solver.eigenvalues().minCoeff());
  }
  return lowest;
}

MatrixPotential random_psd_potential(int dim, int band, double period, double scale,
                                     std::uint64_t seed) {
  if (dim < 1 || band < 0 || !(period > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("random_psd_potential: need M >= 1, band >= 0, period > 0, scale > 0");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale / std::sqrt(2.0));
  std::vector<Eigen::MatrixXcd> w(2 * band + 1, Eigen::MatrixXcd(dim, dim));
  for (auto& block : w)
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) block(r, c) = Complex(normal(rng), normal(rng));

  // Vhat_m = sum_k What_k What_{k-m}^*
  const int vband = 2 * band;
  std::vector<Eigen::MatrixXcd> v(2 * vband + 1, Eigen::MatrixXcd::Zero(dim, dim));
  for (int m = 0; m <= vband; ++m) {
    for (int k = -band; k <= band; ++k) {
      const int l = k - m;
      if (l < -band || l > band) continue;
      v[vband + m] += w[k + band] * w[l + band].adjoint();
    }
    if (m > 0) v[vband - m] = v[vband + m].adjoint();
  }
  return MatrixPotential::from_coefficients(std::move(v), period);
}

QuadratureResult trace_power_integral(const MatrixPotential& v, double p, int grid) {
  if (!(p >= 1.0)) throw std::invalid_argument("trace_power_integral: need p >= 1");
  if (grid < 4 * (2 * v.band() + 1))
    throw std::invalid_argument("trace_power_integral: grid must be >= 4(2 band + 1)");

  auto rule = [&](int nodes) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    double sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
      solver.compute(v.evaluate(v.period() * j / nodes), Eigen::EigenvaluesOnly);
      for (double e : solver.eigenvalues()) sum += e > 0.0 ? std::pow(e, p) : 0.0;
    }
    return sum * v.period() / nodes;
  };

  QuadratureResult out;
  out.nodes = grid;
  out.value = rule(grid);
  const double finer = rule(2 * grid);
  out.converged = std::abs(finer - out.value) <= 1e-8 * std::abs(finer);
  return out;
}

QuadratureResult converged_trace_power_integral(const MatrixPotential& v, double p, int grid,
                                                int max_doublings) {
  QuadratureResult q = trace_power_integral(v, p, grid);
  for (int i = 0; i < max_doublings && !q.converged; ++i) {
    grid *= 2;
    q = trace_power_integral(v, p, grid);
  }
  return q;
}

int default_truncation(const MatrixPotential& v) { return v.band() + 32; }

int default_quadrature_grid(int band) { return 8 * (2 * band + 1); }

Eigen::MatrixXcd assemble_h1(const MatrixPotential& v, double alpha, double beta,
                             int truncation) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("assemble_h1: need alpha > 0 and beta > 0");
  require_matching_period(v, 2.0 * kPi / alpha);
  if (truncation < v.band())
    throw std::invalid_argument("dimension mismatch: truncation below potential band");

  std::vector<int> modes;
  for (int k = -truncation; k <= truncation; ++k) modes.push_back(k);
  const int m = v.dim();
  const auto n = static_cast<Eigen::Index>(modes.size()) * m;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double k = modes[i];
    const double diag = alpha * alpha * (k * k + beta);
    for (int r = 0; r < m; ++r) a(i * m + r, i * m + r) = diag;
  }
  add_potential_blocks(v, modes, a);
  return a;
}

Eigen::MatrixXcd assemble_h2(const MatrixPotential& v, double delta, int truncation) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("assemble_h2: need delta in [0, 1)");
  require_matching_period(v, 2.0 * kPi);
  if (truncation < 1) throw std::invalid_argument("assemble_h2: truncation must be >= 1");

  // The range of P is spanned by the k != 0 modes, on which the Galerkin
  // matrix of P V P equals that of V.
  std::vector<int> modes;
  for (int k = -truncation; k <= truncation; ++k)
    if (k != 0) modes.push_back(k);
  const int m = v.dim();
  const auto n = static_cast<Eigen::Index>(modes.size()) * m;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double k = modes[i];
    for (int r = 0; r < m; ++r) a(i * m + r, i * m + r) = k * k - delta;
  }
  add_potential_blocks(v, modes, a);
  return a;
}

EigenReport negative_spectrum(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("negative_spectrum: matrix must be square");
  EigenReport report;
  if (a.size() == 0) return report;
  const double norm = max_abs(a);
  if (max_abs(a - a.adjoint()) > 1e-12 * std::max(1.0, norm))
    throw std::invalid_argument("negative_spectrum: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("negative_spectrum: Hermitian eigensolver did not converge");

  const double cut = 1e-12 * norm;
  for (double e : solver.eigenvalues())
    if (e < -cut) report.negatives.push_back(-e);
  std::sort(report.negatives.begin(), report.negatives.end(), std::greater<>());
  return report;
}

double riesz_mean(const EigenReport& report, double gamma) {
  check_gamma(gamma);
  double sum = 0.0;
  // Ascending order adds the small terms first.
  for (auto it = report.negatives.rbegin(); it != report.negatives.rend(); ++it)
    sum += std::pow(*it, gamma);
  return sum;
}

namespace {

BoundReport finish_report(double lhs, double k_value, double gamma, const MatrixPotential& v,
                          int truncation, std::optional<int> grid) {
  const QuadratureResult q = converged_trace_power_integral(
      v, gamma + 0.5, grid.value_or(default_quadrature_grid(v.band())));
  const double constant =
      kPi / std::sqrt(3.0) * k_value * special::semiclassical_constant(gamma, 1);
  BoundReport r = make_bound_report(lhs, constant * q.value, constant);
  r.gamma = gamma;
  r.truncation = truncation;
  r.quadrature_nodes = q.nodes;
  r.quadrature_converged = q.converged;
  r.lhs_is_lower_bound = true;
  return r;
}

}  // namespace

EigenReport spectrum_h1(const MatrixPotential& v, double alpha, double beta, int truncation) {
  EigenReport r = negative_spectrum(assemble_h1(v, alpha, beta, truncation));
  r.truncation = truncation;
  r.op = OperatorKind::H1;
  r.alpha = alpha;
  r.beta = beta;
  return r;
}

EigenReport spectrum_h2(const MatrixPotential& v, double delta, int truncation) {
  EigenReport r = negative_spectrum(assemble_h2(v, delta, truncation));
  r.truncation = truncation;
  r.op = OperatorKind::H2;
  r.delta = delta;
  return r;
}

BoundReport verify_bound_h1(const MatrixPotential& v, double alpha, double beta, double gamma,
                            std::optional<int> truncation, std::optional<int> grid) {
  check_gamma(gamma);
  const int n = truncation.value_or(default_truncation(v));
  const EigenReport spectrum = spectrum_h1(v, alpha, beta, n);
  const double k_value = interp::k1(beta).value;
  return finish_report(riesz_mean(spectrum, gamma), k_value, gamma, v, n, grid);
}

BoundReport verify_bound_h2(const MatrixPotential& v, double delta, double gamma,
                            std::optional<int> truncation, std::optional<int> grid) {
  check_gamma(gamma);
  const int n = truncation.value_or(default_truncation(v));
  const EigenReport spectrum = spectrum_h2(v, delta, n);
  const double k_value = interp::k2(delta).value;
  return finish_report(riesz_mean(spectrum, gamma), k_value, gamma, v, n, grid);
}

}  // namespace lttorus::spectral1d
