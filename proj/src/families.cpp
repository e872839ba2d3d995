#include "lttorus/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lttorus/special.hpp"

namespace lttorus::families {

using special::kPi;
using Complex = std::complex<double>;

namespace {

bool same_period(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

// Row indices (k + band) of the coefficient matrix that members may occupy.
std::vector<int> admissible_rows(int band, bool zero_mean) {
  std::vector<int> rows;
  for (int k = -band; k <= band; ++k)
    if (!(zero_mean && k == 0)) rows.push_back(k + band);
  return rows;
}

Eigen::VectorXcd flatten(const Eigen::MatrixXcd& member, const std::vector<int>& rows) {
  const auto m = member.cols();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(rows.size()) * m);
  for (std::size_t r = 0; r < rows.size(); ++r) out.segment(r * m, m) = member.row(rows[r]).transpose();
  return out;
}

Eigen::MatrixXcd unflatten(const Eigen::VectorXcd& flat, const std::vector<int>& rows, int band,
                           int dim) {
  Eigen::MatrixXcd member = Eigen::MatrixXcd::Zero(2 * band + 1, dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    member.row(rows[r]) = flat.segment(r * dim, dim).transpose();
  return member;
}

Eigen::VectorXcd gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

// Orthonormalizes `count` Gaussian vectors in C^n; false on rank deficiency.
bool gram_schmidt(std::vector<Eigen::VectorXcd>& basis, int count, Eigen::Index n,
                  std::mt19937_64& rng) {
  basis.clear();
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXcd v = gaussian_vector(n, rng);
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v -= q.dot(v) * q;
    const double remaining = v.norm();
    if (!(remaining > 1e-10 * original)) return false;
    basis.push_back(v / remaining);
  }
  return true;
}

// Tr[U(x,x)^3] integrated with the rectangle rule on `nodes` points.
double rho_cube_rule(const OrthonormalFamily& fam, int nodes) {
  double sum = 0.0;
  Eigen::MatrixXcd values(fam.dim, fam.size);
  for (int j = 0; j < nodes; ++j) {
    const double x = fam.period * j / nodes;
    for (int n = 0; n < fam.size; ++n) values.col(n) = fam.evaluate(n, x);
    const Eigen::MatrixXcd u = values * values.adjoint();
    sum += (u * u * u).trace().real();
  }
  return sum * fam.period / nodes;
}

double kinetic_weight(int k, double beta, KineticMode mode) {
  if (mode.kind == KineticMode::Kind::Add) {
    const double a = mode.alpha;
    return a * a * (static_cast<double>(k) * k + beta);
  }
  return static_cast<double>(k) * k - beta;
}

void check_mode(const OrthonormalFamily& fam, double beta, KineticMode mode) {
  if (mode.kind == KineticMode::Kind::Add) {
    if (!(beta > 0.0)) throw std::invalid_argument("add mode requires beta > 0");
    if (!(mode.alpha > 0.0) || !same_period(fam.period, 2.0 * kPi / mode.alpha))
      throw std::invalid_argument("add mode requires period = 2pi/alpha");
  } else {
    if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("subtract mode requires beta in [0, 1)");
    if (!fam.zero_mean) throw std::invalid_argument("subtract mode requires a zero-mean family");
    if (!same_period(fam.period, 2.0 * kPi))
      throw std::invalid_argument("subtract mode requires period 2pi");
  }
}

void check_suborthonormal(const OrthonormalFamily& fam) {
  if (gram_norm(fam) > 1.0 + 1e-10)
    throw std::invalid_argument("family is not (sub)orthonormal: Gram matrix exceeds identity");
}

}  // namespace

double OrthonormalFamily::frequency() const { return 2.0 * kPi / period; }

Eigen::MatrixXcd OrthonormalFamily::gram() const {
  Eigen::MatrixXcd g(size, size);
  for (int n = 0; n < size; ++n)
    for (int m = 0; m < size; ++m) g(n, m) = (members[n].array() * members[m].array().conjugate()).sum();
  return g;
}

Eigen::VectorXcd OrthonormalFamily::evaluate(int n, double x) const {
  const double w = frequency();
  const double norm = std::sqrt(w / (2.0 * kPi));
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (int k = -band; k <= band; ++k)
    out += std::polar(norm, k * w * x) * members[n].row(k + band).transpose();
  return out;
}

double gram_defect(const OrthonormalFamily& fam) {
  if (fam.size == 0) return 0.0;
  return (fam.gram() - Eigen::MatrixXcd::Identity(fam.size, fam.size)).cwiseAbs().maxCoeff();
}

double gram_norm(const OrthonormalFamily& fam) {
  if (fam.size == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(fam.gram(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

OrthonormalFamily random_orthonormal_family(int size, int dim, int band, double period,
                                            bool zero_mean, std::uint64_t seed) {
  if (size < 0 || dim < 1 || band < 0 || !(period > 0.0))
    throw std::invalid_argument("random_orthonormal_family: need N >= 0, M >= 1, band >= 0, period > 0");
  const std::vector<int> rows = admissible_rows(band, zero_mean);
  const auto n = static_cast<Eigen::Index>(rows.size()) * dim;
  if (size > n)
    throw std::invalid_argument("random_orthonormal_family: family larger than the coefficient space");

  OrthonormalFamily fam{size, dim, band, period, zero_mean, {}};
  std::vector<Eigen::VectorXcd> basis;
  constexpr int kRetries = 3;
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt));
    if (!gram_schmidt(basis, size, n, rng)) continue;
    for (const auto& v : basis) fam.members.push_back(unflatten(v, rows, band, dim));
    return fam;
  }
  throw std::runtime_error("random_orthonormal_family: rank deficiency persisted after retries");
}

OrthonormalFamily project_to_random_subspace(const OrthonormalFamily& fam, int subspace_dim,
                                             std::uint64_t seed) {
  const std::vector<int> rows = admissible_rows(fam.band, fam.zero_mean);
  const auto n = static_cast<Eigen::Index>(rows.size()) * fam.dim;
  if (subspace_dim < 0 || subspace_dim > n)
    throw std::invalid_argument("project_to_random_subspace: bad subspace dimension");

  std::vector<Eigen::VectorXcd> basis;
  std::mt19937_64 rng(seed);
  if (!gram_schmidt(basis, subspace_dim, n, rng))
    throw std::runtime_error("project_to_random_subspace: rank-deficient draw");

  OrthonormalFamily out = fam;
  for (auto& member : out.members) {
    const Eigen::VectorXcd flat = flatten(member, rows);
    Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(n);
    for (const auto& q : basis) projected += q.dot(flat) * q;
    member = unflatten(projected, rows, fam.band, fam.dim);
  }
  return out;
}

DensityKinetic density_and_kinetic(const OrthonormalFamily& fam, double beta, KineticMode mode) {
  check_mode(fam, beta, mode);
  DensityKinetic out;
  out.quadrature_nodes = 8 * (2 * fam.band + 1);
  if (fam.size == 0) return out;

  out.rho_cube_integral = rho_cube_rule(fam, out.quadrature_nodes);
  const double finer = rho_cube_rule(fam, 2 * out.quadrature_nodes);
  out.converged = std::abs(finer - out.rho_cube_integral) <= 1e-8 * std::abs(finer);

  for (const auto& member : fam.members)
    for (int k = -fam.band; k <= fam.band; ++k)
      out.kinetic += kinetic_weight(k, beta, mode) * member.row(k + fam.band).squaredNorm();
  return out;
}

namespace {

BoundReport trace_report(const OrthonormalFamily& fam, double beta, KineticMode mode,
                         double k_value) {
  check_suborthonormal(fam);
  const DensityKinetic dk = density_and_kinetic(fam, beta, mode);
  const double constant = k_value * k_value;
  BoundReport r = make_bound_report(dk.rho_cube_integral, constant * dk.kinetic, constant);
  r.truncation = fam.band;
  r.quadrature_nodes = dk.quadrature_nodes;
  r.quadrature_converged = dk.converged;
  return r;
}

}  // namespace

BoundReport verify_trace1(const OrthonormalFamily& fam, double alpha, double beta) {
  const KineticMode mode = KineticMode::add(alpha);
  check_mode(fam, beta, mode);
  return trace_report(fam, beta, mode, interp::k1(beta).value);
}

BoundReport verify_trace2(const OrthonormalFamily& fam, double beta) {
  const KineticMode mode = KineticMode::subtract();
  check_mode(fam, beta, mode);
  return trace_report(fam, beta, mode, interp::k2(beta).value);
}

Complex PeriodicFunction::evaluate(double x) const {
  const double w = 2.0 * kPi / period;
  const double norm = std::sqrt(w / (2.0 * kPi));
  Complex out = 0.0;
  for (int k = -band; k <= band; ++k) out += coeffs[k + band] * std::polar(norm, k * w * x);
  return out;
}

double sup_norm_squared(const PeriodicFunction& u) {
  if (static_cast<int>(u.coeffs.size()) != 2 * u.band + 1 || !(u.period > 0.0))
    throw std::invalid_argument("PeriodicFunction: need 2 band + 1 coefficients and period > 0");
  const int nodes = 16 * (2 * u.band + 1);
  const double h = u.period / nodes;
  double best_x = 0.0;
  double best = -1.0;
  for (int j = 0; j < nodes; ++j) {
    const double q = std::norm(u.evaluate(j * h));
    if (q > best) {
      best = q;
      best_x = j * h;
    }
  }

  // Newton on q = |u|^2 from the grid maximum; only improving steps within
  // one grid spacing are accepted.
  const double w = 2.0 * kPi / u.period;
  const double norm = std::sqrt(w / (2.0 * kPi));
  double x = best_x;
  for (int iter = 0; iter < 4; ++iter) {
    Complex v = 0.0, d1 = 0.0, d2 = 0.0;
    for (int k = -u.band; k <= u.band; ++k) {
      const Complex term = u.coeffs[k + u.band] * std::polar(norm, k * w * x);
      const Complex ikw(0.0, k * w);
      v += term;
      d1 += ikw * term;
      d2 += ikw * ikw * term;
    }
    const double q1 = 2.0 * std::real(std::conj(v) * d1);
    const double q2 = 2.0 * (std::norm(d1) + std::real(std::conj(v) * d2));
    if (!(q2 < 0.0)) break;
    const double step = -q1 / q2;
    if (std::abs(step) > h) break;
    const double q_new = std::norm(u.evaluate(x + step));
    if (!(q_new > best)) break;
    best = q_new;
    x += step;
    if (std::abs(step) < 1e-14 * u.period) break;
  }
  return best;
}

BoundReport verify_interpolation(const PeriodicFunction& u, interp::Which which, double beta,
                                 double alpha) {
  double k_value = 1.0;
  KineticMode mode;
  if (which == interp::Which::K1) {
    if (!(beta > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("K1 inequality needs beta, alpha > 0");
    if (!same_period(u.period, 2.0 * kPi / alpha))
      throw std::invalid_argument("K1 inequality needs period 2pi/alpha");
    mode = KineticMode::add(alpha);
    k_value = interp::k1(beta).value;
  } else {
    if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("K2 inequality needs beta in [0, 1)");
    if (!same_period(u.period, 2.0 * kPi)) throw std::invalid_argument("K2 inequality needs period 2pi");
    double scale = 0.0;
    for (const auto& c : u.coeffs) scale = std::max(scale, std::abs(c));
    if (std::abs(u.coeffs[u.band]) > 1e-14 * scale)
      throw std::invalid_argument("K2 inequality needs a zero-mean function");
    mode = KineticMode::subtract();
    k_value = interp::k2(beta).value;
  }

  const double lhs = sup_norm_squared(u);
  double quadratic = 0.0;
  double l2 = 0.0;
  for (int k = -u.band; k <= u.band; ++k) {
    const double c2 = std::norm(u.coeffs[k + u.band]);
    quadratic += kinetic_weight(k, beta, mode) * c2;
    l2 += c2;
  }
  BoundReport r = make_bound_report(lhs, k_value * std::sqrt(quadratic) * std::sqrt(l2), k_value);
  r.truncation = u.band;
  r.quadrature_nodes = 16 * (2 * u.band + 1);
  return r;
}

}  // namespace lttorus::families
