#include "lttorus/torus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "lttorus/interp.hpp"
#include "lttorus/special.hpp"
#include "lttorus/spectral1d.hpp"

namespace lttorus::torus {

namespace {

using Complex = std::complex<double>;

// Visits every integer vector m with |m_j| <= half[j], last axis fastest.
void for_each_index(const std::vector<int>& half, const std::function<void(const std::vector<int>&)>& body) {
  const std::size_t d = half.size();
  std::vector<int> m(d);
  for (std::size_t j = 0; j < d; ++j) m[j] = -half[j];
  while (true) {
    body(m);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (m[j] < half[j]) {
        ++m[j];
        break;
      }
      m[j] = -half[j];
      if (j == 0) return;
    }
    if (d == 0) return;
  }
}

std::size_t box_size(const std::vector<int>& half) {
  std::size_t n = 1;
  for (int h : half) n *= static_cast<std::size_t>(2 * h + 1);
  return n;
}

void check_gamma(double gamma) {
  if (!(gamma >= 1.0)) throw std::domain_error("gamma must be >= 1");
}

double k_factor(double shrink, double beta_star, double sum_alpha2, int d) {
  const double beta = shrink * beta_star;
  const double k1 = interp::k1(beta).value;
  const double k2 = interp::k2(beta * sum_alpha2).value;
  return std::pow(k1, d - 1) * k2;
}

}  // namespace

TorusGeometry::TorusGeometry(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.size() < 2) throw std::invalid_argument("torus dimension must be >= 2");
  for (std::size_t j = 0; j < alphas_.size(); ++j) {
    if (!(alphas_[j] > 0.0) || !std::isfinite(alphas_[j]))
      throw std::invalid_argument("alphas must be positive and finite");
    if (j > 0 && alphas_[j] < alphas_[j - 1])
      throw std::invalid_argument("alphas must be nondecreasing");
  }
  if (std::abs(alphas_.back() - 1.0) > 1e-12) throw std::invalid_argument("last alpha must equal 1");
  alphas_.back() = 1.0;
}

double TorusGeometry::period(int axis) const {
  return 2.0 * special::kPi / alphas_.at(static_cast<std::size_t>(axis));
}

double TorusGeometry::volume() const {
  double vol = 1.0;
  for (int j = 0; j < dim(); ++j) vol *= period(j);
  return vol;
}

BetaSelection choose_betas(const TorusGeometry& geom) {
  const int d = geom.dim();
  const double beta_star = interp::cached_beta_star().hi;
  const double beta_star_star = interp::cached_beta_star_star().lo;
  double sum_alpha2 = 0.0;
  for (int j = 0; j + 1 < d; ++j) sum_alpha2 += geom.alphas()[j] * geom.alphas()[j];

  BetaSelection sel;
  sel.delta = beta_star * sum_alpha2;
  if (sel.delta <= beta_star_star) {
    sel.betas.assign(d - 1, beta_star);
    sel.constant_factor = 1.0;
    sel.in_unit_regime = true;
    return sel;
  }
  sel.in_unit_regime = false;
  if (sel.delta < 1.0) {
    sel.betas.assign(d - 1, beta_star);
    sel.constant_factor = k_factor(1.0, beta_star, sum_alpha2, d);
    return sel;
  }

  // delta >= 1: shrink all betas by c so that delta = c beta_* S < 1 and pick
  // the c minimizing K1(c beta_*)^{d-1} K2(c beta_* S).
  const double c_max = (1.0 - 1e-6) / (beta_star * sum_alpha2);
  const double log_lo = std::log(1e-3 * c_max);
  const double log_hi = std::log(c_max);
  const int scan = 64;
  std::vector<double> values(scan + 1);
  int best = 0;
  for (int i = 0; i <= scan; ++i) {
    const double c = std::exp(log_lo + (log_hi - log_lo) * i / scan);
    values[i] = k_factor(c, beta_star, sum_alpha2, d);
    if (values[i] < values[best]) best = i;
  }
  double a = log_lo + (log_hi - log_lo) * std::max(best - 1, 0) / scan;
  double b = log_lo + (log_hi - log_lo) * std::min(best + 1, scan) / scan;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double t) { return k_factor(std::exp(t), beta_star, sum_alpha2, d); };
  double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = eval(x2);
    }
  }
  double log_c = f1 <= f2 ? x1 : x2;
  double factor = std::min(f1, f2);
  if (values[best] < factor) {
    log_c = log_lo + (log_hi - log_lo) * best / scan;
    factor = values[best];
  }
  sel.shrink = std::exp(log_c);
  sel.betas.assign(d - 1, sel.shrink * beta_star);
  sel.delta = sel.shrink * beta_star * sum_alpha2;
  sel.constant_factor = factor;
  return sel;
}

double lt_constant_bound(double gamma, const BetaSelection& sel, int d) {
  check_gamma(gamma);
  return std::pow(special::kPi / std::sqrt(3.0), d) * sel.constant_factor *
         special::semiclassical_constant(gamma, d);
}

ScalarPotentialD::ScalarPotentialD(std::vector<int> bands, std::vector<Complex> coeffs)
    : bands_(std::move(bands)), coeffs_(std::move(coeffs)) {}

std::size_t ScalarPotentialD::flat_index(const std::vector<int>& m) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < bands_.size(); ++j)
    idx = idx * static_cast<std::size_t>(2 * bands_[j] + 1) + static_cast<std::size_t>(m[j] + bands_[j]);
  return idx;
}

ScalarPotentialD ScalarPotentialD::from_coefficients(std::vector<int> bands, std::vector<Complex> coeffs) {
  if (bands.empty()) throw std::invalid_argument("potential needs at least one axis");
  for (int b : bands)
    if (b < 0) throw std::invalid_argument("bands must be nonnegative");
  if (coeffs.size() != box_size(bands)) throw std::invalid_argument("coefficient count does not match bands");

  double scale = 0.0;
  for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
  ScalarPotentialD v(bands, coeffs);
  const double tol = 1e-12 * std::max(1.0, scale);
  std::vector<int> neg(bands.size());
  for_each_index(bands, [&](const std::vector<int>& m) {
    for (std::size_t j = 0; j < m.size(); ++j) neg[j] = -m[j];
    const Complex a = coeffs[v.flat_index(m)];
    const Complex b = coeffs[v.flat_index(neg)];
    if (std::abs(a - std::conj(b)) > tol) throw std::invalid_argument("potential coefficients are not conjugate symmetric");
  });
  // Symmetrize exactly so that evaluation is real.
  for_each_index(bands, [&](const std::vector<int>& m) {
    for (std::size_t j = 0; j < m.size(); ++j) neg[j] = -m[j];
    const std::size_t i = v.flat_index(m), k = v.flat_index(neg);
    if (i <= k) {
      const Complex avg = 0.5 * (coeffs[i] + std::conj(coeffs[k]));
      v.coeffs_[i] = avg;
      v.coeffs_[k] = std::conj(avg);
    }
  });
  int samples = 8;
  for (int b : bands) samples = std::max(samples, 4 * (2 * b + 1));
  if (bands.size() > 2) samples = std::min(samples, 24);
  if (min_value_on_grid(v, samples) < -1e-10 * std::max(1.0, scale))
    throw std::invalid_argument("potential is negative somewhere");
  return v;
}

ScalarPotentialD ScalarPotentialD::constant(int d, double value) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(value >= 0.0)) throw std::invalid_argument("constant potential must be nonnegative");
  return ScalarPotentialD(std::vector<int>(d, 0), {Complex(value, 0.0)});
}

Complex ScalarPotentialD::coeff(const std::vector<int>& m) const {
  if (m.size() != bands_.size()) throw std::invalid_argument("index dimension mismatch");
  for (std::size_t j = 0; j < m.size(); ++j)
    if (std::abs(m[j]) > bands_[j]) return {0.0, 0.0};
  return coeffs_[flat_index(m)];
}

double ScalarPotentialD::evaluate_angles(const std::vector<double>& theta) const {
  if (theta.size() != bands_.size()) throw std::invalid_argument("point dimension mismatch");
  double sum = 0.0;
  std::size_t idx = 0;
  for_each_index(bands_, [&](const std::vector<int>& m) {
    double phase = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) phase += m[j] * theta[j];
    sum += (coeffs_[idx] * Complex(std::cos(phase), std::sin(phase))).real();
    ++idx;
  });
  return sum;
}

ScalarPotentialD random_scalar_potential(const std::vector<int>& w_bands, double scale, std::uint64_t seed) {
  if (w_bands.empty()) throw std::invalid_argument("potential needs at least one axis");
  for (int b : w_bands)
    if (b < 0) throw std::invalid_argument("bands must be nonnegative");
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale / std::sqrt(2.0));
  std::vector<Complex> w(box_size(w_bands));
  for (Complex& c : w) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = Complex(re, im);
  }

  std::vector<int> bands(w_bands.size());
  for (std::size_t j = 0; j < bands.size(); ++j) bands[j] = 2 * w_bands[j];
  std::vector<Complex> v(box_size(bands));
  std::vector<std::vector<int>> w_index;
  for_each_index(w_bands, [&](const std::vector<int>& k) { w_index.push_back(k); });
  // vhat_m = sum_{k - l = m} what_k conj(what_l)
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = 0; b < w.size(); ++b) {
      std::size_t idx = 0;
      for (std::size_t j = 0; j < bands.size(); ++j)
        idx = idx * static_cast<std::size_t>(2 * bands[j] + 1) +
              static_cast<std::size_t>(w_index[a][j] - w_index[b][j] + bands[j]);
      v[idx] += w[a] * std::conj(w[b]);
    }
  }
  return ScalarPotentialD::from_coefficients(bands, std::move(v));
}

double min_value_on_grid(const ScalarPotentialD& v, int samples_per_axis) {
  if (samples_per_axis < 1) throw std::invalid_argument("samples must be positive");
  const int d = v.dim();
  std::vector<int> count(d, samples_per_axis);
  std::vector<int> i(d, 0);
  std::vector<double> theta(d, 0.0);
  double lowest = std::numeric_limits<double>::infinity();
  while (true) {
    for (int j = 0; j < d; ++j) theta[j] = 2.0 * special::kPi * i[j] / samples_per_axis;
    lowest = std::min(lowest, v.evaluate_angles(theta));
    int j = d - 1;
    while (j >= 0 && ++i[j] == count[j]) {
      i[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return lowest;
}

std::vector<int> default_torus_truncation(const ScalarPotentialD& v, const TorusGeometry& geom) {
  if (v.dim() != geom.dim()) throw std::invalid_argument("potential and torus dimensions differ");
  std::vector<int> n(v.dim());
  for (int j = 0; j < v.dim(); ++j)
    n[j] = v.bands()[j] + static_cast<int>(std::ceil(6.0 / geom.alphas()[j]));
  return n;
}

Eigen::MatrixXcd assemble_torus_operator(const ScalarPotentialD& v, const TorusGeometry& geom,
                                         const std::vector<int>& truncation, bool projected) {
  const int d = geom.dim();
  if (v.dim() != d) throw std::invalid_argument("potential and torus dimensions differ");
  if (static_cast<int>(truncation.size()) != d) throw std::invalid_argument("truncation has wrong dimension");
  for (int j = 0; j < d; ++j) {
    if (truncation[j] < v.bands()[j]) throw std::invalid_argument("truncation must cover the potential band");
    if (truncation[j] < 1) throw std::invalid_argument("truncation must be >= 1");
  }
  double total = 1.0;
  for (int j = 0; j < d; ++j) total *= 2.0 * truncation[j] + 1.0;
  if (projected) total *= 2.0 * truncation[d - 1] / (2.0 * truncation[d - 1] + 1.0);
  if (total > static_cast<double>(kModeBudget))
    throw std::length_error("torus truncation exceeds the mode budget (" + std::to_string(static_cast<long>(total)) +
                             " > " + std::to_string(kModeBudget) + ")");

  std::vector<std::vector<int>> modes;
  for_each_index(truncation, [&](const std::vector<int>& k) {
    if (projected && k[d - 1] == 0) return;
    modes.push_back(k);
  });
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  std::vector<int> diff(d);
  for (Eigen::Index r = 0; r < n; ++r) {
    double kinetic = 0.0;
    for (int j = 0; j < d; ++j) {
      const double ak = geom.alphas()[j] * modes[r][j];
      kinetic += ak * ak;
    }
    a(r, r) = kinetic;
    if (modes[r][d - 1] == 0) continue;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (modes[c][d - 1] == 0) continue;
      bool inside = true;
      for (int j = 0; j < d && inside; ++j) {
        diff[j] = modes[r][j] - modes[c][j];
        inside = std::abs(diff[j]) <= v.bands()[j];
      }
      if (inside) a(r, c) -= v.coeff(diff);
    }
  }
  return a;
}

namespace {

double tensor_rectangle(const ScalarPotentialD& v, const TorusGeometry& geom, double p, const std::vector<int>& grid) {
  const int d = geom.dim();
  double cell = 1.0;
  for (int j = 0; j < d; ++j) cell *= geom.period(j) / grid[j];
  std::vector<int> i(d, 0);
  std::vector<double> theta(d, 0.0);
  double sum = 0.0;
  while (true) {
    for (int j = 0; j < d; ++j) theta[j] = 2.0 * special::kPi * i[j] / grid[j];
    const double value = std::max(v.evaluate_angles(theta), 0.0);
    if (value > 0.0) sum += std::pow(value, p);
    int j = d - 1;
    while (j >= 0 && ++i[j] == grid[j]) {
      i[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return sum * cell;
}

}  // namespace

PowerIntegral potential_power_integral(const ScalarPotentialD& v, const TorusGeometry& geom, double p,
                                       std::optional<std::vector<int>> grid) {
  const int d = geom.dim();
  if (v.dim() != d) throw std::invalid_argument("potential and torus dimensions differ");
  if (!(p >= 1.0)) throw std::domain_error("power must be >= 1");
  std::vector<int> g(d);
  if (grid) {
    if (static_cast<int>(grid->size()) != d) throw std::invalid_argument("grid has wrong dimension");
    g = *grid;
  } else {
    for (int j = 0; j < d; ++j) g[j] = 8 * (2 * v.bands()[j] + 1);
  }
  for (int j = 0; j < d; ++j)
    if (g[j] < 2 * v.bands()[j] + 1) throw std::invalid_argument("quadrature grid too coarse for the potential band");

  PowerIntegral out;
  out.value = tensor_rectangle(v, geom, p, g);
  out.nodes = 1;
  for (int n : g) out.nodes *= n;
  std::vector<int> g2(g);
  for (int& n : g2) n *= 2;
  const double fine = tensor_rectangle(v, geom, p, g2);
  out.converged = std::abs(fine - out.value) <= 1e-8 * std::abs(fine);
  return out;
}

TorusReport verify_bound_torus(const ScalarPotentialD& v, const TorusGeometry& geom, double gamma,
                               std::optional<std::vector<int>> truncation, std::optional<std::vector<int>> grid) {
  check_gamma(gamma);
  const int d = geom.dim();
  const std::vector<int> n = truncation.value_or(default_torus_truncation(v, geom));
  const spectral1d::EigenReport spectrum = spectral1d::negative_spectrum(assemble_torus_operator(v, geom, n, true));
  const double lhs = spectral1d::riesz_mean(spectrum, gamma);

  const BetaSelection sel = choose_betas(geom);
  const double constant = lt_constant_bound(gamma, sel, d);
  const PowerIntegral integral = potential_power_integral(v, geom, gamma + 0.5 * d, grid);

  BoundReport bound = make_bound_report(lhs, constant * integral.value, constant);
  bound.gamma = gamma;
  bound.truncation = *std::max_element(n.begin(), n.end());
  bound.quadrature_nodes = integral.nodes;
  bound.quadrature_converged = integral.converged;
  bound.lhs_is_lower_bound = true;
  return TorusReport{bound, geom, sel, n};
}

}  // namespace lttorus::torus
