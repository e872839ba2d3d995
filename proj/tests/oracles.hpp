#pragma once

// Reference computations used by the tests. They deliberately avoid the
// library's own kernels: series are summed term by term in long double,
// spectra of constant potentials are enumerated mode by mode, and densities
// are evaluated pointwise from the raw coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// int_a^inf dx / (x^2 + c), a > sqrt(max(0, -c)).
inline long double tail_integral(long double a, long double c) {
  if (c > 0) {
    const long double r = std::sqrt(c);
    return std::atan(r / a) / r;
  }
  if (c < 0) {
    const long double m = std::sqrt(-c);
    return std::log((a + m) / (a - m)) / (2 * m);
  }
  return 1 / a;
}

// sum over k in Z (or k != 0) of 1/(k^2 + c), |k| <= terms summed directly,
// the rest replaced by the mean of its two integral bounds.
inline double series_sum(double c, bool exclude_zero, long terms = 100000) {
  long double sum = 0;
  for (long k = terms; k >= 1; --k) {
    const long double kk = static_cast<long double>(k);
    sum += 2 / (kk * kk + c);
  }
  if (!exclude_zero) sum += 1 / static_cast<long double>(c);
  const long double t = static_cast<long double>(terms);
  sum += tail_integral(t, c) + tail_integral(t + 1, c);
  return static_cast<double>(sum);
}

// sqrt(lambda)/pi * sum_Z 1/(k^2 + beta + lambda)
inline double g_series(double lambda, double beta) {
  return std::sqrt(lambda) / static_cast<double>(kPiL) * series_sum(beta + lambda, false);
}

// sqrt(lambda)/pi * sum_{Z\0} 1/(k^2 - beta + lambda)
inline double f_series(double lambda, double beta) {
  return std::sqrt(lambda) / static_cast<double>(kPiL) * series_sum(lambda - beta, true);
}

// Negative eigenvalue magnitudes of the diagonal operator with entries
// kinetic(k) - v over the integer modes in `modes`, sorted descending.
inline std::vector<double> enumerate_negatives(const std::vector<double>& kinetic, double v) {
  std::vector<double> out;
  for (double t : kinetic)
    if (t - v < 0) out.push_back(v - t);
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline double riesz(const std::vector<double>& negatives, double gamma) {
  double s = 0;
  for (double x : negatives) s += std::pow(x, gamma);
  return s;
}

// rho(x) = sum_n |phi_n(x)|^2 for scalar members with coefficients c[n][k + band]
// in the basis sqrt(alpha/2pi) exp(i k alpha x).
inline double scalar_density(const std::vector<std::vector<std::complex<double>>>& c, int band, double period,
                             double x) {
  const double alpha = 2 * static_cast<double>(kPiL) / period;
  const double norm = std::sqrt(alpha / (2 * static_cast<double>(kPiL)));
  double rho = 0;
  for (const auto& member : c) {
    std::complex<double> value = 0;
    for (int k = -band; k <= band; ++k)
      value += member[k + band] * std::polar(norm, k * alpha * x);
    rho += std::norm(value);
  }
  return rho;
}

// Composite Simpson rule on [0, period] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double period, int n) {
  const double h = period / n;
  double s = f(0) + f(period);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(i * h);
  return s * h / 3;
}

// Random unitary from the QR factorization of a complex Gaussian matrix.
template <class Rng>
Eigen::MatrixXcd random_unitary(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {normal(rng), normal(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace oracle
