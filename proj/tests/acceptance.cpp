// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "lttorus/attractor.hpp"
#include "lttorus/families.hpp"
#include "lttorus/interp.hpp"
#include "lttorus/special.hpp"
#include "lttorus/spectral1d.hpp"
#include "lttorus/torus.hpp"
#include "oracles.hpp"

namespace {

using namespace lttorus;
using special::kPi;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (ok) detail = what;
      ok = false;
    }
  }
};

std::string fmt(double x, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

Outcome thresholds() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double bs = interp::beta_star(1e-4);
  const double t1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto t2 = std::chrono::steady_clock::now();
  const double bss = interp::beta_star_star(1e-4);
  const double t3 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t2).count();
  o.require(bs >= 0.0440 && bs <= 0.0460, "beta_star outside [0.0440, 0.0460]: " + fmt(bs));
  o.require(bss >= 0.8380 && bss <= 0.8400, "beta_star_star outside [0.8380, 0.8400]: " + fmt(bss));
  o.require(t1 < 5 && t3 < 5, "threshold took longer than 5 s");
  if (o.ok) o.detail = "beta_star=" + fmt(bs, 6) + " beta_star_star=" + fmt(bss, 6);
  return o;
}

Outcome constant_identities() {
  Outcome o;
  o.require(close(special::semiclassical_constant(1, 1), 2 / (3 * kPi), 1e-12), "L^cl_{1,1} != 2/(3pi)");
  torus::BetaSelection unit;
  const auto sel = torus::choose_betas(torus::TorusGeometry({1, 1}));
  o.require(sel.in_unit_regime, "d=2 square torus not in unit regime");
  o.require(close(torus::lt_constant_bound(1, sel, 2), kPi / 24, 1e-12), "d=2 constant != pi/24");
  o.require(close(torus::lt_constant_bound(1, unit, 2), kPi / 24, 1e-12), "unit constant != pi/24");
  o.require(close(special::lt_to_orthonormal_constant(kPi / 24, 2), kPi / 6, 1e-12), "orthonormal constant != pi/6");
  for (double gamma : {1.0, 1.5, 2.0})
    for (int d = 1; d <= 6; ++d) {
      const auto [product, direct] = special::product_identity_check(gamma, d);
      o.require(close(product, direct, 1e-12), "product identity fails at gamma=" + fmt(gamma) + " d=" + fmt(d));
    }
  return o;
}

Outcome unit_regime() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(2, 19);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = dim(rng);
    std::vector<double> alphas(d, 1.0);
    for (int j = 0; j + 1 < d; ++j) alphas[j] = 1.0 - unit(rng);  // in (0, 1]
    std::sort(alphas.begin(), alphas.end());
    const auto sel = torus::choose_betas(torus::TorusGeometry(alphas));
    o.require(sel.in_unit_regime && sel.constant_factor == 1.0, "geometry outside unit regime at d=" + fmt(d));
    ++checked;
  }
  // worst case: all periods equal
  o.require(torus::choose_betas(torus::TorusGeometry(std::vector<double>(19, 1.0))).in_unit_regime,
            "d=19 cube outside unit regime");
  if (o.ok) o.detail = fmt(checked) + " geometries";
  return o;
}

Outcome plateaus() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> b1(0.05, 5.0), b2(0.0, 0.83);
  for (int i = 0; i < 20; ++i) {
    const double x = b1(rng), y = b2(rng);
    o.require(std::abs(interp::k1(x).value - 1) <= 1e-6, "K1 != 1 at beta=" + fmt(x));
    o.require(std::abs(interp::k2(y).value - 1) <= 1e-6, "K2 != 1 at beta=" + fmt(y));
  }
  const auto c1 = interp::export_curve(interp::Which::K1, 0.001, 1.0, 100);
  const auto c2 = interp::export_curve(interp::Which::K2, 0.0, 0.99, 100);
  for (std::size_t i = 1; i < 100; ++i) {
    o.require(c1.rows[i].value <= c1.rows[i - 1].value, "K1 increases on the grid");
    o.require(c2.rows[i].value >= c2.rows[i - 1].value, "K2 decreases on the grid");
  }
  return o;
}

Outcome series_agreement() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> log_lambda(std::log(1e-3), std::log(1e3));
  std::uniform_real_distribution<double> b1(1e-3, 5.0), b2(0.0, 0.999);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double lambda = std::exp(log_lambda(rng));
    const double x = b1(rng), y = b2(rng);
    worst = std::max(worst, std::abs(interp::g_objective(lambda, x) - oracle::g_series(lambda, x)));
    worst = std::max(worst, std::abs(interp::f_objective(lambda, y) - oracle::f_series(lambda, y)));
  }
  o.require(worst <= 1e-9, "max deviation " + fmt(worst, 3));
  if (o.ok) o.detail = "max deviation " + fmt(worst, 3);
  return o;
}

Outcome spectral_1d() {
  Outcome o;
  const double gammas[] = {1.0, 1.5, 2.0};
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const int m = 1 + i % 3;
    const int factor_band = i % 3;  // potential band 2 * factor_band <= 4
    const double gamma = gammas[(i / 3) % 3];
    const std::uint64_t seed = 1000 + i;
    const auto v1 = spectral1d::random_psd_potential(m, factor_band, 2 * kPi, 1.0 + 0.1 * (i % 7), seed);
    const auto r1 = spectral1d::verify_bound_h1(v1, 1, 0.1, gamma, v1.band() + 32);
    o.require(r1.pass, "H1 violation at seed " + fmt(seed));
    const auto v2 = spectral1d::random_psd_potential(m, factor_band, 2 * kPi, 1.0 + 0.1 * (i % 5), seed + 500);
    const auto r2 = spectral1d::verify_bound_h2(v2, 0.3 * (i % 3), gamma, v2.band() + 32);
    o.require(r2.pass, "H2 violation at seed " + fmt(seed + 500));
    worst = std::max({worst, r1.ratio, r2.ratio});
  }
  const auto two = spectral1d::MatrixPotential::constant(Eigen::MatrixXcd::Constant(1, 1, 2.0), 2 * kPi);
  const auto c1 = spectral1d::verify_bound_h1(two, 1, 1, 1);
  const auto c2 = spectral1d::verify_bound_h2(two, 0, 1);
  o.require(c1.lhs == 1.0, "constant H1 lhs " + fmt(c1.lhs));
  o.require(c2.lhs == 2.0, "constant H2 lhs " + fmt(c2.lhs));
  if (o.ok) o.detail = "100 random potentials, max ratio " + fmt(worst, 4);
  return o;
}

Outcome torus_2d() {
  Outcome o;
  const auto v2 = torus::ScalarPotentialD::constant(2, 2.0);
  const auto c = torus::verify_bound_torus(v2, torus::TorusGeometry({1, 1}), 1);
  o.require(c.bound.lhs == 2.0, "constant lhs " + fmt(c.bound.lhs));
  o.require(close(c.bound.rhs, 20.67, 1e-3), "constant rhs " + fmt(c.bound.rhs));
  o.require(close(c.bound.rhs, kPi / 24 * 4 * kPi * kPi * 4, 1e-12), "constant rhs != (pi/24) 4pi^2 4");
  o.require(torus::kModeBudget <= 20000, "mode budget above 20000");
  double worst = 0;
  int runs = 0;
  for (double alpha : {1.0, 0.5, 0.25}) {
    const torus::TorusGeometry g({alpha, 1});
    for (double gamma : {1.0, 2.0}) {
      const auto rc = torus::verify_bound_torus(v2, g, gamma);
      o.require(rc.bound.pass, "constant potential fails at alpha=" + fmt(alpha));
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto v = torus::random_scalar_potential({1, 1}, 1.0, seed);
        const auto r = torus::verify_bound_torus(v, g, gamma);
        o.require(r.bound.pass, "violation at alpha=" + fmt(alpha) + " gamma=" + fmt(gamma) + " seed=" + fmt(seed));
        worst = std::max(worst, r.bound.ratio);
        ++runs;
      }
    }
  }
  if (o.ok) o.detail = fmt(runs) + " random runs, max ratio " + fmt(worst, 4);
  return o;
}

Outcome trace_inequalities() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(1, 5), dim(1, 3), band(1, 4);
  std::uniform_real_distribution<double> beta1(0.01, 1.0), beta2(0.0, 0.95);
  const double alphas[] = {1.0, 0.5, 0.25};
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const int m = dim(rng), b = band(rng);
    const int n1 = std::min(size(rng), m * (2 * b + 1));
    const double alpha = alphas[i % 3];
    const auto f1 = families::random_orthonormal_family(n1, m, b, 2 * kPi / alpha, false, 3000 + i);
    const auto r1 = families::verify_trace1(f1, alpha, beta1(rng));
    o.require(r1.pass, "trace1 violation at family " + fmt(i));
    const int n2 = std::min(size(rng), m * 2 * b);
    const auto f2 = families::random_orthonormal_family(n2, m, b, 2 * kPi, true, 4000 + i);
    const auto r2 = families::verify_trace2(f2, beta2(rng));
    o.require(r2.pass, "trace2 violation at family " + fmt(i));
    worst = std::max({worst, r1.ratio, r2.ratio});
  }
  families::OrthonormalFamily cs{2, 1, 1, 2 * kPi, true, {}};
  const double r = 1 / std::sqrt(2.0);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(3, 1), s = Eigen::MatrixXcd::Zero(3, 1);
  c(0, 0) = r;
  c(2, 0) = r;
  s(0, 0) = {0, r};
  s(2, 0) = {0, -r};
  cs.members = {c, s};
  const auto closed = families::verify_trace2(cs, 0);
  o.require(std::abs(closed.lhs - 2 / (kPi * kPi)) <= 1e-10, "closed-form lhs " + fmt(closed.lhs));
  o.require(close(closed.rhs, 2, 1e-12), "closed-form rhs " + fmt(closed.rhs));
  if (o.ok) o.detail = "200 random families, max ratio " + fmt(worst, 4);
  return o;
}

Outcome attractor_formulas() {
  Outcome o;
  attractor::FlowParams p{1, 1, 1, 1, 1};
  o.require(close(attractor::dim_bound_square(p), 3.0 / 16, 1e-15), "square first coefficient");
  p.grad_g_norm = 100;  // second branch active
  o.require(close(attractor::dim_bound_square(p) / 100, 3 / (2 * std::sqrt(2.0)), 1e-14), "square second coefficient");
  p.grad_g_norm = 1;
  o.require(std::abs(attractor::dim_bound_elongated(p) - (kPi / 12 + std::sqrt(kPi))) <= 1e-12, "elongated coefficient");
  p.nu = 9;
  bool guarded = false;
  try {
    attractor::dim_bound_elongated(p);
  } catch (const attractor::ValidityError&) {
    guarded = true;
  }
  o.require(guarded, "nu > 8 mu L^2 not rejected");
  return o;
}

Outcome negative_control() {
  Outcome o;
  std::ostringstream out, err;
  const int code = cli::run_cli({"verify", "--kind", "h2", "--seeds", "5", "--rhs-scale", "0.01"}, out, err);
  o.require(code == 1, "exit code " + fmt(code));
  const auto j = nlohmann::json::parse(out.str());
  const int failed = j.at("failed").get<int>();
  o.require(failed >= 1, "no failing report");
  if (o.ok) o.detail = fmt(failed) + " of 5 reports fail, exit 1";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "threshold reproduction", 10, thresholds},
      {2, "constant identities", 1, constant_identities},
      {3, "unit regime for d <= 19", 10, unit_regime},
      {4, "K-constant plateaus and monotonicity", 60, plateaus},
      {5, "closed forms vs series", 10, series_agreement},
      {6, "1D spectral bounds", 60, spectral_1d},
      {7, "2D torus bounds", 120, torus_2d},
      {8, "trace inequalities", 60, trace_inequalities},
      {9, "attractor formulas", 1, attractor_formulas},
      {10, "negative control", 30, negative_control},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.require(false, "took " + fmt(secs, 3) + " s, budget " + fmt(c.budget_s) + " s");
    std::printf("[%s] criterion %2d: %-38s %8.2f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
