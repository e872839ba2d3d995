#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lttorus/attractor.hpp"
#include "lttorus/special.hpp"

using namespace lttorus::attractor;
using lttorus::special::kPi;

namespace {

FlowParams unit_flow() { return FlowParams{1, 1, 1, 1, 1}; }

}  // namespace

TEST_CASE("square torus bound") {
  CHECK(dim_bound_square(unit_flow()) == doctest::Approx(3.0 / 16).epsilon(1e-15));
  FlowParams p = unit_flow();
  p.grad_g_norm = 0;
  CHECK(dim_bound_square(p) == 0);
  p = unit_flow();
  p.nu = 1e-3;
  CHECK(dim_bound_square(p) == doctest::Approx(187.5).epsilon(1e-13));
  // second branch coefficient 3/(2 sqrt 2) shows up once it is the smaller one
  p = unit_flow();
  p.grad_g_norm = 100;
  CHECK(dim_bound_square(p) == doctest::Approx(3 / (2 * std::sqrt(2.0)) * 100).epsilon(1e-13));
  CHECK(dim_bound_square(unit_flow(), 1.0) == doctest::Approx(1.0 / 8));
  CHECK_THROWS_AS(dim_bound_square(unit_flow(), 0), std::invalid_argument);
}

TEST_CASE("square torus bound switches branch continuously") {
  // branches meet where G/mu^2 = 4 sqrt2 L
  FlowParams p = unit_flow();
  p.mu = 0.7;
  p.L = 1.3;
  const double g_switch = 4 * std::sqrt(2.0) * p.L * p.mu * p.mu;
  // the min is Lipschitz with the slope of the first branch at the switch
  const double step = 2 * g_switch / 2000.0;
  const double lipschitz = 2 * 1.5 / std::sqrt(2.0) * p.L / (p.nu * p.mu);
  double prev = -1;
  for (int i = 0; i <= 2000; ++i) {
    p.grad_g_norm = step * i;
    const double v = dim_bound_square(p);
    CHECK(v >= prev);
    if (prev >= 0) CHECK(v - prev <= lipschitz * step * (1 + 1e-12));
    prev = v;
  }
  p.grad_g_norm = g_switch;
  const double first = 1.5 / 8 * g_switch * g_switch / (p.nu * std::pow(p.mu, 3));
  const double second = 1.5 / std::sqrt(2.0) * g_switch * p.L / (p.nu * p.mu);
  CHECK(first == doctest::Approx(second).epsilon(1e-13));
}

TEST_CASE("square torus bound homogeneity") {
  FlowParams p = unit_flow();
  p.grad_g_norm = 0.1;
  const double a = dim_bound_square(p);
  p.grad_g_norm = 0.2;
  CHECK(dim_bound_square(p) == doctest::Approx(4 * a).epsilon(1e-13));
  p.grad_g_norm = 1000;
  const double b = dim_bound_square(p);
  p.grad_g_norm = 2000;
  CHECK(dim_bound_square(p) == doctest::Approx(2 * b).epsilon(1e-13));
}

TEST_CASE("elongated torus bound") {
  CHECK(dim_bound_elongated(unit_flow()) == doctest::Approx(kPi / 12 + std::sqrt(kPi)).epsilon(1e-14));
  CHECK(std::abs(default_c_p() / 2 + std::sqrt(default_c_p() * kDefaultCQ) - (kPi / 12 + std::sqrt(kPi))) <= 1e-15);
  FlowParams p = unit_flow();
  p.nu = 9;
  CHECK_THROWS_AS(dim_bound_elongated(p), ValidityError);
  p.nu = 8;
  CHECK_NOTHROW(dim_bound_elongated(p));
  CHECK_THROWS_AS(dim_bound_elongated(unit_flow(), -1, 6), std::invalid_argument);
}

TEST_CASE("elongated bound does not depend on alpha or L") {
  FlowParams p = unit_flow();
  p.nu = 0.01;
  p.grad_g_norm = 3;
  const double ref = dim_bound_elongated(p);
  for (double alpha : {1.0, 0.3, 0.01}) {
    for (double L : {1.0, 2.0, 10.0}) {
      p.alpha = alpha;
      p.L = L;
      CHECK(dim_bound_elongated(p) == ref);
    }
  }
}

TEST_CASE("bounds decrease in viscosity and damping") {
  FlowParams p = unit_flow();
  p.grad_g_norm = 5;
  double prev_sq = 1e300, prev_el = 1e300;
  for (int i = 1; i <= 50; ++i) {
    p.nu = 0.01 * i;
    const double sq = dim_bound_square(p);
    const double el = dim_bound_elongated(p);
    CHECK(sq < prev_sq);
    CHECK(el < prev_el);
    prev_sq = sq;
    prev_el = el;
  }
  p.nu = 0.1;
  prev_sq = prev_el = 1e300;
  for (int i = 1; i <= 50; ++i) {
    p.mu = 0.1 * i;
    const double sq = dim_bound_square(p);
    const double el = dim_bound_elongated(p);
    CHECK(sq < prev_sq);
    CHECK(el < prev_el);
    prev_sq = sq;
    prev_el = el;
  }
}

TEST_CASE("Kolmogorov number") {
  CHECK(kolmogorov_number(unit_flow()) == 1);
  FlowParams p = unit_flow();
  p.grad_g_norm = 2;
  CHECK(kolmogorov_number(p) == 4);
  // ||grad g||^2 = mu^4 / alpha gives mu / (alpha nu)
  p = FlowParams{0.3, 1.7, 1, 0.2, 0};
  p.grad_g_norm = std::sqrt(std::pow(p.mu, 4) / p.alpha);
  CHECK(kolmogorov_number(p) == doctest::Approx(p.mu / (p.alpha * p.nu)).epsilon(1e-13));
}

TEST_CASE("flow parameter validation") {
  for (auto mutate : {+[](FlowParams& p) { p.nu = 0; }, +[](FlowParams& p) { p.mu = -1; },
                      +[](FlowParams& p) { p.L = 0; }, +[](FlowParams& p) { p.alpha = 1.5; },
                      +[](FlowParams& p) { p.alpha = 0; }, +[](FlowParams& p) { p.grad_g_norm = -1; }}) {
    FlowParams p = unit_flow();
    mutate(p);
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    CHECK_THROWS_AS(kolmogorov_number(p), std::invalid_argument);
  }
}
