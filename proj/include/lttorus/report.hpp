#pragma once

#include <cstdint>
#include <optional>

namespace lttorus {

// Outcome of checking one inequality lhs <= rhs.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs; 0 when both vanish
  bool pass = true;    // ratio <= 1 + 1e-12
  double constant_used = 0.0;

  std::optional<double> gamma;
  int truncation = 0;        // Fourier modes per direction (0 when not applicable)
  int quadrature_nodes = 0;  // total nodes of the rhs / density quadrature
  bool quadrature_converged = true;
  std::optional<std::uint64_t> seed;
  // Galerkin truncation only raises eigenvalues, so a computed Riesz mean can
  // only under-report the exact one.
  bool lhs_is_lower_bound = false;
};

inline constexpr double kPassSlack = 1e-12;

// Fills ratio and pass from lhs and rhs.
BoundReport make_bound_report(double lhs, double rhs, double constant_used);

// Multiplies rhs (and the reported constant) by factor and recomputes ratio
// and pass. Used by the fault-injection switch of the command-line tool.
BoundReport scale_rhs(BoundReport report, double factor);

}  // namespace lttorus
