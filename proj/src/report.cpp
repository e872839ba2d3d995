#include "lttorus/report.hpp"

#include <limits>

namespace lttorus {

BoundReport make_bound_report(double lhs, double rhs, double constant_used) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant_used = constant_used;
  if (rhs > 0.0)
    r.ratio = lhs / rhs;
  else
    r.ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  r.pass = r.ratio <= 1.0 + kPassSlack;
  return r;
}

BoundReport scale_rhs(BoundReport report, double factor) {
  const BoundReport fresh =
      make_bound_report(report.lhs, report.rhs * factor, report.constant_used * factor);
  report.rhs = fresh.rhs;
  report.constant_used = fresh.constant_used;
  report.ratio = fresh.ratio;
  report.pass = fresh.pass;
  return report;
}

}  // namespace lttorus
