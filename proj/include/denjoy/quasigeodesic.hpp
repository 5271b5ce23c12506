#pragma once

#include <cstddef>

#include "denjoy/density.hpp"
#include "denjoy/domain.hpp"
#include "denjoy/solver.hpp"

namespace denjoy {

struct QuasigeodesicReport {
  bool pass = false;
  /// Largest (violation - slack * |t - s|) over the sampled pairs; <= 0
  /// means every pair passed.
  double worst_excess = 0.0;
  double s = 0.0;
  double t = 0.0;
  PlanePoint p{};
  PlanePoint q{};
  /// Distance used for the worst pair.
  double d = 0.0;
  double total_length = 0.0;
  std::size_t pairs = 0;
};

/// Points of the path at metric arc lengths 0, L/(n-1), ..., L.
std::vector<PlanePoint> sample_by_metric_length(const GapDomain& domain, const PolylinePath& path,
                                                MetricKind metric, std::size_t n, double tol,
                                                std::vector<double>* params = nullptr);

/// Checks |t - s| / a - b <= d(g(s), g(t)) <= a |t - s| + b for sampled
/// metric arc-length parameters. d is the solver distance, capped by the
/// arc length between the two points. A pair passes when its violation is
/// at most slack * |t - s|.
QuasigeodesicReport check_quasigeodesic(const GapDomain& domain, const PolylinePath& path, double a,
                                        double b, MetricKind metric, const SolverConfig& config,
                                        std::size_t samples = 6, double slack = 0.02);

}  // namespace denjoy
