#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "denjoy/density.hpp"
#include "denjoy/domain.hpp"

namespace denjoy::detail {

/// How a path end may move during refinement.
struct EndRule {
  bool fixed = true;
  double lo = 0.0;  // open gap bounds when the end slides along a gap
  double hi = 0.0;
};

/// Redistributes the path to `count` vertices spaced evenly in metric
/// length, then minimizes the summed segment lengths (fixed Gauss rule per
/// smooth piece) by damped Newton steps over the whole vertex chain.
/// Returns nothing when a step cannot be taken safely.
std::optional<std::vector<PlanePoint>> polish_path(const GapDomain& domain, MetricKind kind, bool half_plane,
                                                   const std::vector<PlanePoint>& pts, EndRule first,
                                                   EndRule last, std::size_t count);

/// Metric spacing aimed for by polish_path, per metric kind.
double polish_spacing(MetricKind kind);

}  // namespace denjoy::detail
