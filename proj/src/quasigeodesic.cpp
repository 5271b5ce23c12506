#include "denjoy/quasigeodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "denjoy/errors.hpp"

namespace denjoy {

std::vector<PlanePoint> sample_by_metric_length(const GapDomain& domain, const PolylinePath& path,
                                                MetricKind metric, std::size_t n, double tol,
                                                std::vector<double>* params) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
  const auto& v = path.vertices();
  std::vector<double> cum{0.0};
  for (std::size_t i = 0; i + 1 < v.size(); ++i) cum.push_back(cum.back() + segment_length(domain, v[i], v[i + 1], metric, tol));
  const double total = cum.back();
  std::vector<PlanePoint> out;
  std::vector<double> ps;
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = k + 1 == n ? total : total * static_cast<double>(k) / static_cast<double>(n - 1);
    ps.push_back(s);
    if (k + 1 == n || v.size() == 1) {
      out.push_back(k + 1 == n ? v.back() : v.front());
      continue;
    }
    while (seg + 2 < cum.size() && cum[seg + 1] < s) ++seg;
    const double want = s - cum[seg];
    const PlanePoint a = v[seg];
    const PlanePoint dir = v[seg + 1] - a;
    // Bisection on the fraction of the segment.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60 && want > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (segment_length(domain, a, a + mid * dir, metric, tol) < want) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back(want > 0.0 ? a + 0.5 * (lo + hi) * dir : a);
  }
  if (params != nullptr) *params = std::move(ps);
  return out;
}

QuasigeodesicReport check_quasigeodesic(const GapDomain& domain, const PolylinePath& path, double a,
                                        double b, MetricKind metric, const SolverConfig& config,
                                        std::size_t samples, double slack) {
  if (!(a >= 1.0) || !(b >= 0.0)) throw Error(ErrorKind::InvalidArgument, "need a >= 1 and b >= 0");
  if (!(slack >= 0.0)) throw Error(ErrorKind::InvalidArgument, "slack must be non-negative");
  config.check();
  std::vector<double> params;
  const auto pts = sample_by_metric_length(domain, path, metric, samples, config.tol, &params);
  SolverConfig cfg = config;
  cfg.check_convergence = false;
  if (std::any_of(pts.begin(), pts.end(), [](const PlanePoint& p) { return p.imag() < 0.0; })) {
    cfg.half_plane_only = false;
  }
  QuasigeodesicReport r;
  r.total_length = params.back();
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double gap = params[j] - params[i];
      double d = gap;
      if (pts[i] != pts[j]) d = std::min(gap, distance(domain, pts[i], pts[j], metric, cfg).length);
      const double low = gap / a - b - d;
      const double high = d - (a * gap + b);
      const double excess = std::max(low, high) - slack * gap;
      ++r.pairs;
      if (excess > r.worst_excess) {
        r.worst_excess = excess;
        r.s = params[i];
        r.t = params[j];
        r.p = pts[i];
        r.q = pts[j];
        r.d = d;
      }
    }
  }
  r.pass = r.worst_excess <= 0.0;
  return r;
}

}  // namespace denjoy
