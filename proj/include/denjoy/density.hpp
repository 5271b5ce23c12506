#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>
#include <vector>

#include "denjoy/domain.hpp"

namespace denjoy {

/// Beardon-Pommerenke constant k0 = 4 + log(3 + 2 sqrt 2).
inline const double kBpK0 = 4.0 + std::log(3.0 + 2.0 * std::numbers::sqrt2);
/// 2^(-3/2), the lower constant of the density comparison.
inline const double kBpLowerFactor = 1.0 / (2.0 * std::numbers::sqrt2);
/// Upper constant as printed in the density comparison. Only reported as a
/// diagnostic: on the slit plane the product lambda * delta * (k0 + beta)
/// equals k0 / sqrt 2, well above pi / 4.
inline constexpr double kBpStatedUpperFactor = std::numbers::pi / 4.0;

enum class MetricKind {
  Quasihyperbolic,    // 1 / delta
  HyperbolicLowerBP,  // 2^(-3/2) / (delta (k0 + beta)), below the Poincare density
  HyperbolicUpper,    // 2 / delta, above the Poincare density
};

std::string metric_name(MetricKind kind);  // "qh", "hyp-lower", "hyp-upper"
MetricKind parse_metric(const std::string& name);
bool needs_hyperbolic_type(MetricKind kind);

/// Density of the given metric at z; +inf on the boundary.
double density(const GapDomain& domain, PlanePoint z, MetricKind kind);

/// As-printed upper comparison density (pi/4) / (delta (k0 + beta)).
/// Diagnostic only; it is not a valid upper bound in general.
double stated_bp_upper_density(const GapDomain& domain, PlanePoint z);

/// Finite vertex chain; consecutive vertices are distinct. A single vertex is
/// the degenerate path of a zero-length query.
class PolylinePath {
 public:
  PolylinePath() = default;
  PolylinePath(std::initializer_list<PlanePoint> vertices);
  explicit PolylinePath(std::vector<PlanePoint> vertices);

  const std::vector<PlanePoint>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const PlanePoint& front() const { return vertices_.front(); }
  const PlanePoint& back() const { return vertices_.back(); }

  double euclidean_length() const;
  PolylinePath reversed() const;
  /// Concatenation at a shared vertex (back() of this == front() of other).
  PolylinePath joined(const PolylinePath& other) const;

 private:
  std::vector<PlanePoint> vertices_;
};

struct LengthBand {
  double lower = 0.0;
  double upper = 0.0;
};

/// True when the closed segment [a, b] lies in the open domain.
bool segment_in_domain(const GapDomain& domain, PlanePoint a, PlanePoint b);

inline constexpr double kDefaultTol = 1e-8;

/// Metric length of the straight segment [a, b]. The segment is split where
/// its real part crosses a gap endpoint or gap midpoint (the kinks of the
/// density) and each piece is integrated by adaptive Gauss-Legendre
/// bisection until the local Richardson estimate is below tol (relative).
double segment_length(const GapDomain& domain, PlanePoint a, PlanePoint b, MetricKind kind,
                      double tol = kDefaultTol);

double path_length(const GapDomain& domain, const PolylinePath& path, MetricKind kind,
                   double tol = kDefaultTol);

/// [BP-lower length, 2 x quasihyperbolic length] of the same path; brackets
/// the Poincare length.
LengthBand hyperbolic_band(const GapDomain& domain, const PolylinePath& path,
                           double tol = kDefaultTol);

/// log(1 + s / delta_a): lower bound for the quasihyperbolic length of a
/// curve of Euclidean length s starting at distance delta_a from the boundary.
double qh_length_lower_bound(double s, double delta_a);

/// 2^(-3/2) log(1 + log(1 + s / r) / k0): lower bound for the hyperbolic
/// length of a curve of Euclidean length s starting in a gap of width <= r.
double hyperbolic_length_lower_bound(double s, double r);

struct DensitySample {
  double re = 0.0;
  double im = 0.0;
  double delta = 0.0;
  double beta = 0.0;
  double qh = 0.0;
  double bp_lower = 0.0;
  double upper = 0.0;
};

struct SampleWindow {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
};

/// Row-major nx x ny samples (x fastest) including the window corners.
/// Boundary points get delta = 0 and NaN for the other columns; beta and the
/// BP density are NaN when the domain is not of hyperbolic type.
std::vector<DensitySample> sample_densities(const GapDomain& domain, const SampleWindow& window,
                                            std::size_t nx, std::size_t ny);

}  // namespace denjoy
