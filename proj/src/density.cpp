#include "denjoy/density.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "denjoy/errors.hpp"

namespace denjoy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxDepth = 48;

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665,
                                            0.5688888888888889, 0.4786286704993665,
                                            0.2369268850561891};
// Richardson denominator for a rule of order 10.
constexpr double kRichardson = 1023.0;

template <typename F>
double gauss5(const F& f, double t0, double t1) {
  const double half = 0.5 * (t1 - t0);
  const double mid = 0.5 * (t1 + t0);
  double sum = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) sum += kWeights[i] * f(mid + half * kNodes[i]);
  return half * sum;
}

template <typename F>
double adapt(const F& f, double t0, double t1, double whole, double tol, int depth) {
  const double m = 0.5 * (t0 + t1);
  const double left = gauss5(f, t0, m);
  const double right = gauss5(f, m, t1);
  const double both = left + right;
  const double err = both - whole;
  if (depth >= kMaxDepth || std::abs(err) <= tol * std::abs(both) || m <= t0 || m >= t1) {
    return both + err / kRichardson;
  }
  return adapt(f, t0, m, left, tol, depth + 1) + adapt(f, m, t1, right, tol, depth + 1);
}

void check_tol(double tol) {
  if (!(tol > 1e-12 && tol < 1e-2)) {
    throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must lie in (1e-12, 1e-2)");
  }
}

}  // namespace

std::string metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::Quasihyperbolic: return "qh";
    case MetricKind::HyperbolicLowerBP: return "hyp-lower";
    case MetricKind::HyperbolicUpper: return "hyp-upper";
  }
  return "qh";
}

MetricKind parse_metric(const std::string& name) {
  if (name == "qh") return MetricKind::Quasihyperbolic;
  if (name == "hyp-lower") return MetricKind::HyperbolicLowerBP;
  if (name == "hyp-upper") return MetricKind::HyperbolicUpper;
  throw Error(ErrorKind::InvalidArgument, "unknown metric \"" + name + "\" (qh, hyp-lower, hyp-upper)");
}

bool needs_hyperbolic_type(MetricKind kind) { return kind != MetricKind::Quasihyperbolic; }

double density(const GapDomain& domain, PlanePoint z, MetricKind kind) {
  const double d = domain.boundary_distance(z);
  if (d == 0.0) return kInf;
  switch (kind) {
    case MetricKind::Quasihyperbolic: return 1.0 / d;
    case MetricKind::HyperbolicUpper: return 2.0 / d;
    case MetricKind::HyperbolicLowerBP: return kBpLowerFactor / (d * (kBpK0 + beta(domain, z)));
  }
  return kInf;
}

double stated_bp_upper_density(const GapDomain& domain, PlanePoint z) {
  const auto d = delta(domain, z).delta;
  return kBpStatedUpperFactor / (d * (kBpK0 + beta(domain, z)));
}

PolylinePath::PolylinePath(std::initializer_list<PlanePoint> vertices)
    : PolylinePath(std::vector<PlanePoint>(vertices)) {}

PolylinePath::PolylinePath(std::vector<PlanePoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorKind::InvalidArgument, "a path needs at least one vertex");
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[i + 1]) {
      throw Error(ErrorKind::InvalidArgument, "consecutive path vertices must be distinct");
    }
  }
}

double PolylinePath::euclidean_length() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) s += std::abs(vertices_[i + 1] - vertices_[i]);
  return s;
}

PolylinePath PolylinePath::reversed() const {
  return PolylinePath(std::vector<PlanePoint>(vertices_.rbegin(), vertices_.rend()));
}

PolylinePath PolylinePath::joined(const PolylinePath& other) const {
  if (back() != other.front()) throw Error(ErrorKind::InvalidArgument, "paths do not share a vertex");
  auto v = vertices_;
  v.insert(v.end(), other.vertices_.begin() + 1, other.vertices_.end());
  return PolylinePath(std::move(v));
}

bool segment_in_domain(const GapDomain& domain, PlanePoint a, PlanePoint b) {
  if (domain.on_boundary(a) || domain.on_boundary(b)) return false;
  const double ya = a.imag();
  const double yb = b.imag();
  if ((ya > 0.0 && yb > 0.0) || (ya < 0.0 && yb < 0.0)) return true;
  if (ya == 0.0 && yb == 0.0) return domain.gap_containing(a.real()) == domain.gap_containing(b.real());
  if (ya == 0.0 || yb == 0.0) return true;
  const double x = a.real() + (b.real() - a.real()) * ya / (ya - yb);
  return domain.gap_containing(x).has_value();
}

double segment_length(const GapDomain& domain, PlanePoint a, PlanePoint b, MetricKind kind,
                      double tol) {
  check_tol(tol);
  if (a == b) return 0.0;
  if (!segment_in_domain(domain, a, b)) {
    throw Error(ErrorKind::PathTouchesBoundary, "segment meets the boundary");
  }
  const PlanePoint dir = b - a;
  const double len = std::abs(dir);
  auto f = [&](double t) {
    const double v = density(domain, a + t * dir, kind);
    if (!std::isfinite(v)) throw Error(ErrorKind::PathTouchesBoundary, "quadrature node on the boundary");
    return len * v;
  };

  std::vector<double> cuts{0.0};
  if (a.real() != b.real()) {
    const double x0 = std::min(a.real(), b.real());
    const double x1 = std::max(a.real(), b.real());
    const auto& bp = domain.breakpoints();
    auto it = std::upper_bound(bp.begin(), bp.end(), x0);
    for (; it != bp.end() && *it < x1; ++it) cuts.push_back((*it - a.real()) / dir.real());
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(1.0);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double t0 = cuts[i];
    const double t1 = cuts[i + 1];
    if (!(t1 > t0)) continue;
    total += adapt(f, t0, t1, gauss5(f, t0, t1), tol, 0);
  }
  return total;
}

double path_length(const GapDomain& domain, const PolylinePath& path, MetricKind kind, double tol) {
  check_tol(tol);
  if (needs_hyperbolic_type(kind)) domain.require_hyperbolic_type();
  const auto& v = path.vertices();
  if (v.size() == 1 && domain.boundary_distance(v.front()) == 0.0) {
    throw Error(ErrorKind::PathTouchesBoundary, "path vertex on the boundary");
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) total += segment_length(domain, v[i], v[i + 1], kind, tol);
  return total;
}

LengthBand hyperbolic_band(const GapDomain& domain, const PolylinePath& path, double tol) {
  domain.require_hyperbolic_type();
  LengthBand band;
  band.lower = path_length(domain, path, MetricKind::HyperbolicLowerBP, tol);
  band.upper = 2.0 * path_length(domain, path, MetricKind::Quasihyperbolic, tol);
  return band;
}

double qh_length_lower_bound(double s, double delta_a) {
  if (!(s >= 0.0) || !(delta_a > 0.0)) throw Error(ErrorKind::InvalidArgument, "need s >= 0 and delta > 0");
  return std::log1p(s / delta_a);
}

double hyperbolic_length_lower_bound(double s, double r) {
  if (!(s >= 0.0) || !(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "need s >= 0 and r > 0");
  return kBpLowerFactor * std::log1p(std::log1p(s / r) / kBpK0);
}

std::vector<DensitySample> sample_densities(const GapDomain& domain, const SampleWindow& window,
                                            std::size_t nx, std::size_t ny) {
  if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidArgument, "sample grid must be at least 1 x 1");
  if (!(window.x0 <= window.x1) || !(window.y0 <= window.y1)) {
    throw Error(ErrorKind::InvalidArgument, "sample window is empty");
  }
  const bool hyperbolic = domain.is_hyperbolic_type();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto coord = [](double lo, double hi, std::size_t i, std::size_t n) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  std::vector<DensitySample> out;
  out.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      DensitySample s;
      s.re = coord(window.x0, window.x1, i, nx);
      s.im = coord(window.y0, window.y1, j, ny);
      const PlanePoint z{s.re, s.im};
      s.delta = domain.boundary_distance(z);
      if (s.delta == 0.0) {
        s.beta = s.qh = s.bp_lower = s.upper = nan;
      } else {
        s.qh = 1.0 / s.delta;
        s.upper = 2.0 / s.delta;
        if (hyperbolic) {
          s.beta = beta(domain, z);
          s.bp_lower = kBpLowerFactor / (s.delta * (kBpK0 + s.beta));
        } else {
          s.beta = s.bp_lower = nan;
        }
      }
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace denjoy
