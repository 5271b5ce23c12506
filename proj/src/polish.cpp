#include "polish.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "denjoy/errors.hpp"

namespace denjoy::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 8-point Gauss-Legendre on [-1, 1], half of the symmetric pairs.
constexpr std::array<double, 4> kNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                          0.9602898564975363};
constexpr std::array<double, 4> kWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                            0.1012285362903763};

class Chain {
 public:
  Chain(const GapDomain& domain, MetricKind kind, bool half, EndRule first, EndRule last)
      : domain_(domain), kind_(kind), half_(half), first_(first), last_(last) {}

  /// Length of [a, b] by the fixed rule, split where the density has kinks.
  double segment(PlanePoint a, PlanePoint b) const {
    if (a == b) return 0.0;
    if (!segment_in_domain(domain_, a, b)) return kInf;
    const PlanePoint dir = b - a;
    const double len = std::abs(dir);
    cuts_.assign(1, 0.0);
    if (a.real() != b.real()) {
      const double x0 = std::min(a.real(), b.real());
      const double x1 = std::max(a.real(), b.real());
      const auto& bp = domain_.breakpoints();
      for (auto it = std::upper_bound(bp.begin(), bp.end(), x0); it != bp.end() && *it < x1; ++it) {
        cuts_.push_back((*it - a.real()) / dir.real());
      }
      std::sort(cuts_.begin(), cuts_.end());
    }
    cuts_.push_back(1.0);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
      const double half = 0.5 * (cuts_[i + 1] - cuts_[i]);
      if (!(half > 0.0)) continue;
      const double mid = 0.5 * (cuts_[i + 1] + cuts_[i]);
      double sum = 0.0;
      for (std::size_t k = 0; k < kNodes.size(); ++k) {
        sum += kWeights[k] * (density(domain_, a + (mid - half * kNodes[k]) * dir, kind_) +
                              density(domain_, a + (mid + half * kNodes[k]) * dir, kind_));
      }
      total += half * sum;
    }
    const double v = len * total;
    return std::isfinite(v) ? v : kInf;
  }

  double total(const std::vector<PlanePoint>& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) s += segment(v[i], v[i + 1]);
    return s;
  }

  bool free_dof(std::size_t i, int c, std::size_t n) const {
    if (i == 0 || i + 1 == n) {
      const EndRule& r = i == 0 ? first_ : last_;
      return !r.fixed && c == 0;
    }
    return true;
  }

  bool admissible(const std::vector<PlanePoint>& v) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (half_ && v[i].imag() < 0.0) return false;
      if (domain_.boundary_distance(v[i]) == 0.0) return false;
      if (i + 1 < v.size() && v[i] == v[i + 1]) return false;
    }
    for (const auto* r : {&first_, &last_}) {
      if (r->fixed) continue;
      const PlanePoint p = r == &first_ ? v.front() : v.back();
      if (!(p.real() > r->lo && p.real() < r->hi)) return false;
    }
    return true;
  }

  /// Gradient and tridiagonal Hessian of the length along the move
  /// directions dir (zero for pinned vertices), by central differences of
  /// each segment term. Fails on a non-finite evaluation.
  bool derivatives(const std::vector<PlanePoint>& v, const std::vector<PlanePoint>& dir, std::vector<double>& g,
                   std::vector<double>& diag, std::vector<double>& off) const {
    const std::size_t n = v.size();
    g.assign(n, 0.0);
    diag.assign(n, 0.0);
    off.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = 1e-4 * std::min(domain_.boundary_distance(v[i]), domain_.boundary_distance(v[i + 1]));
      const PlanePoint da = h * dir[i];
      const PlanePoint db = h * dir[i + 1];
      auto f = [&](int p, int q) { return segment(v[i] + double(p) * da, v[i + 1] + double(q) * db); };
      const double f00 = f(0, 0);
      const double fa = f(1, 0) - f(-1, 0);
      const double fb = f(0, 1) - f(0, -1);
      const double haa = f(1, 0) - 2 * f00 + f(-1, 0);
      const double hbb = f(0, 1) - 2 * f00 + f(0, -1);
      const double hab = (f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / 4;
      for (const double e : {fa, fb, haa, hbb, hab}) {
        if (!std::isfinite(e)) return false;
      }
      g[i] += fa / (2 * h);
      g[i + 1] += fb / (2 * h);
      diag[i] += haa / (h * h);
      diag[i + 1] += hbb / (h * h);
      off[i] += hab / (h * h);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dir[i] != PlanePoint{}) continue;
      g[i] = 0.0;
      diag[i] = 1.0;
      off[i] = 0.0;
      if (i > 0) off[i - 1] = 0.0;
    }
    return true;
  }

  /// Unit move direction per vertex: the normal of the chord through the
  /// neighbours inside, along the axis at sliding ends, none at fixed ends.
  std::vector<PlanePoint> directions(const std::vector<PlanePoint>& v) const {
    const std::size_t n = v.size();
    std::vector<PlanePoint> dir(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const PlanePoint t = v[i + 1] - v[i - 1];
      dir[i] = PlanePoint(0.0, 1.0) * t / std::abs(t);
    }
    if (!first_.fixed) dir[0] = 1.0;
    if (!last_.fixed) dir[n - 1] = 1.0;
    return dir;
  }

 private:
  const GapDomain& domain_;
  MetricKind kind_;
  bool half_;
  EndRule first_;
  EndRule last_;
  mutable std::vector<double> cuts_;
};

/// Solves (T + mu D) x = -g for the symmetric tridiagonal T (diag, off)
/// with D the absolute diagonal. Fails on a non-positive pivot.
std::optional<std::vector<double>> solve_step(const std::vector<double>& g, const std::vector<double>& diag,
                                              const std::vector<double>& off, double mu) {
  const std::size_t n = g.size();
  std::vector<double> piv(n);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = diag[i] + mu * std::abs(diag[i]);
    double r = -g[i];
    if (i > 0) {
      const double m = off[i - 1] / piv[i - 1];
      d -= m * off[i - 1];
      r -= m * rhs[i - 1];
    }
    if (!(d > 0.0)) return std::nullopt;
    piv[i] = d;
    rhs[i] = r;
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    const double r = k + 1 < n ? rhs[k] - off[k] * x[k + 1] : rhs[k];
    x[k] = r / piv[k];
  }
  return x;
}

/// Point at length `target` along [a, b] under the chain's fixed rule.
PlanePoint locate(const Chain& chain, PlanePoint a, PlanePoint b, double target) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 48; ++it) {
    const double m = 0.5 * (lo + hi);
    if (chain.segment(a, a + m * (b - a)) < target) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return a + 0.5 * (lo + hi) * (b - a);
}

std::vector<PlanePoint> resample(const Chain& chain, const std::vector<PlanePoint>& pts, std::size_t count) {
  std::vector<double> seg(pts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    seg[i] = chain.segment(pts[i], pts[i + 1]);
    total += seg[i];
  }
  std::vector<PlanePoint> out{pts.front()};
  std::size_t j = 0;
  double before = 0.0;  // length up to pts[j]
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(count - 1);
    while (j + 1 < seg.size() && before + seg[j] < s) before += seg[j++];
    const PlanePoint p = locate(chain, pts[j], pts[j + 1], s - before);
    if (p != out.back()) out.push_back(p);
  }
  if (pts.back() != out.back()) out.push_back(pts.back());
  return out;
}

/// Damped Newton on the normal offsets of the vertices. Returns the final
/// length.
double newton(const Chain& chain, std::vector<PlanePoint>& v, double f, bool half_plane) {
  std::vector<double> g;
  std::vector<double> diag;
  std::vector<double> off;
  double mu = 1e-4;
  for (int it = 0; it < 40; ++it) {
    const auto dir = chain.directions(v);
    if (!chain.derivatives(v, dir, g, diag, off)) break;
    bool accepted = false;
    double gain = 0.0;
    while (mu < 1e8) {
      const auto step = solve_step(g, diag, off, mu);
      if (!step) {
        mu *= 4.0;
        continue;
      }
      auto cand = v;
      bool ok = true;
      for (std::size_t i = 0; i < v.size(); ++i) {
        cand[i] = v[i] + (*step)[i] * dir[i];
        if (half_plane && cand[i].imag() < 0.0) ok = false;
      }
      const double fc = ok && chain.admissible(cand) ? chain.total(cand) : kInf;
      if (fc < f) {
        gain = f - fc;
        v = std::move(cand);
        f = fc;
        mu = std::max(mu / 4.0, 1e-10);
        accepted = true;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted || gain <= 1e-15 * f) break;
  }
  return f;
}

}  // namespace

double polish_spacing(MetricKind kind) {
  switch (kind) {
    case MetricKind::Quasihyperbolic: return 0.03;
    case MetricKind::HyperbolicUpper: return 0.06;
    case MetricKind::HyperbolicLowerBP: return 0.03 * kBpLowerFactor / kBpK0;
  }
  return 0.03;
}

std::optional<std::vector<PlanePoint>> polish_path(const GapDomain& domain, MetricKind kind, bool half_plane,
                                                   const std::vector<PlanePoint>& pts, EndRule first,
                                                   EndRule last, std::size_t count) {
  if (pts.size() < 2 || count < 3) return std::nullopt;
  const Chain chain(domain, kind, half_plane, first, last);
  std::vector<PlanePoint> v = pts;
  // Moving only across the path leaves the spacing alone, so the chain is
  // re-spaced between rounds; the rounds contract toward one polyline.
  for (int round = 0; round < 4; ++round) {
    v = resample(chain, v, count);
    if (v.size() < 3 || !chain.admissible(v)) return std::nullopt;
    const double f = chain.total(v);
    if (!std::isfinite(f)) return std::nullopt;
    newton(chain, v, f, half_plane);
  }
  return v;
}

}  // namespace denjoy::detail
