#include "denjoy/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "denjoy/errors.hpp"

namespace denjoy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const Gap& g) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << g.lo.as_double() << ", " << g.hi.as_double() << ')';
  return os.str();
}

std::vector<std::pair<double, double>> normalized_base(std::vector<std::pair<double, double>> base,
                                                       double period) {
  if (base.empty()) throw Error(ErrorKind::InvalidSpec, "periodic generator needs a non-empty base set");
  std::sort(base.begin(), base.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [p, q] : base) {
    if (!(p <= q) || p < 0.0 || !(q < period)) {
      throw Error(ErrorKind::InvalidSpec, "periodic base interval must be a closed subset of [0, t)");
    }
    if (!merged.empty() && p <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, q);
    } else {
      merged.emplace_back(p, q);
    }
  }
  return merged;
}

void check_tail(const GeneratorSpec& tail) {
  if (const auto* g = std::get_if<GeometricTail>(&tail)) {
    if (!(g->a1 > 0.0) || !(g->q > 1.0) || !(g->f > 0.0) || !(g->f <= 1.0)) {
      throw Error(ErrorKind::InvalidSpec, "geometric generator needs a1 > 0, q > 1, f in (0, 1]");
    }
  } else if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
    if (!(p->period > 0.0)) throw Error(ErrorKind::InvalidSpec, "periodic generator needs t > 0");
  } else if (const auto* gf = std::get_if<GFunctionTail>(&tail)) {
    if (!(gf->start > 0.0) || !(gf->step > 0.0)) {
      throw Error(ErrorKind::InvalidSpec, "G-function generator needs start > 0 and step > 0");
    }
    if (gf->table.empty()) throw Error(ErrorKind::InvalidSpec, "G-function table is empty");
    for (std::size_t i = 0; i < gf->table.size(); ++i) {
      const auto [x, v] = gf->table[i];
      if (!(x > 0.0) || !(v >= 0.0)) {
        throw Error(ErrorKind::InvalidSpec, "G-function table needs x > 0 and G >= 0");
      }
      if (i > 0 && (!(x > gf->table[i - 1].first) || v > gf->table[i - 1].second)) {
        throw Error(ErrorKind::InvalidSpec, "G-function table must be increasing in x and non-increasing in G");
      }
    }
    if (!(gf->decay >= 0.0)) throw Error(ErrorKind::InvalidSpec, "G-function decay must be >= 0");
  }
}

std::vector<Gap> generate(const GeneratorSpec& tail, std::size_t count) {
  std::vector<Gap> out;
  out.reserve(count);
  if (const auto* g = std::get_if<GeometricTail>(&tail)) {
    const double k = g->ratio();
    for (std::size_t n = 1; n <= count; ++n) {
      const double a = g->a1 * std::pow(g->q, static_cast<double>(n - 1));
      out.push_back({a, a * k});
    }
  } else if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
    const auto& base = p->base;
    const double t = p->period;
    // Gaps owned by period n: the inner gaps of base + t n followed by the
    // gap up to the next translate.
    auto emit_period = [&](long long n, bool with_trailing) {
      const double shift = t * static_cast<double>(n);
      for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        out.push_back({base[i].second + shift, base[i + 1].first + shift});
      }
      // The right end uses the next shift exactly as that period will, so
      // neighbouring gaps never overlap by rounding.
      const double next = t * static_cast<double>(n + 1);
      if (with_trailing) out.push_back({base.back().second + shift, base.front().first + next});
    };
    if (p->index == IndexSet::Natural) {
      for (long long n = 1; out.size() < count; ++n) emit_period(n, true);
    } else {
      const auto per = static_cast<long long>(base.size());
      const long long m = std::max<long long>(1, (static_cast<long long>(count) + 2 * per - 1) / (2 * per));
      for (long long n = -m; n < m; ++n) emit_period(n, true);
      emit_period(m, false);
    }
    out.resize(std::min(out.size(), count));
  } else if (const auto* gf = std::get_if<GFunctionTail>(&tail)) {
    for (std::size_t n = 1; n <= count; ++n) {
      const double a = gf->start + gf->step * static_cast<double>(n - 1);
      out.push_back({a, a + a * (*gf)(a)});
    }
  }
  return out;
}

}  // namespace

double Gap::width() const {
  if (!is_finite()) return kInf;
  return hi.value() - lo.value();
}

double GFunctionTail::operator()(double x) const {
  const auto& tab = table;
  if (x <= tab.front().first) return tab.front().second;
  if (x >= tab.back().first) {
    return tab.back().second * std::pow(tab.back().first / x, decay);
  }
  const auto it = std::upper_bound(tab.begin(), tab.end(), x,
                                   [](double v, const auto& e) { return v < e.first; });
  const auto& [x1, g1] = *it;
  const auto& [x0, g0] = *(it - 1);
  return g0 + (g1 - g0) * (x - x0) / (x1 - x0);
}

std::vector<Gap> validate(std::vector<Gap> gaps) {
  for (const auto& g : gaps) {
    if (!(g.lo < g.hi) || g.lo.is_pos_inf() || g.hi.is_neg_inf()) {
      throw Error(ErrorKind::InvalidGap, "gap " + describe(g) + " is empty");
    }
  }
  if (gaps.empty()) {
    throw Error(ErrorKind::DisconnectedDomain, "no gaps: C minus the real line is not connected");
  }
  std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    if (gaps[i + 1].lo < gaps[i].hi) {
      throw Error(ErrorKind::OverlappingGaps,
                  "gaps " + describe(gaps[i]) + " and " + describe(gaps[i + 1]) + " overlap");
    }
  }
  if (gaps.front().lo.is_neg_inf() && gaps.back().hi.is_pos_inf() && gaps.size() == 1) {
    throw Error(ErrorKind::EmptyBoundary, "the boundary set is empty");
  }
  return gaps;
}

GapDomain::GapDomain(std::vector<Gap> explicit_gaps, std::optional<GeneratorSpec> tail,
                     std::size_t truncation_count)
    : explicit_gaps_(std::move(explicit_gaps)), tail_(std::move(tail)), truncation_(truncation_count) {
  if (tail_) {
    if (auto* p = std::get_if<PeriodicTail>(&*tail_)) p->base = normalized_base(p->base, p->period);
    check_tail(*tail_);
    if (truncation_ == 0) throw Error(ErrorKind::InvalidSpec, "truncation count must be positive");
    if (const auto* p = std::get_if<PeriodicTail>(&*tail_);
        p != nullptr && p->index == IndexSet::Integer && !explicit_gaps_.empty()) {
      throw Error(ErrorKind::InvalidSpec, "a periodic generator over Z describes the whole domain");
    }
  }
  materialize();
}

void GapDomain::materialize() {
  std::vector<Gap> all = explicit_gaps_;
  generated_ = 0;
  if (tail_) {
    auto extra = generate(*tail_, truncation_);
    generated_ = extra.size();
    all.insert(all.end(), extra.begin(), extra.end());
  }
  gaps_ = validate(std::move(all));

  gap_lo_.clear();
  gap_hi_.clear();
  for (const auto& g : gaps_) {
    gap_lo_.push_back(g.lo.as_double());
    gap_hi_.push_back(g.hi.as_double());
  }

  boundary_.clear();
  if (!gaps_.front().lo.is_neg_inf()) boundary_.push_back({ExtendedReal::neg_inf(), gaps_.front().lo});
  for (std::size_t i = 0; i + 1 < gaps_.size(); ++i) boundary_.push_back({gaps_[i].hi, gaps_[i + 1].lo});
  if (!gaps_.back().hi.is_pos_inf()) boundary_.push_back({gaps_.back().hi, ExtendedReal::pos_inf()});
  comp_lo_.clear();
  comp_hi_.clear();
  for (const auto& c : boundary_) {
    comp_lo_.push_back(c.lo.as_double());
    comp_hi_.push_back(c.hi.as_double());
  }

  endpoints_.clear();
  breakpoints_.clear();
  for (const auto& g : gaps_) {
    if (g.lo.is_finite()) endpoints_.push_back(g.lo.value());
    if (g.hi.is_finite()) endpoints_.push_back(g.hi.value());
    if (g.is_finite()) breakpoints_.push_back(0.5 * (g.lo.value() + g.hi.value()));
  }
  std::sort(endpoints_.begin(), endpoints_.end());
  endpoints_.erase(std::unique(endpoints_.begin(), endpoints_.end()), endpoints_.end());
  breakpoints_.insert(breakpoints_.end(), endpoints_.begin(), endpoints_.end());
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

GapDomain GapDomain::geometric(double a1, double q, double f, std::size_t truncation_count) {
  return GapDomain({{ExtendedReal::neg_inf(), 0.0}}, GeometricTail{a1, q, f}, truncation_count);
}

GapDomain GapDomain::periodic(std::vector<std::pair<double, double>> base, double period,
                              IndexSet index, std::size_t truncation_count) {
  PeriodicTail tail{normalized_base(std::move(base), period), period, index};
  std::vector<Gap> explicit_gaps;
  if (index == IndexSet::Natural) {
    explicit_gaps.push_back({ExtendedReal::neg_inf(), tail.first_boundary_point()});
  }
  return GapDomain(std::move(explicit_gaps), std::move(tail), truncation_count);
}

GapDomain GapDomain::punctured(std::vector<double> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyBoundary, "no boundary points");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Gap> gaps;
  gaps.push_back({ExtendedReal::neg_inf(), points.front()});
  for (std::size_t i = 0; i + 1 < points.size(); ++i) gaps.push_back({points[i], points[i + 1]});
  gaps.push_back({points.back(), ExtendedReal::pos_inf()});
  return GapDomain(std::move(gaps));
}

GapDomain GapDomain::with_truncation(std::size_t truncation_count) const {
  return GapDomain(explicit_gaps_, tail_, truncation_count);
}

bool GapDomain::is_hyperbolic_type() const {
  if (boundary_.size() >= 2) return true;
  return boundary_.size() == 1 && boundary_.front().lo < boundary_.front().hi;
}

void GapDomain::require_hyperbolic_type() const {
  if (!is_hyperbolic_type()) {
    throw Error(ErrorKind::NonHyperbolicType, "the boundary has fewer than two points");
  }
}

std::optional<std::size_t> GapDomain::gap_containing(double x) const {
  const auto it = std::lower_bound(gap_lo_.begin(), gap_lo_.end(), x);
  if (it == gap_lo_.begin()) return std::nullopt;
  const auto k = static_cast<std::size_t>(it - gap_lo_.begin()) - 1;
  if (x < gap_hi_[k]) return k;
  return std::nullopt;
}

bool GapDomain::on_boundary(PlanePoint z) const {
  return z.imag() == 0.0 && !gap_containing(z.real()).has_value();
}

double GapDomain::boundary_distance(PlanePoint z) const {
  const double x = z.real();
  const double y = std::abs(z.imag());
  const auto it = std::lower_bound(gap_lo_.begin(), gap_lo_.end(), x);
  if (it != gap_lo_.begin()) {
    const auto k = static_cast<std::size_t>(it - gap_lo_.begin()) - 1;
    if (x < gap_hi_[k]) {
      const double dx = std::min(x - gap_lo_[k], gap_hi_[k] - x);
      return std::hypot(dx, y);
    }
  }
  return y;
}

BoundaryDistanceResult delta(const GapDomain& domain, PlanePoint z) {
  const double x = z.real();
  const double y = std::abs(z.imag());
  BoundaryDistanceResult out;
  const auto k = domain.gap_containing(x);
  if (!k) {
    if (y == 0.0) throw Error(ErrorKind::PointOnBoundary, "point lies on the boundary");
    out.delta = y;
    out.nearest = {x};
    return out;
  }
  const Gap& g = domain.gaps()[*k];
  const double dl = g.lo.is_finite() ? std::hypot(x - g.lo.value(), y) : kInf;
  const double dh = g.hi.is_finite() ? std::hypot(g.hi.value() - x, y) : kInf;
  out.delta = std::min(dl, dh);
  const double tie_tol = 1e-12 * std::max(1.0, std::abs(z));
  if (dl <= out.delta + tie_tol) out.nearest.push_back(g.lo.value());
  if (dh <= out.delta + tie_tol) out.nearest.push_back(g.hi.value());
  return out;
}

double beta(const GapDomain& domain, PlanePoint z) {
  domain.require_hyperbolic_type();
  const auto nd = delta(domain, z);
  const double d = nd.delta;
  const auto& lo = domain.comp_lo_;
  const auto& hi = domain.comp_hi_;
  const auto n = lo.size();

  double best = kInf;
  auto consider = [&](double dist) {
    if (dist > 0.0 && std::isfinite(dist)) best = std::min(best, std::abs(std::log(d / dist)));
  };

  for (const double a : nd.nearest) {
    // Boundary points to the right of a, bracketing a + d.
    {
      const double target = a + d;
      const auto up = std::upper_bound(lo.begin(), lo.end(), target);
      if (up != lo.begin()) {
        const auto k = static_cast<std::size_t>(up - lo.begin()) - 1;
        if (hi[k] >= target) return 0.0;
        if (hi[k] > a) consider(hi[k] - a);
      }
      const auto next = static_cast<std::size_t>(up - lo.begin());
      if (next < n) consider(lo[next] - a);
    }
    // And to the left, bracketing a - d.
    {
      const double target = a - d;
      const auto lb = std::lower_bound(hi.begin(), hi.end(), target);
      const auto k = static_cast<std::size_t>(lb - hi.begin());
      if (k < n) {
        if (lo[k] <= target) return 0.0;
        if (lo[k] < a) consider(a - lo[k]);
      }
      if (k > 0) consider(a - hi[k - 1]);
    }
  }
  return best;
}

ExtendedReal uniform_perfectness_ratio(const GapDomain& domain,
                                       std::optional<std::pair<std::size_t, std::size_t>> window) {
  domain.require_hyperbolic_type();
  const auto& gaps = domain.gaps();
  std::size_t first = 0;
  std::size_t last = gaps.size() - 1;
  if (window) {
    if (window->first > window->second || window->second >= gaps.size()) {
      throw Error(ErrorKind::InvalidIndex, "window outside the materialized gaps");
    }
    first = window->first;
    last = window->second;
  }
  std::vector<double> centres;
  for (std::size_t i = first; i <= last; ++i) {
    if (gaps[i].lo.is_finite()) centres.push_back(gaps[i].lo.value());
    if (gaps[i].hi.is_finite()) centres.push_back(gaps[i].hi.value());
  }
  std::sort(centres.begin(), centres.end());
  centres.erase(std::unique(centres.begin(), centres.end()), centres.end());

  double worst = 1.0;
  std::vector<std::pair<double, double>> dists;
  for (const double c : centres) {
    dists.clear();
    for (const auto& comp : domain.boundary()) {
      const double p = comp.lo.as_double();
      const double q = comp.hi.as_double();
      if (p <= c && c <= q) {
        dists.emplace_back(0.0, std::max(c - p, q - c));
      } else if (q < c) {
        dists.emplace_back(c - q, c - p);
      } else {
        dists.emplace_back(p - c, q - c);
      }
    }
    std::sort(dists.begin(), dists.end());
    double reach = dists.front().second;
    for (std::size_t i = 1; i < dists.size(); ++i) {
      if (dists[i].first > reach) {
        if (reach == 0.0) return ExtendedReal::pos_inf();
        worst = std::max(worst, dists[i].first / reach);
      }
      reach = std::max(reach, dists[i].second);
    }
  }
  return worst;
}

GapDomain scale(const GapDomain& domain, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  auto mul = [t](ExtendedReal v) { return v.is_finite() ? ExtendedReal(v.value() * t) : v; };
  std::vector<Gap> gaps;
  for (const auto& g : domain.explicit_gaps()) gaps.push_back({mul(g.lo), mul(g.hi)});
  std::optional<GeneratorSpec> tail = domain.tail();
  if (tail) {
    if (auto* g = std::get_if<GeometricTail>(&*tail)) {
      g->a1 *= t;
    } else if (auto* p = std::get_if<PeriodicTail>(&*tail)) {
      for (auto& [a, b] : p->base) {
        a *= t;
        b *= t;
      }
      p->period *= t;
    } else if (auto* gf = std::get_if<GFunctionTail>(&*tail)) {
      gf->start *= t;
      gf->step *= t;
      for (auto& entry : gf->table) entry.first *= t;
    }
  }
  return GapDomain(std::move(gaps), std::move(tail), domain.truncation_count());
}

}  // namespace denjoy
