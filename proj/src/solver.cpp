#include "denjoy/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "denjoy/errors.hpp"
#include "denjoy/format.hpp"
#include "polish.hpp"

namespace denjoy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxVertices = 600;
constexpr int kRetries = 3;

using detail::EndRule;

EndRule on_gap(const Gap& g) { return {false, g.lo.as_double(), g.hi.as_double()}; }

/// Coordinate-descent shortening of a polyline. Every accepted change
/// strictly lowers (moves, insertions) or does not raise (removals) the
/// cost of the segments it touches; a sweep that ends longer than it
/// started is rolled back.
class Refiner {
 public:
  Refiner(const GapDomain& domain, MetricKind kind, double tol, bool half_plane,
          std::vector<PlanePoint> pts, EndRule first, EndRule last)
      : domain_(domain), kind_(kind), tol_(tol), half_(half_plane), pts_(std::move(pts)),
        first_(first), last_(last) {
    seg_.resize(pts_.size() > 0 ? pts_.size() - 1 : 0);
    for (std::size_t i = 0; i < seg_.size(); ++i) seg_[i] = seglen(pts_[i], pts_[i + 1]);
    step_.resize(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) step_[i] = 0.1 * domain_.boundary_distance(pts_[i]);
  }

  double total() const {
    double s = 0.0;
    for (const double v : seg_) s += v;
    return s;
  }

  std::vector<double> run(int iters) {
    std::vector<double> history{total()};
    int idle = 0;
    for (int it = 0; it < iters; ++it) {
      const auto saved_pts = pts_;
      const auto saved_seg = seg_;
      const auto saved_step = step_;
      remove_pass();
      move_pass();
      insert_pass();
      const double now = total();
      const double prev = history.back();
      if (now > prev) {
        pts_ = saved_pts;
        seg_ = saved_seg;
        step_ = saved_step;
        break;
      }
      history.push_back(now);
      // Steps shrink on failure, so a quiet sweep is not yet convergence.
      idle = prev - now <= 1e-12 * now ? idle + 1 : 0;
      if (idle >= 4) break;
    }
    return history;
  }

  const std::vector<PlanePoint>& points() const { return pts_; }

 private:
  double seglen(PlanePoint a, PlanePoint b) const {
    if (a == b) return 0.0;
    if (!segment_in_domain(domain_, a, b)) return kInf;
    try {
      return segment_length(domain_, a, b, kind_, tol_);
    } catch (const Error&) {
      return kInf;
    }
  }

  bool admissible(std::size_t i, PlanePoint c) const {
    if (half_ && c.imag() < 0.0) return false;
    if (domain_.boundary_distance(c) == 0.0) return false;
    if ((i > 0 && c == pts_[i - 1]) || (i + 1 < pts_.size() && c == pts_[i + 1])) return false;
    const EndRule* rule = i == 0 ? &first_ : (i + 1 == pts_.size() ? &last_ : nullptr);
    if (rule != nullptr) {
      if (rule->fixed) return false;
      if (c.imag() != 0.0 || !(c.real() > rule->lo && c.real() < rule->hi)) return false;
    }
    return true;
  }

  double local_cost(std::size_t i, PlanePoint c) const {
    double s = 0.0;
    if (i > 0) s += seglen(pts_[i - 1], c);
    if (i + 1 < pts_.size()) s += seglen(c, pts_[i + 1]);
    return s;
  }

  void move_pass() {
    static const std::array<PlanePoint, 8> kDirs = [] {
      std::array<PlanePoint, 8> d{};
      for (int k = 0; k < 8; ++k) d[k] = std::polar(1.0, k * std::numbers::pi / 4.0);
      return d;
    }();
    static const std::array<PlanePoint, 2> kAxis = {PlanePoint{1.0, 0.0}, PlanePoint{-1.0, 0.0}};
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const bool is_end = i == 0 || i + 1 == pts_.size();
      const EndRule& rule = i == 0 ? first_ : last_;
      if (is_end && rule.fixed) continue;
      const PlanePoint v = pts_[i];
      const double dv = domain_.boundary_distance(v);
      if (!(step_[i] > 1e-7 * dv)) continue;
      const double current = (i > 0 ? seg_[i - 1] : 0.0) + (i + 1 < pts_.size() ? seg_[i] : 0.0);
      double best = current;
      PlanePoint best_pt = v;
      auto try_dir = [&](PlanePoint dir) {
        PlanePoint c = v + step_[i] * dir;
        if (half_ && c.imag() < 0.0 && !is_end) c = {c.real(), 0.0};
        if (c == v || !admissible(i, c)) return;
        const double cost = local_cost(i, c);
        if (cost < best) {
          best = cost;
          best_pt = c;
        }
      };
      if (is_end) {
        for (const auto& d : kAxis) try_dir(d);
      } else {
        for (const auto& d : kDirs) try_dir(d);
      }
      if (best < current) {
        pts_[i] = best_pt;
        if (i > 0) seg_[i - 1] = seglen(pts_[i - 1], best_pt);
        if (i + 1 < pts_.size()) seg_[i] = seglen(best_pt, pts_[i + 1]);
        step_[i] *= 1.5;
      } else {
        step_[i] *= 0.5;
      }
    }
  }

  void remove_pass() {
    std::size_t i = 1;
    while (i + 1 < pts_.size()) {
      const double shortcut = seglen(pts_[i - 1], pts_[i + 1]);
      if (shortcut <= seg_[i - 1] + seg_[i] && pts_[i - 1] != pts_[i + 1]) {
        pts_.erase(pts_.begin() + static_cast<long>(i));
        step_.erase(step_.begin() + static_cast<long>(i));
        seg_[i - 1] = shortcut;
        seg_.erase(seg_.begin() + static_cast<long>(i));
      } else {
        ++i;
      }
    }
  }

  void insert_pass() {
    static constexpr std::array<double, 7> kOffsets = {0.0, 0.01, -0.01, 0.04, -0.04, 0.15, -0.15};
    std::size_t i = 0;
    while (i + 1 < pts_.size() && pts_.size() < kMaxVertices) {
      const PlanePoint a = pts_[i];
      const PlanePoint b = pts_[i + 1];
      const double len = std::abs(b - a);
      const double da = domain_.boundary_distance(a);
      const double db = domain_.boundary_distance(b);
      if (!(len > 0.3 * std::min(da, db))) {
        ++i;
        continue;
      }
      const PlanePoint mid = 0.5 * (a + b);
      const PlanePoint normal = PlanePoint{0.0, 1.0} * (b - a);
      double best = seg_[i];
      PlanePoint best_pt = mid;
      double best_left = 0.0;
      double best_right = 0.0;
      bool found = false;
      for (const double off : kOffsets) {
        const PlanePoint c = mid + off * normal;
        if (c == a || c == b) continue;
        if (half_ && c.imag() < 0.0) continue;
        if (domain_.boundary_distance(c) == 0.0) continue;
        const double left = seglen(a, c);
        const double right = seglen(c, b);
        if (left + right < best) {
          best = left + right;
          best_pt = c;
          best_left = left;
          best_right = right;
          found = true;
        }
      }
      if (found) {
        pts_.insert(pts_.begin() + static_cast<long>(i + 1), best_pt);
        step_.insert(step_.begin() + static_cast<long>(i + 1), 0.1 * domain_.boundary_distance(best_pt));
        seg_[i] = best_left;
        seg_.insert(seg_.begin() + static_cast<long>(i + 1), best_right);
        i += 2;
      } else {
        ++i;
      }
    }
  }

  const GapDomain& domain_;
  MetricKind kind_;
  double tol_;
  bool half_;
  std::vector<PlanePoint> pts_;
  std::vector<double> seg_;
  std::vector<double> step_;
  EndRule first_;
  EndRule last_;
};

GridParams grid_params(const SolverConfig& cfg, int depth) {
  GridParams p;
  p.ratio = depth_ratio(cfg.grading_ratio, depth);
  p.connectivity = cfg.connectivity;
  return p;
}

/// Horizontal distance from x to the closest point of the domain's real
/// trace.
double distance_to_gaps(const GapDomain& domain, double x) {
  if (domain.gap_containing(x)) return 0.0;
  double best = kInf;
  for (const double e : domain.endpoints()) best = std::min(best, std::abs(x - e));
  return std::isfinite(best) ? best : 0.0;
}

Box make_box(double xmin, double xmax, double ymax, double width, double margin, bool half) {
  Box b;
  b.x0 = xmin - margin * width;
  b.x1 = xmax + margin * width;
  b.y1 = ymax + margin * width;
  b.y0 = half ? 0.0 : -b.y1;
  return b;
}

GeodesicResult finish(const GapDomain& domain, MetricKind kind, const SolverConfig& cfg,
                      std::vector<PlanePoint> pts, EndRule first, EndRule last, bool half,
                      double grid_length, std::size_t grid_nodes, bool polish = true) {
  Refiner refiner(domain, kind, cfg.tol, half, std::move(pts), first, last);
  GeodesicResult r;
  r.refinement_lengths = refiner.run(cfg.refine_iters);
  r.path = PolylinePath(refiner.points());
  r.metric = kind;
  r.length = refiner.total();
  // The vertex count comes from the grid length, which is stable under
  // rounding-level changes of the input, so the polished path is too.
  const double count = std::ceil(grid_length / detail::polish_spacing(kind)) + 1.0;
  if (polish && cfg.refine_iters > 0 && std::isfinite(count)) {
    const auto n = static_cast<std::size_t>(std::clamp(count, 3.0, 400.0));
    if (auto v = detail::polish_path(domain, kind, half, r.path.vertices(), first, last, n)) {
      PolylinePath p(std::move(*v));
      const double len = path_length(domain, p, kind, cfg.tol);
      if (len <= r.length) {
        r.path = std::move(p);
        r.length = len;
        r.refinement_lengths.push_back(len);
      }
    }
  }
  if (needs_hyperbolic_type(kind)) r.band = hyperbolic_band(domain, r.path, cfg.tol);
  r.grid_length = grid_length;
  r.grid_nodes = grid_nodes;
  r.truncation = domain.truncation_count();
  return r;
}

void check_point(const GapDomain& domain, PlanePoint z, bool half) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::InvalidArgument, "point coordinates must be finite");
  }
  if (domain.boundary_distance(z) == 0.0) throw Error(ErrorKind::PointOnBoundary, "point lies on the boundary");
  if (half && z.imag() < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "half-plane query needs Im z >= 0");
  }
}

template <typename Solve>
GeodesicResult with_check(const SolverConfig& cfg, Solve&& solve) {
  GeodesicResult r = solve(cfg.depth);
  if (cfg.check_convergence && !r.direct && r.length > 0.0) {
    const GeodesicResult fine = solve(cfg.depth + 1);
    r.check_length = fine.length;
    r.converged = std::abs(r.length - fine.length) < 0.01 * fine.length;
  }
  return r;
}

template <typename Attempt>
GeodesicResult with_retries(const SolverConfig& cfg, Attempt&& attempt) {
  double margin = cfg.margin_factor;
  for (int k = 0; k < kRetries; ++k, margin *= 2.0) {
    if (auto r = attempt(margin)) return std::move(*r);
  }
  throw Error(ErrorKind::Disconnected, "no grid path between the query sets");
}

GeodesicResult solve_points(const GapDomain& domain, PlanePoint z, PlanePoint w, MetricKind kind,
                            const SolverConfig& cfg, int depth) {
  const bool half = cfg.half_plane_only;
  const double ratio = depth_ratio(cfg.grading_ratio, depth);
  const double dz = domain.boundary_distance(z);
  const double dw = domain.boundary_distance(w);
  if (std::abs(z - w) <= (ratio - 1.0) * std::min(dz, dw) && segment_in_domain(domain, z, w)) {
    GeodesicResult r;
    r.path = PolylinePath{z, w};
    r.metric = kind;
    r.length = segment_length(domain, z, w, kind, cfg.tol);
    if (needs_hyperbolic_type(kind)) r.band = hyperbolic_band(domain, r.path, cfg.tol);
    r.grid_length = r.length;
    r.refinement_lengths = {r.length};
    r.truncation = domain.truncation_count();
    r.direct = true;
    return r;
  }
  const std::array<PlanePoint, 2> pts{z, w};
  return with_retries(cfg, [&](double margin) -> std::optional<GeodesicResult> {
    const Box box = query_box(domain, pts, margin, half);
    GradedGrid grid(domain, box, grid_params(cfg, depth), pts);
    const std::size_t src = grid.attach(z);
    const std::size_t dst = grid.attach(w);
    const std::array<std::size_t, 1> s{src};
    const std::array<std::size_t, 1> t{dst};
    const auto search = shortest_paths(grid, domain, kind, s, t);
    if (search.reached < 0) return std::nullopt;
    auto path = trace_back(grid, search, dst);
    return finish(domain, kind, cfg, std::move(path), EndRule{}, EndRule{}, half,
                  search.dist[dst], grid.valid_count());
  });
}

bool adjacent(const Gap& a, const Gap& b) {
  return (a.hi.is_finite() && a.hi == b.lo) || (b.hi.is_finite() && b.hi == a.lo);
}

GeodesicResult solve_gaps(const GapDomain& domain, std::size_t from, std::size_t to, MetricKind kind,
                          const SolverConfig& cfg, int depth) {
  const Gap& g0 = domain.gaps()[from];
  const Gap& g1 = domain.gaps()[to];
  std::vector<double> xs;
  for (const auto& g : {g0, g1}) {
    if (g.lo.is_finite()) xs.push_back(g.lo.value());
    if (g.hi.is_finite()) xs.push_back(g.hi.value());
  }
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double xmin = *lo_it;
  const double xmax = *hi_it;
  const double width = xmax - xmin;
  return with_retries(cfg, [&](double margin) -> std::optional<GeodesicResult> {
    const Box box = make_box(xmin, xmax, 0.0, width, margin, true);
    GradedGrid grid(domain, box, grid_params(cfg, depth), {});
    const auto sources = grid.axis_nodes_in_gap(from);
    const auto targets = grid.axis_nodes_in_gap(to);
    if (sources.empty() || targets.empty()) return std::nullopt;
    const auto search = shortest_paths(grid, domain, kind, sources, targets);
    if (search.reached < 0) return std::nullopt;
    const auto end = static_cast<std::size_t>(search.reached);
    auto path = trace_back(grid, search, end);
    return finish(domain, kind, cfg, std::move(path), on_gap(g0), on_gap(g1), true, search.dist[end],
                  grid.valid_count());
  });
}

Box real_box(const GapDomain& domain, std::span<const PlanePoint> points, double margin, bool half) {
  double xmin = kInf;
  double xmax = -kInf;
  double ymax = 0.0;
  double reach = 0.0;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymax = std::max(ymax, std::abs(p.imag()));
    reach = std::max(reach, distance_to_gaps(domain, p.real()));
    reach = std::max(reach, domain.boundary_distance(p));
  }
  const double width = std::max({xmax - xmin, ymax, reach});
  return make_box(xmin, xmax, ymax, width, margin, half);
}

GeodesicResult zero_result(const GapDomain& domain, PlanePoint z, MetricKind kind) {
  GeodesicResult r;
  r.path = PolylinePath{z};
  r.metric = kind;
  if (needs_hyperbolic_type(kind)) r.band = LengthBand{0.0, 0.0};
  r.refinement_lengths = {0.0};
  r.truncation = domain.truncation_count();
  r.direct = true;
  return r;
}

/// Grid path from z (first) to the real axis (last), refined with the axis
/// end sliding along its gap.
GeodesicResult finish_to_real(const GapDomain& domain, MetricKind kind, const SolverConfig& cfg,
                              const GradedGrid& grid, const SearchResult& search, std::size_t node,
                              bool half, bool polish) {
  auto path = trace_back(grid, search, node);
  std::reverse(path.begin(), path.end());
  const auto gap = domain.gap_containing(path.back().real());
  const EndRule last = gap ? on_gap(domain.gaps()[*gap]) : EndRule{};
  return finish(domain, kind, cfg, std::move(path), EndRule{}, last, half, search.dist[node],
                grid.valid_count(), polish);
}

GeodesicResult solve_to_real(const GapDomain& domain, PlanePoint z, MetricKind kind,
                             const SolverConfig& cfg, int depth) {
  const bool half = cfg.half_plane_only;
  const std::array<PlanePoint, 1> pts{z};
  return with_retries(cfg, [&](double margin) -> std::optional<GeodesicResult> {
    const Box box = real_box(domain, pts, margin, half);
    GradedGrid grid(domain, box, grid_params(cfg, depth), pts);
    const std::size_t target = grid.attach(z);
    const auto sources = grid.axis_nodes();
    if (sources.empty()) return std::nullopt;
    const std::array<std::size_t, 1> t{target};
    const auto search = shortest_paths(grid, domain, kind, sources, t);
    if (search.reached < 0) return std::nullopt;
    return finish_to_real(domain, kind, cfg, grid, search, target, half, true);
  });
}

void check_metric(const GapDomain& domain, MetricKind kind) {
  if (needs_hyperbolic_type(kind)) domain.require_hyperbolic_type();
}

}  // namespace

void SolverConfig::check() const {
  if (depth < 1 || depth > 12) throw Error(ErrorKind::InvalidArgument, "depth must lie in [1, 12]");
  if (!(grading_ratio > 1.0) || !std::isfinite(grading_ratio)) {
    throw Error(ErrorKind::InvalidArgument, "grading ratio must exceed 1");
  }
  if (connectivity != 8 && connectivity != 16) {
    throw Error(ErrorKind::InvalidArgument, "connectivity must be 8 or 16");
  }
  if (!(margin_factor >= 1.0) || !std::isfinite(margin_factor)) {
    throw Error(ErrorKind::InvalidArgument, "margin factor must be at least 1");
  }
  if (refine_iters < 0) throw Error(ErrorKind::InvalidArgument, "refine_iters must be non-negative");
  if (!(tol > 1e-12 && tol < 1e-2)) {
    throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must lie in (1e-12, 1e-2)");
  }
}

nlohmann::ordered_json SolverConfig::to_json() const {
  nlohmann::ordered_json j;
  j["depth"] = depth;
  j["grading_ratio"] = grading_ratio;
  j["connectivity"] = connectivity;
  j["half_plane_only"] = half_plane_only;
  j["margin_factor"] = margin_factor;
  j["refine_iters"] = refine_iters;
  j["tol"] = tol;
  j["check_convergence"] = check_convergence;
  return j;
}

std::string SolverConfig::fingerprint() const {
  std::ostringstream os;
  os << "d" << depth << "-g" << fmt17(grading_ratio) << "-c" << connectivity << (half_plane_only ? "-half" : "-full")
     << "-m" << fmt17(margin_factor) << "-r" << refine_iters << "-t" << fmt17(tol);
  return os.str();
}

Box query_box(const GapDomain& domain, std::span<const PlanePoint> points, double margin_factor,
              bool half_plane) {
  double xmin = kInf;
  double xmax = -kInf;
  double ymax = 0.0;
  double reach = 0.0;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymax = std::max(ymax, std::abs(p.imag()));
    reach = std::max(reach, domain.boundary_distance(p));
  }
  const double width = std::max({xmax - xmin, ymax, reach});
  return make_box(xmin, xmax, ymax, width, margin_factor, half_plane);
}

GeodesicResult distance(const GapDomain& domain, PlanePoint z, PlanePoint w, MetricKind metric,
                        const SolverConfig& config) {
  config.check();
  check_metric(domain, metric);
  check_point(domain, z, config.half_plane_only);
  check_point(domain, w, config.half_plane_only);
  if (z == w) return zero_result(domain, z, metric);
  // Solve in a canonical order so that swapping the arguments only reverses
  // the path.
  const bool swap = std::make_pair(w.real(), w.imag()) < std::make_pair(z.real(), z.imag());
  const PlanePoint a = swap ? w : z;
  const PlanePoint b = swap ? z : w;
  GeodesicResult r = with_check(config, [&](int depth) { return solve_points(domain, a, b, metric, config, depth); });
  if (swap) r.path = r.path.reversed();
  return r;
}

GeodesicResult gap_distance(const GapDomain& domain, std::size_t from, std::size_t to,
                            MetricKind metric, const SolverConfig& config) {
  config.check();
  check_metric(domain, metric);
  const auto& gaps = domain.gaps();
  if (from >= gaps.size() || to >= gaps.size()) {
    throw Error(ErrorKind::InvalidIndex, "gap index beyond the materialized gaps");
  }
  if (from == to) throw Error(ErrorKind::InvalidIndex, "gap indices must differ");
  if (adjacent(gaps[from], gaps[to])) {
    throw Error(ErrorKind::AdjacentGaps, "the two gaps share an endpoint");
  }
  return with_check(config, [&](int depth) { return solve_gaps(domain, from, to, metric, config, depth); });
}

GeodesicResult fundamental_geodesic(const GapDomain& domain, std::size_t n, MetricKind metric,
                                    const SolverConfig& config) {
  if (n < 1) throw Error(ErrorKind::InvalidIndex, "fundamental geodesics need n >= 1");
  return gap_distance(domain, 0, n, metric, config);
}

GeodesicResult distance_to_real(const GapDomain& domain, PlanePoint z, MetricKind metric,
                                const SolverConfig& config) {
  config.check();
  check_metric(domain, metric);
  check_point(domain, z, config.half_plane_only);
  if (z.imag() == 0.0) return zero_result(domain, z, metric);
  return with_check(config, [&](int depth) { return solve_to_real(domain, z, metric, config, depth); });
}

std::vector<GeodesicResult> distance_to_real_many(const GapDomain& domain,
                                                  std::span<const PlanePoint> points,
                                                  MetricKind metric, const SolverConfig& config) {
  config.check();
  check_metric(domain, metric);
  for (const auto& p : points) check_point(domain, p, config.half_plane_only);
  std::vector<GeodesicResult> out(points.size());
  std::vector<PlanePoint> off_axis;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].imag() == 0.0) {
      out[k] = zero_result(domain, points[k], metric);
    } else {
      off_axis.push_back(points[k]);
    }
  }
  if (off_axis.empty()) return out;
  const bool half = config.half_plane_only;
  double margin = config.margin_factor;
  for (int attempt = 0; attempt < kRetries; ++attempt, margin *= 2.0) {
    const Box box = real_box(domain, off_axis, margin, half);
    GradedGrid grid(domain, box, grid_params(config, config.depth), {});
    std::vector<std::size_t> nodes;
    for (const auto& p : off_axis) nodes.push_back(grid.attach(p));
    const auto sources = grid.axis_nodes();
    if (sources.empty()) continue;
    const auto search = shortest_paths(grid, domain, metric, sources);
    if (std::any_of(nodes.begin(), nodes.end(), [&](std::size_t v) { return !std::isfinite(search.dist[v]); })) {
      continue;
    }
    std::size_t j = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (points[k].imag() == 0.0) continue;
      out[k] = finish_to_real(domain, metric, config, grid, search, nodes[j++], half, false);
    }
    return out;
  }
  throw Error(ErrorKind::Disconnected, "no grid path from a sample point to the real axis");
}

PolylinePath reflect(const PolylinePath& path) {
  std::vector<PlanePoint> v;
  v.reserve(path.size());
  for (const auto& p : path.vertices()) v.push_back(std::conj(p));
  return PolylinePath(std::move(v));
}

std::vector<PlanePoint> sample_by_arc_length(const PolylinePath& path, std::size_t n) {
  const auto& v = path.vertices();
  if (n == 0) return {};
  if (v.size() == 1 || n == 1) return std::vector<PlanePoint>(n, v.front());
  std::vector<double> cum{0.0};
  for (std::size_t i = 0; i + 1 < v.size(); ++i) cum.push_back(cum.back() + std::abs(v[i + 1] - v[i]));
  const double total = cum.back();
  std::vector<PlanePoint> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 == n) {
      out.push_back(v.back());
      break;
    }
    const double s = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < cum.size() && cum[seg + 1] < s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? std::clamp((s - cum[seg]) / len, 0.0, 1.0) : 0.0;
    out.push_back(v[seg] + t * (v[seg + 1] - v[seg]));
  }
  return out;
}

}  // namespace denjoy
