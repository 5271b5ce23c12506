#include "denjoy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "denjoy/errors.hpp"

namespace denjoy {

namespace {

struct Anchor {
  double pos;
  double inner;  // first offset from pos
};

std::vector<double> grade_axis(std::vector<Anchor> anchors, double lo, double hi, double ratio) {
  std::vector<double> out{lo, hi};
  std::erase_if(anchors, [&](const Anchor& a) { return a.pos < lo || a.pos > hi || !(a.inner > 0.0); });
  if (anchors.empty()) anchors.push_back({lo, 1e-2 * (hi - lo)});
  std::sort(anchors.begin(), anchors.end(), [](const Anchor& a, const Anchor& b) {
    return a.pos < b.pos || (a.pos == b.pos && a.inner < b.inner);
  });
  // Coincident anchors keep the finest inner offset.
  anchors.erase(std::unique(anchors.begin(), anchors.end(),
                            [](const Anchor& a, const Anchor& b) { return a.pos == b.pos; }),
                anchors.end());
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const double p = anchors[k].pos;
    const double left = k > 0 ? 0.5 * (anchors[k - 1].pos + p) : lo;
    const double right = k + 1 < anchors.size() ? 0.5 * (p + anchors[k + 1].pos) : hi;
    out.push_back(p);
    for (double d = anchors[k].inner; p + d < right; d *= ratio) out.push_back(p + d);
    for (double d = anchors[k].inner; p - d > left; d *= ratio) out.push_back(p - d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double depth_ratio(double grading_ratio, int depth) {
  return std::pow(grading_ratio, std::pow(2.0, 6.0 - static_cast<double>(depth)));
}

GradedGrid::GradedGrid(const GapDomain& domain, const Box& box, const GridParams& params,
                       std::span<const PlanePoint> anchors)
    : domain_(&domain), params_(params) {
  if (!(params.ratio > 1.0)) throw Error(ErrorKind::InvalidArgument, "grading ratio must exceed 1");
  if (params.connectivity != 8 && params.connectivity != 16) {
    throw Error(ErrorKind::InvalidArgument, "connectivity must be 8 or 16");
  }
  const double width = box.x1 - box.x0;
  const auto& ends = domain.endpoints();

  std::vector<Anchor> xa;
  double finest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ends.size(); ++k) {
    double scale = width;
    if (k > 0) scale = std::min(scale, ends[k] - ends[k - 1]);
    if (k + 1 < ends.size()) scale = std::min(scale, ends[k + 1] - ends[k]);
    if (ends[k] >= box.x0 && ends[k] <= box.x1) {
      xa.push_back({ends[k], params.inner_fraction * scale});
      finest = std::min(finest, scale);
    }
  }
  std::vector<Anchor> ya;
  for (const auto& p : anchors) {
    const double d = domain.boundary_distance(p);
    if (d > 0.0) {
      xa.push_back({p.real(), 1e-2 * d});
      if (p.imag() != 0.0) {
        ya.push_back({p.imag(), 1e-2 * d});
        if (box.y0 < 0.0) ya.push_back({-p.imag(), 1e-2 * d});
      }
    }
  }
  if (!std::isfinite(finest)) finest = box.y1 - std::max(0.0, box.y0);
  ya.push_back({0.0, params.inner_fraction * finest});

  xs_ = grade_axis(std::move(xa), box.x0, box.x1, params.ratio);
  ys_ = grade_axis(std::move(ya), box.y0, box.y1, params.ratio);

  valid_.assign(grid_size(), 0);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    for (std::size_t j = 0; j < ys_.size(); ++j) {
      valid_[i * ys_.size() + j] = domain.boundary_distance({xs_[i], ys_[j]}) > 0.0 ? 1 : 0;
    }
  }
}

std::size_t GradedGrid::valid_count() const {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), 1)) + attached_.size();
}

PlanePoint GradedGrid::point(std::size_t node) const {
  const std::size_t n = grid_size();
  if (node >= n) return attached_[node - n];
  return {xs_[node / ys_.size()], ys_[node % ys_.size()]};
}

bool GradedGrid::valid(std::size_t node) const { return node >= grid_size() || valid_[node] != 0; }

std::optional<std::size_t> GradedGrid::find(PlanePoint p) const {
  const auto ix = std::lower_bound(xs_.begin(), xs_.end(), p.real());
  const auto iy = std::lower_bound(ys_.begin(), ys_.end(), p.imag());
  if (ix != xs_.end() && *ix == p.real() && iy != ys_.end() && *iy == p.imag()) {
    const auto i = static_cast<std::size_t>(ix - xs_.begin());
    const auto j = static_cast<std::size_t>(iy - ys_.begin());
    return i * ys_.size() + j;
  }
  for (std::size_t k = 0; k < attached_.size(); ++k) {
    if (attached_[k] == p) return grid_size() + k;
  }
  return std::nullopt;
}

bool GradedGrid::edge_ok(PlanePoint a, PlanePoint b) const {
  const double ya = a.imag();
  const double yb = b.imag();
  if ((ya > 0.0 && yb > 0.0) || (ya < 0.0 && yb < 0.0)) return true;
  return segment_in_domain(*domain_, a, b);
}

std::size_t GradedGrid::attach(PlanePoint p) {
  if (const auto hit = find(p)) {
    if (!valid(*hit)) throw Error(ErrorKind::PointOnBoundary, "point lies on the boundary");
    return *hit;
  }
  if (domain_->boundary_distance(p) == 0.0) throw Error(ErrorKind::PointOnBoundary, "point lies on the boundary");
  const auto id = static_cast<std::uint32_t>(grid_size() + attached_.size());
  attached_.push_back(p);
  attached_links_.emplace_back();
  auto clamp_index = [](const std::vector<double>& v, double x) {
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    return static_cast<long>(it - v.begin()) - 1;
  };
  const long ix = clamp_index(xs_, p.real());
  const long iy = clamp_index(ys_, p.imag());
  const auto nxl = static_cast<long>(xs_.size());
  const auto nyl = static_cast<long>(ys_.size());
  for (long i = ix - 2; i <= ix + 3; ++i) {
    for (long j = iy - 2; j <= iy + 3; ++j) {
      if (i < 0 || j < 0 || i >= nxl || j >= nyl) continue;
      const auto v = static_cast<std::uint32_t>(i * nyl + j);
      if (!valid_[v]) continue;
      if (!edge_ok(p, point(v))) continue;
      attached_links_.back().push_back(v);
      reverse_links_[v].push_back(id);
    }
  }
  return id;
}

std::vector<std::size_t> GradedGrid::axis_nodes_in_gap(std::size_t gap) const {
  std::vector<std::size_t> out;
  const auto iy = std::lower_bound(ys_.begin(), ys_.end(), 0.0);
  if (iy == ys_.end() || *iy != 0.0) return out;
  const auto j = static_cast<std::size_t>(iy - ys_.begin());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const std::size_t v = i * ys_.size() + j;
    if (valid_[v] && domain_->gap_containing(xs_[i]) == gap) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> GradedGrid::axis_nodes() const {
  std::vector<std::size_t> out;
  const auto iy = std::lower_bound(ys_.begin(), ys_.end(), 0.0);
  if (iy == ys_.end() || *iy != 0.0) return out;
  const auto j = static_cast<std::size_t>(iy - ys_.begin());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const std::size_t v = i * ys_.size() + j;
    if (valid_[v]) out.push_back(v);
  }
  return out;
}

double edge_weight(const GapDomain& domain, PlanePoint a, PlanePoint b, MetricKind kind) {
  static const double kOff = 0.5 * std::sqrt(0.6);
  const PlanePoint d = b - a;
  const double len = std::abs(d);
  const double f0 = density(domain, a + (0.5 - kOff) * d, kind);
  const double f1 = density(domain, a + 0.5 * d, kind);
  const double f2 = density(domain, a + (0.5 + kOff) * d, kind);
  return len * (5.0 * f0 + 8.0 * f1 + 5.0 * f2) / 18.0;
}

SearchResult shortest_paths(const GradedGrid& grid, const GapDomain& domain, MetricKind kind,
                            std::span<const std::size_t> sources, std::span<const std::size_t> targets) {
  const std::size_t n = grid.size();
  SearchResult res;
  res.dist.assign(n, std::numeric_limits<double>::infinity());
  res.pred.assign(n, -1);
  std::vector<char> is_target(targets.empty() ? 0 : n, 0);
  for (const auto t : targets) is_target[t] = 1;
  std::vector<char> done(n, 0);

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (const auto s : sources) {
    res.dist[s] = 0.0;
    heap.emplace(0.0, s);
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (!is_target.empty() && is_target[u]) {
      res.reached = static_cast<std::int64_t>(u);
      break;
    }
    const PlanePoint pu = grid.point(u);
    grid.for_each_neighbour(u, [&](std::size_t v) {
      if (done[v]) return;
      const double w = edge_weight(domain, pu, grid.point(v), kind);
      if (!std::isfinite(w)) return;
      const double nd = d + w;
      if (nd < res.dist[v]) {
        res.dist[v] = nd;
        res.pred[v] = static_cast<std::int64_t>(u);
        heap.emplace(nd, v);
      }
    });
  }
  return res;
}

std::vector<PlanePoint> trace_back(const GradedGrid& grid, const SearchResult& search, std::size_t node) {
  std::vector<PlanePoint> pts;
  for (auto v = static_cast<std::int64_t>(node); v >= 0; v = search.pred[static_cast<std::size_t>(v)]) {
    pts.push_back(grid.point(static_cast<std::size_t>(v)));
  }
  std::reverse(pts.begin(), pts.end());
  return pts;
}

}  // namespace denjoy
