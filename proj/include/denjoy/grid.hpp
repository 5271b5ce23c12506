#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "denjoy/density.hpp"
#include "denjoy/domain.hpp"

namespace denjoy {

struct Box {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

struct GridParams {
  /// Cell growth factor per node row/column (already adjusted for depth).
  double ratio = 1.25;
  int connectivity = 16;
  /// Innermost offset next to a boundary endpoint, as a fraction of the
  /// endpoint's local gap scale.
  double inner_fraction = 1e-4;
};

/// Effective grading ratio at a given depth: depth 6 uses the configured
/// ratio and every further level takes its square root, so consecutive
/// depths produce nested node sets.
double depth_ratio(double grading_ratio, int depth);

/// Tensor-product node set over a box, graded geometrically toward the real
/// axis and toward every finite gap endpoint. Nodes on the boundary are
/// marked invalid. Extra points can be attached as standalone nodes wired to
/// the surrounding grid stencil.
class GradedGrid {
 public:
  GradedGrid(const GapDomain& domain, const Box& box, const GridParams& params,
             std::span<const PlanePoint> anchors);

  std::size_t nx() const { return xs_.size(); }
  std::size_t ny() const { return ys_.size(); }
  std::size_t grid_size() const { return xs_.size() * ys_.size(); }
  std::size_t size() const { return grid_size() + attached_.size(); }
  std::size_t valid_count() const;

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

  PlanePoint point(std::size_t node) const;
  bool valid(std::size_t node) const;

  /// Node at exactly this position if one exists (grid or attached).
  std::optional<std::size_t> find(PlanePoint p) const;
  /// Returns the node for p, attaching a new one when p is not a grid node.
  std::size_t attach(PlanePoint p);

  /// Valid grid nodes on the real axis lying in the given gap.
  std::vector<std::size_t> axis_nodes_in_gap(std::size_t gap) const;
  /// Valid grid nodes on the real axis (all gaps).
  std::vector<std::size_t> axis_nodes() const;

  /// Calls fn(neighbour) for every neighbour joined to node by a segment
  /// inside the domain.
  template <typename Fn>
  void for_each_neighbour(std::size_t node, Fn&& fn) const;

 private:
  bool edge_ok(PlanePoint a, PlanePoint b) const;

  const GapDomain* domain_;
  GridParams params_;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<char> valid_;
  std::vector<PlanePoint> attached_;
  std::vector<std::vector<std::uint32_t>> attached_links_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> reverse_links_;
};

namespace detail {
inline constexpr int kOffsets[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},   {1, -1},
                                        {-1, 1}, {-1, -1}, {1, 2}, {1, -2}, {-1, 2},  {-1, -2},
                                        {2, 1},  {2, -1}, {-2, 1}, {-2, -1}};
}

template <typename Fn>
void GradedGrid::for_each_neighbour(std::size_t node, Fn&& fn) const {
  const std::size_t n = grid_size();
  if (node >= n) {
    for (const auto v : attached_links_[node - n]) fn(static_cast<std::size_t>(v));
    return;
  }
  const auto ny = static_cast<long>(ys_.size());
  const auto nxl = static_cast<long>(xs_.size());
  const long i = static_cast<long>(node) / ny;
  const long j = static_cast<long>(node) % ny;
  const PlanePoint p{xs_[static_cast<std::size_t>(i)], ys_[static_cast<std::size_t>(j)]};
  for (int k = 0; k < params_.connectivity; ++k) {
    const long ii = i + detail::kOffsets[k][0];
    const long jj = j + detail::kOffsets[k][1];
    if (ii < 0 || jj < 0 || ii >= nxl || jj >= ny) continue;
    const auto v = static_cast<std::size_t>(ii * ny + jj);
    if (!valid_[v]) continue;
    const PlanePoint q{xs_[static_cast<std::size_t>(ii)], ys_[static_cast<std::size_t>(jj)]};
    if (!edge_ok(p, q)) continue;
    fn(v);
  }
  if (!reverse_links_.empty()) {
    const auto it = reverse_links_.find(static_cast<std::uint32_t>(node));
    if (it != reverse_links_.end()) {
      for (const auto v : it->second) fn(static_cast<std::size_t>(v));
    }
  }
}

/// Three-point Gauss-Legendre estimate of the metric length of a grid edge.
double edge_weight(const GapDomain& domain, PlanePoint a, PlanePoint b, MetricKind kind);

struct SearchResult {
  std::vector<double> dist;
  std::vector<std::int64_t> pred;
  /// First target settled, or -1 (field searches never stop early).
  std::int64_t reached = -1;
};

/// Multi-source Dijkstra. When targets is non-empty the search stops at
/// the first settled target.
SearchResult shortest_paths(const GradedGrid& grid, const GapDomain& domain, MetricKind kind,
                            std::span<const std::size_t> sources,
                            std::span<const std::size_t> targets = {});

/// Node chain from a settled node back to its source, source first.
std::vector<PlanePoint> trace_back(const GradedGrid& grid, const SearchResult& search,
                                   std::size_t node);

}  // namespace denjoy
