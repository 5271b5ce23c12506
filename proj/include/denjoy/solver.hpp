#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "denjoy/density.hpp"
#include "denjoy/domain.hpp"
#include "denjoy/grid.hpp"

namespace denjoy {

struct SolverConfig {
  int depth = 6;
  double grading_ratio = 1.25;
  int connectivity = 16;
  bool half_plane_only = true;
  double margin_factor = 2.0;
  int refine_iters = 40;
  double tol = kDefaultTol;
  /// Also solve one depth finer and report whether the length moved by
  /// less than 1%.
  bool check_convergence = true;

  void check() const;
  nlohmann::ordered_json to_json() const;
  /// Short stable text form, used to tag reports.
  std::string fingerprint() const;
};

struct GeodesicResult {
  PolylinePath path;
  MetricKind metric = MetricKind::Quasihyperbolic;
  /// Metric length of path (an upper bound on the distance).
  double length = 0.0;
  /// Set for the hyperbolic kinds: [BP-lower, 2 x qh] of the same path.
  std::optional<LengthBand> band;
  std::size_t grid_nodes = 0;
  /// Grid shortest-path cost before refinement.
  double grid_length = 0.0;
  /// Empty when no convergence check was run.
  std::optional<bool> converged;
  /// Length found one depth finer, when checked.
  std::optional<double> check_length;
  /// Path length after each accepted refinement sweep, starting with the
  /// unrefined grid path. Non-increasing.
  std::vector<double> refinement_lengths;
  /// Gap truncation of the domain the query ran on.
  std::size_t truncation = 0;
  /// True when the query was answered by the direct segment.
  bool direct = false;

  PlanePoint start() const { return path.front(); }
  PlanePoint end() const { return path.back(); }
};

/// Metric distance between two points (upper bound: the length of the best
/// path found).
GeodesicResult distance(const GapDomain& domain, PlanePoint z, PlanePoint w, MetricKind metric,
                        const SolverConfig& config = {});

/// Shortest path in the closed upper half-plane between gap `from` and gap
/// `to`, both endpoints free to slide along their gaps.
GeodesicResult gap_distance(const GapDomain& domain, std::size_t from, std::size_t to,
                            MetricKind metric, const SolverConfig& config = {});

/// Shortest path from gap 0 to gap n in the closed upper half-plane.
GeodesicResult fundamental_geodesic(const GapDomain& domain, std::size_t n, MetricKind metric,
                                    const SolverConfig& config = {});

/// Distance from z to the real part of the domain (infimum over all gap
/// points).
GeodesicResult distance_to_real(const GapDomain& domain, PlanePoint z, MetricKind metric,
                                const SolverConfig& config = {});

/// distance_to_real for a batch of points sharing one grid and one search.
/// No convergence check is run for the individual points.
std::vector<GeodesicResult> distance_to_real_many(const GapDomain& domain,
                                                  std::span<const PlanePoint> points,
                                                  MetricKind metric, const SolverConfig& config = {});

/// Complex conjugate of every vertex.
PolylinePath reflect(const PolylinePath& path);

/// n points spread uniformly by Euclidean arc length, both ends included.
std::vector<PlanePoint> sample_by_arc_length(const PolylinePath& path, std::size_t n);

/// Box used for a two-point query (exposed for tests).
Box query_box(const GapDomain& domain, std::span<const PlanePoint> points, double margin_factor,
              bool half_plane);

}  // namespace denjoy
