#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "denjoy/density.hpp"
#include "denjoy/domain.hpp"
#include "denjoy/solver.hpp"

namespace denjoy {

enum class Verdict { Hyperbolic, NotHyperbolic, Inconclusive };

std::string verdict_name(Verdict v);

struct CriterionVerdict {
  Verdict verdict = Verdict::Inconclusive;
  /// Name of the criterion that decided the verdict ("none" when nothing
  /// applies).
  std::string rule = "none";
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
  std::string truncation_note;
};

struct ClassifyOptions {
  /// Replaces the tail assumption stored in an explicit generator.
  std::optional<TailAssumption> tail_assumption;
  /// When set, finite domains also get c0 computed with this solver setup.
  std::optional<SolverConfig> c0_solver;
  MetricKind c0_metric = MetricKind::Quasihyperbolic;
};

/// Symbolic decision from the gap structure. Never guesses: asymptotic
/// hypotheses that a finite list cannot show give Inconclusive.
CriterionVerdict classify(const GapDomain& domain, const ClassifyOptions& options = {});

nlohmann::ordered_json verdict_to_json(const CriterionVerdict& v);

/// Smallest value of (b - a) / a over the last half of the finite gaps with
/// a > 0. NaN when there are none.
double prefix_liminf_estimate(const std::vector<Gap>& gaps);

struct ScanRow {
  std::size_t n = 0;
  bool ok = false;
  std::string error;  // error name when !ok
  double length = 0.0;
  /// Largest distance to the real axis over the samples of the
  /// fundamental geodesic.
  double m = 0.0;
  PlanePoint argmax{};
  std::optional<bool> converged;
};

struct ScanReport {
  MetricKind metric = MetricKind::Quasihyperbolic;
  SolverConfig config;
  std::size_t samples = 50;
  std::size_t truncation = 0;
  std::vector<ScanRow> rows;

  std::size_t ok_count() const;
};

enum class Subsequence { Geometric, Linear };

/// 1, 2, 4, ... <= max_n (geometric) or 1..max_n (linear).
std::vector<std::size_t> scan_indices(std::size_t max_n, Subsequence kind);

/// For every n: fundamental geodesic from gap 0 to gap n, then the largest
/// distance to the real axis over `samples` points spread along it. Rows
/// that fail keep their error name; the scan continues. Rows run on up to
/// `threads` threads; the report does not depend on the thread count.
ScanReport real_axis_distance_scan(const GapDomain& domain, std::span<const std::size_t> indices,
                                   MetricKind metric, const SolverConfig& config,
                                   std::size_t samples = 50, unsigned threads = 1);

nlohmann::ordered_json scan_to_json(const ScanReport& report);

struct ThinnessReport {
  std::size_t n = 0;
  double geodesic_length = 0.0;
  /// max over samples z of the upper geodesic of dist(z, lower geodesic).
  double upper_to_lower = 0.0;
  /// The same from the lower geodesic to the upper one.
  double lower_to_upper = 0.0;
  double estimate = 0.0;  // max of both
  PlanePoint worst{};
  std::size_t samples = 0;
};

/// Hausdorff-type width of the bigon formed by the upper fundamental
/// geodesic to gap n and its mirror image.
ThinnessReport bigon_thinness(const GapDomain& domain, std::size_t n, MetricKind metric,
                              const SolverConfig& config, std::size_t samples = 50);

struct FiniteDomainConstants {
  std::size_t gap_count = 0;
  /// Largest distance between consecutive gaps.
  double c0 = 0.0;
  /// Index i of the pair (i, i + 1) realizing c0.
  std::size_t worst_pair = 0;
  std::vector<double> pair_distances;
  /// For the hyperbolic kinds: log(1 + sqrt 2) and 2 N delta0 + c0 / 2.
  std::optional<double> delta0;
  std::optional<double> thinness_bound;
};

/// Constants governing hyperbolicity of a domain with finitely many gaps.
FiniteDomainConstants finite_domain_constants(const GapDomain& domain, MetricKind metric,
                                              const SolverConfig& config);

struct ProbeReport {
  std::size_t n = 0;
  double a = 0.0;
  double b = 0.0;
  /// Widest gap among gaps 1..n.
  double s = 0.0;
  double g = 0.0;  // sqrt(s / a)
  double c = 0.0;  // (a + b) / 2
  PlanePoint x{};  // c + i c g
  PlanePoint y{};  // c - i c g
  /// Any uniformity constant of the domain is at least 1 / g.
  double a_lower = 0.0;
  std::size_t truncation = 0;
};

/// Probe points above and below gap n whose inner distance forces the
/// uniformity constant to be at least 1 / g. Generator-backed domains are
/// materialized far enough to contain gap n.
ProbeReport inner_uniformity_probe(const GapDomain& domain, std::size_t n);

nlohmann::ordered_json probe_to_json(const ProbeReport& report);

struct UniformityReport {
  bool pass = false;
  double constant = 1.0;
  /// Euclidean length over endpoint distance.
  double length_ratio = 0.0;
  /// Largest min(length before t, length after t) / delta(t).
  double cigar_ratio = 0.0;
  double worst_t = 0.0;  // fraction of the Euclidean length
  PlanePoint worst_point{};
};

/// Checks the two uniform-curve conditions with Euclidean lengths at
/// `samples` points spread by arc length.
UniformityReport is_uniform_curve(const GapDomain& domain, const PolylinePath& path, double a,
                                  std::size_t samples = 201);

}  // namespace denjoy
