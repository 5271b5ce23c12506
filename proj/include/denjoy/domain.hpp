#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "denjoy/extended_real.hpp"

namespace denjoy {

using PlanePoint = std::complex<double>;

/// Open interval (lo, hi) of the domain's trace on the real axis.
struct Gap {
  ExtendedReal lo;
  ExtendedReal hi;

  bool contains(double x) const { return lo < ExtendedReal(x) && ExtendedReal(x) < hi; }
  bool is_finite() const { return lo.is_finite() && hi.is_finite(); }
  /// Euclidean width; +inf for rays.
  double width() const;

  friend bool operator==(const Gap&, const Gap&) = default;
};

/// Closed connected piece of the boundary set E = R \ (union of gaps).
/// May be a single point (lo == hi) or a ray.
struct BoundaryComponent {
  ExtendedReal lo;
  ExtendedReal hi;
};

enum class IndexSet { Natural, Integer };
enum class TailAssumption { None, LimZero, LiminfPositive };

/// Gaps (a1 q^(n-1), a1 q^(n-1) K), n >= 1, with K = 1 + f (q - 1).
struct GeometricTail {
  double a1 = 1.0;
  double q = 2.0;
  double f = 0.5;

  double ratio() const { return 1.0 + f * (q - 1.0); }
};

/// Complement of the union of translates base + t n. For the natural
/// index set n runs over 1, 2, ...; the left ray in front of the first
/// translate is not generated.
struct PeriodicTail {
  std::vector<std::pair<double, double>> base;  // closed intervals in [0, t)
  double period = 1.0;
  IndexSet index = IndexSet::Natural;

  /// First boundary point of the generated part (natural index set).
  double first_boundary_point() const { return base.front().first + period; }
};

/// Gaps (a_n, a_n + a_n G(a_n)) with a_n = start + step (n - 1). G is
/// interpolated linearly in the table and decays like x^-decay beyond it.
struct GFunctionTail {
  double start = 1.0;
  double step = 1.0;
  std::vector<std::pair<double, double>> table;  // (x, G(x)), x increasing
  double decay = 1.0;

  double operator()(double x) const;
  bool tends_to_zero() const { return decay > 0.0 || table.back().second == 0.0; }
};

/// The listed gaps are a prefix of an infinite family whose continuation
/// is only described by a caller assumption.
struct ExplicitTail {
  TailAssumption assumption = TailAssumption::None;
};

using GeneratorSpec = std::variant<GeometricTail, PeriodicTail, GFunctionTail, ExplicitTail>;

/// Sorts gaps and checks the Denjoy-domain invariants. Touching gaps are
/// legal (the shared endpoint is a boundary point); overlapping interiors
/// are not.
std::vector<Gap> validate(std::vector<Gap> gaps);

/// A Denjoy domain described by its gaps on the real axis. Generator-backed
/// tails are materialized once at construction up to the truncation count;
/// everything beyond the last materialized gap belongs to the boundary.
class GapDomain {
 public:
  explicit GapDomain(std::vector<Gap> explicit_gaps,
                     std::optional<GeneratorSpec> tail = std::nullopt,
                     std::size_t truncation_count = 32);

  /// (-inf, 0) followed by the geometric family.
  static GapDomain geometric(double a1, double q, double f, std::size_t truncation_count);
  /// Periodic domain; for the natural index set the left ray in front of
  /// the first translate is added.
  static GapDomain periodic(std::vector<std::pair<double, double>> base, double period,
                            IndexSet index, std::size_t truncation_count);
  /// C minus a finite set of real points.
  static GapDomain punctured(std::vector<double> points);

  const std::vector<Gap>& explicit_gaps() const { return explicit_gaps_; }
  const std::optional<GeneratorSpec>& tail() const { return tail_; }
  std::size_t truncation_count() const { return truncation_; }
  std::size_t generated_count() const { return generated_; }

  /// All materialized gaps sorted by left endpoint.
  const std::vector<Gap>& gaps() const { return gaps_; }
  const std::vector<BoundaryComponent>& boundary() const { return boundary_; }
  /// Sorted finite gap endpoints and finite gap midpoints.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// Sorted distinct finite gap endpoints.
  const std::vector<double>& endpoints() const { return endpoints_; }

  /// Same description materialized with a different truncation count.
  GapDomain with_truncation(std::size_t truncation_count) const;

  bool is_hyperbolic_type() const;
  void require_hyperbolic_type() const;

  std::optional<std::size_t> gap_containing(double x) const;
  bool on_boundary(PlanePoint z) const;

  /// Distance to the boundary, 0 on the boundary. No allocation.
  double boundary_distance(PlanePoint z) const;

 private:
  void materialize();

  std::vector<Gap> explicit_gaps_;
  std::optional<GeneratorSpec> tail_;
  std::size_t truncation_ = 32;
  std::size_t generated_ = 0;

  std::vector<Gap> gaps_;
  std::vector<double> gap_lo_;
  std::vector<double> gap_hi_;
  std::vector<BoundaryComponent> boundary_;
  std::vector<double> comp_lo_;
  std::vector<double> comp_hi_;
  std::vector<double> breakpoints_;
  std::vector<double> endpoints_;

  friend double beta(const GapDomain&, PlanePoint);
};

struct BoundaryDistanceResult {
  double delta = 0.0;
  /// Boundary points realizing delta (one or two).
  std::vector<double> nearest;
};

BoundaryDistanceResult delta(const GapDomain& domain, PlanePoint z);

/// Beardon-Pommerenke log-ratio: inf |log(delta / |b - a|)| over nearest
/// boundary points a and boundary points b != a.
double beta(const GapDomain& domain, PlanePoint z);

/// Lower estimate of the uniform-perfectness constant: the largest R/r over
/// annuli centred at component endpoints that separate the boundary. The
/// optional window restricts centres to endpoints of gaps [first, last].
/// Returns +inf when an isolated boundary point is found, 1 when nothing
/// separates.
ExtendedReal uniform_perfectness_ratio(
    const GapDomain& domain,
    std::optional<std::pair<std::size_t, std::size_t>> window = std::nullopt);

GapDomain scale(const GapDomain& domain, double t);

}  // namespace denjoy
