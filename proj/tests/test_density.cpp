#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "denjoy/density.hpp"
#include "denjoy/errors.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace denjoy;
using testing_support::domain;
using testing_support::kInf;

namespace {

const double kLn2 = std::numbers::ln2;

/// Random polyline that stays in the open domain, built by a bounded
/// random walk that rejects steps crossing the boundary.
PolylinePath random_walk(const GapDomain& d, PlanePoint start, std::mt19937& rng, int steps, double step) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> len(0.2 * step, step);
  std::vector<PlanePoint> v{start};
  int guard = 0;
  while (static_cast<int>(v.size()) <= steps && guard++ < 50 * steps) {
    const PlanePoint next = v.back() + std::polar(len(rng), angle(rng));
    if (segment_in_domain(d, v.back(), next)) v.push_back(next);
  }
  return PolylinePath(v);
}

oracle::Real exact_two_slit_length(const PolylinePath& p) {
  oracle::Real total = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    total += oracle::segment_length(
        [](const oracle::Real& x, const oracle::Real& y) { return oracle::two_slit_density(x, y); },
        p.vertices()[i], p.vertices()[i + 1]);
  }
  return total;
}

}  // namespace

TEST_CASE("metric names round-trip") {
  for (const auto k : {MetricKind::Quasihyperbolic, MetricKind::HyperbolicLowerBP, MetricKind::HyperbolicUpper}) {
    CHECK(parse_metric(metric_name(k)) == k);
  }
  CHECK_ERROR(parse_metric("poincare"), ErrorKind::InvalidArgument);
}

TEST_CASE("path length examples") {
  const auto slit = testing_support::slit_plane();
  const PolylinePath seg{PlanePoint(0, 1), PlanePoint(0, 2)};
  CHECK(path_length(slit, seg, MetricKind::Quasihyperbolic) == doctest::Approx(kLn2).epsilon(1e-10));

  const auto d = domain({{-kInf, 0.0}, {1.0, 2.0}});
  const PolylinePath axis{PlanePoint(1.25, 0), PlanePoint(1.75, 0)};
  CHECK(path_length(d, axis, MetricKind::Quasihyperbolic) == doctest::Approx(2 * kLn2).epsilon(1e-10));
}

TEST_CASE("BP lower length of [i, 2i] on the slit plane") {
  // beta vanishes on the imaginary axis, so the density is 2^-1.5 / (k0 y).
  const oracle::Real want = log(oracle::Real(2)) / (2 * sqrt(oracle::Real(2)) * oracle::k0());
  const auto slit = testing_support::slit_plane();
  const PolylinePath seg{PlanePoint(0, 1), PlanePoint(0, 2)};
  const double got = path_length(slit, seg, MetricKind::HyperbolicLowerBP);
  CHECK(got == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
  CHECK(static_cast<double>(want) == doctest::Approx(0.042528).epsilon(1e-5));
}

TEST_CASE("band on the slit plane contains the exact Poincare length") {
  const auto slit = testing_support::slit_plane();
  const PolylinePath seg{PlanePoint(0, 1), PlanePoint(0, 2)};
  const auto band = hyperbolic_band(slit, seg);
  CHECK(band.lower == doctest::Approx(0.042528).epsilon(1e-5));
  CHECK(band.upper == doctest::Approx(2 * kLn2).epsilon(1e-10));
  const double exact = static_cast<double>(oracle::segment_length(
      [](const oracle::Real& x, const oracle::Real& y) { return oracle::slit_density(x, y); }, seg.front(),
      seg.back()));
  CHECK(exact == doctest::Approx(kLn2 / std::numbers::sqrt2).epsilon(1e-14));
  CHECK(band.lower < exact);
  CHECK(exact < band.upper);
}

TEST_CASE("BP lower density sits strictly below the exact slit-plane density") {
  const auto slit = testing_support::slit_plane();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> x(-4.0, 4.0);
  std::uniform_real_distribution<double> y(0.001, 4.0);
  for (int i = 0; i < 300; ++i) {
    const PlanePoint z(x(rng), y(rng));
    const double exact = static_cast<double>(oracle::slit_density(z.real(), z.imag()));
    CHECK(density(slit, z, MetricKind::HyperbolicLowerBP) < exact);
    CHECK(exact <= density(slit, z, MetricKind::HyperbolicUpper));
  }
}

TEST_CASE("stated upper constant fails on the slit plane") {
  // lambda(iy) delta (k0 + beta) = k0 / sqrt 2 there, far above pi / 4, so the
  // as-printed upper density undercuts the true one.
  const auto slit = testing_support::slit_plane();
  for (const double y : {0.1, 1.0, 10.0}) {
    const double exact = static_cast<double>(oracle::slit_density(0.0, y));
    CHECK(stated_bp_upper_density(slit, PlanePoint(0, y)) < exact);
    CHECK(exact * y * kBpK0 == doctest::Approx(kBpK0 / std::numbers::sqrt2).epsilon(1e-14));
  }
}

TEST_CASE("lemma bound values") {
  CHECK(qh_length_lower_bound(0.0, 1.0) == 0.0);
  CHECK(qh_length_lower_bound(2.5, 2.5) == doctest::Approx(kLn2).epsilon(1e-15));
  CHECK(hyperbolic_length_lower_bound(0.0, 1.0) == 0.0);
  const oracle::Real want = log(1 + log(oracle::Real(2)) / oracle::k0()) / (2 * sqrt(oracle::Real(2)));
  CHECK(hyperbolic_length_lower_bound(3.0, 3.0) == doctest::Approx(static_cast<double>(want)).epsilon(1e-14));
  CHECK(static_cast<double>(want) == doctest::Approx(0.040157).epsilon(1e-5));
  for (const double s : {0.01, 1.0, 50.0}) {
    CHECK(hyperbolic_length_lower_bound(2 * s, 1.0) > hyperbolic_length_lower_bound(s, 1.0));
    CHECK(qh_length_lower_bound(2 * s, 1.0) > qh_length_lower_bound(s, 1.0));
  }
  CHECK_ERROR(qh_length_lower_bound(1.0, 0.0), ErrorKind::InvalidArgument);
  CHECK_ERROR(hyperbolic_length_lower_bound(-1.0, 1.0), ErrorKind::InvalidArgument);
}

TEST_CASE("radial segments attain the quasihyperbolic lower bound") {
  const auto p = testing_support::punctured_plane();
  for (const double a : {0.1, 1.0, 7.0}) {
    for (const double s : {0.5, 3.0, 100.0}) {
      const PolylinePath seg{PlanePoint(a, 0), PlanePoint(a + s, 0)};
      CHECK(path_length(p, seg, MetricKind::Quasihyperbolic) ==
            doctest::Approx(qh_length_lower_bound(s, a)).epsilon(1e-9));
    }
  }
}

TEST_CASE("random polylines respect the quasihyperbolic lower bound") {
  std::mt19937 rng(314);
  const std::vector<GapDomain> domains{
      testing_support::punctured_plane(), testing_support::slit_plane(),
      domain({{-kInf, 0.0}, {1.0, 2.0}}), GapDomain::geometric(1.0, 2.0, 0.5, 6)};
  std::uniform_real_distribution<double> x(-2.0, 6.0);
  std::uniform_real_distribution<double> y(0.05, 2.0);
  for (int k = 0; k < 100; ++k) {
    const auto& d = domains[k % domains.size()];
    const auto path = random_walk(d, PlanePoint(x(rng), y(rng)), rng, 6, 0.8);
    if (path.size() < 2) continue;
    const double len = path_length(d, path, MetricKind::Quasihyperbolic);
    const double bound = qh_length_lower_bound(path.euclidean_length(), delta(d, path.front()).delta);
    CHECK(len >= bound - 1e-6);
  }
}

TEST_CASE("exact hyperbolic lengths respect the gap-width lower bound") {
  // C minus ((-inf,0] u [1,inf)) has the single finite gap (0,1), r = 1,
  // and an exact density from the slit plane.
  const auto d = domain({{0.0, 1.0}});
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> start(0.05, 0.95);
  for (int k = 0; k < 30; ++k) {
    const auto path = random_walk(d, PlanePoint(start(rng), 0), rng, 4, 0.6);
    if (path.size() < 2) continue;
    const double exact = static_cast<double>(exact_two_slit_length(path));
    CHECK(exact >= hyperbolic_length_lower_bound(path.euclidean_length(), 1.0));
  }
  for (const double s : {0.01, 0.5, 4.0}) {
    const PolylinePath up{PlanePoint(0.5, 0), PlanePoint(0.5, s)};
    CHECK(static_cast<double>(exact_two_slit_length(up)) >= hyperbolic_length_lower_bound(s, 1.0));
  }
}

TEST_CASE("band identities and additivity") {
  std::mt19937 rng(42);
  const std::vector<GapDomain> domains{testing_support::slit_plane(), domain({{-kInf, 0.0}, {1.0, 2.0}}),
                                       GapDomain::periodic({{0.0, 0.0}}, 1.0, IndexSet::Natural, 8)};
  std::uniform_real_distribution<double> x(-1.0, 4.0);
  std::uniform_real_distribution<double> y(0.05, 2.0);
  const double tol = kDefaultTol;
  for (int k = 0; k < 30; ++k) {
    const auto& d = domains[k % domains.size()];
    const auto p = random_walk(d, PlanePoint(x(rng), y(rng)), rng, 4, 0.7);
    const auto q = random_walk(d, p.back(), rng, 3, 0.7);
    if (p.size() < 2 || q.size() < 2) continue;
    const double qh = path_length(d, p, MetricKind::Quasihyperbolic);
    const auto band = hyperbolic_band(d, p);
    CHECK(band.upper == doctest::Approx(2 * qh).epsilon(tol));
    CHECK(band.lower < band.upper);
    const double joined = path_length(d, p.joined(q), MetricKind::Quasihyperbolic);
    const double sum = qh + path_length(d, q, MetricKind::Quasihyperbolic);
    CHECK(std::abs(joined - sum) <= 2 * tol * sum);
    CHECK(path_length(d, p.reversed(), MetricKind::Quasihyperbolic) == doctest::Approx(qh).epsilon(tol));
  }
}

TEST_CASE("density ordering at random points") {
  std::mt19937 rng(8);
  const auto d = domain({{-kInf, -2.0}, {-1.0, 0.0}, {0.25, 3.0}});
  std::uniform_real_distribution<double> x(-4.0, 5.0);
  std::uniform_real_distribution<double> y(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const PlanePoint z(x(rng), y(rng));
    if (d.on_boundary(z)) continue;
    const double lo = density(d, z, MetricKind::HyperbolicLowerBP);
    const double qh = density(d, z, MetricKind::Quasihyperbolic);
    CHECK(lo < density(d, z, MetricKind::HyperbolicUpper));
    CHECK(density(d, z, MetricKind::HyperbolicUpper) == 2 * qh);
  }
}

TEST_CASE("quasihyperbolic length is scale invariant and monotone in the domain") {
  const auto d = domain({{-kInf, 0.0}, {1.0, 2.0}, {3.0, kInf}});
  const auto bigger = domain({{-kInf, 0.0}, {1.0, kInf}});
  std::mt19937 rng(17);
  for (int k = 0; k < 20; ++k) {
    const auto p = random_walk(d, PlanePoint(1.5, 0.3), rng, 4, 0.6);
    if (p.size() < 2) continue;
    const double len = path_length(d, p, MetricKind::Quasihyperbolic);
    for (const double t : {0.01, 3.0, 1e4}) {
      std::vector<PlanePoint> v;
      for (const auto& z : p.vertices()) v.push_back(t * z);
      CHECK(path_length(scale(d, t), PolylinePath(v), MetricKind::Quasihyperbolic) ==
            doctest::Approx(len).epsilon(kDefaultTol));
    }
    CHECK(len >= path_length(bigger, p, MetricKind::Quasihyperbolic) * (1 - kDefaultTol));
  }
}

TEST_CASE("path length errors") {
  const auto d = domain({{-kInf, 0.0}, {1.0, 2.0}});
  const PolylinePath through{PlanePoint(0.5, -1), PlanePoint(0.5, 1)};
  CHECK_FALSE(segment_in_domain(d, through.front(), through.back()));
  CHECK_ERROR(path_length(d, through, MetricKind::Quasihyperbolic), ErrorKind::PathTouchesBoundary);
  const PolylinePath ok{PlanePoint(0, 1), PlanePoint(1, 1)};
  CHECK_ERROR(path_length(d, ok, MetricKind::Quasihyperbolic, 1e-13), ErrorKind::InvalidArgument);
  CHECK_ERROR(path_length(d, ok, MetricKind::Quasihyperbolic, 0.5), ErrorKind::InvalidArgument);
  CHECK_ERROR(path_length(testing_support::punctured_plane(), ok, MetricKind::HyperbolicLowerBP),
              ErrorKind::NonHyperbolicType);
  CHECK_ERROR(PolylinePath({PlanePoint(0, 1), PlanePoint(0, 1)}), ErrorKind::InvalidArgument);
}

TEST_CASE("density samples") {
  const auto d = domain({{-kInf, 0.0}, {1.0, 2.0}});
  const auto s = sample_densities(d, SampleWindow{0.0, 1.0, 0.0, 1.0}, 3, 2);
  REQUIRE(s.size() == 6);
  CHECK(s[0].re == 0.0);
  CHECK(s[0].im == 0.0);
  CHECK(s[0].delta == 0.0);
  CHECK(std::isnan(s[0].qh));
  CHECK(s[2].re == 1.0);
  CHECK(s[5].im == 1.0);
  CHECK(s[4].delta == 1.0);
  CHECK(s[4].qh == 1.0);
  CHECK(s[4].upper == 2.0);
  const auto p = sample_densities(testing_support::punctured_plane(), SampleWindow{}, 2, 2);
  CHECK(std::isnan(p.back().beta));
  CHECK(std::isnan(p.back().bp_lower));
  CHECK(std::isfinite(p.back().qh));
}
