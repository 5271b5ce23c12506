#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "denjoy/domain_io.hpp"
#include "denjoy/hyperbolicity.hpp"
#include "support.hpp"

using namespace denjoy;
using testing_support::domain;
using testing_support::gap;
using testing_support::kInf;

namespace {

GapDomain with_tail(std::vector<Gap> gaps, TailAssumption t) {
  return GapDomain(std::move(gaps), GeneratorSpec(ExplicitTail{t}));
}

GapDomain periodic_unit(std::size_t trunc = 32) {
  return GapDomain::periodic({{0.0, 0.0}}, 1.0, IndexSet::Natural, trunc);
}

SolverConfig quick(int depth = 5) {
  SolverConfig c;
  c.depth = depth;
  c.check_convergence = false;
  return c;
}

}  // namespace

TEST_CASE("classify: generator examples") {
  const auto geo = classify(GapDomain::geometric(2.0, 2.0, 0.5, 10));
  CHECK(geo.verdict == Verdict::Hyperbolic);
  CHECK(geo.rule == "Thm 3.6");
  CHECK(geo.witness["K"].get<double>() == doctest::Approx(1.5).epsilon(1e-15));

  const auto per = classify(periodic_unit());
  CHECK(per.verdict == Verdict::NotHyperbolic);
  CHECK(per.rule == "Cor 1.3");
  CHECK(per.witness["t"].get<double>() == 1.0);

  GFunctionTail g;
  g.table = {{1.0, 0.2}, {8.0, 0.05}};
  const auto gf = classify(GapDomain({gap(-kInf, 0.0)}, GeneratorSpec(g), 8));
  CHECK(gf.verdict == Verdict::NotHyperbolic);
  CHECK(gf.rule == "Thm 4.6");

  g.decay = 0.0;
  CHECK(classify(GapDomain({gap(-kInf, 0.0)}, GeneratorSpec(g), 8)).verdict == Verdict::Inconclusive);
}

TEST_CASE("classify: explicit lists") {
  std::vector<std::pair<double, double>> seven{{-kInf, 0.0}};
  for (int n = 1; n <= 6; ++n) seven.emplace_back(3.0 * n, 3.0 * n + 1.0);
  const auto v = classify(domain(seven));
  CHECK(v.verdict == Verdict::Hyperbolic);
  CHECK(v.rule == "Prop 3.5");
  CHECK(v.witness["N"].get<std::size_t>() == 7);
  CHECK(v.witness["c0"].is_null());

  // widths alternate between a_n and a_n / n
  std::vector<Gap> alt{gap(-kInf, 0.0)};
  double a = 1.0;
  for (int n = 1; n <= 12; ++n) {
    const double w = n % 2 ? a : a / n;
    alt.push_back(gap(a, a + w));
    a = 2.0 * (a + w);
  }
  const auto inc = classify(with_tail(alt, TailAssumption::None));
  CHECK(inc.verdict == Verdict::Inconclusive);
  CHECK(inc.rule == "none");
  CHECK(inc.witness["liminf_estimate"].get<double>() < 0.2);

  const auto lim0 = classify(with_tail(alt, TailAssumption::LimZero));
  CHECK(lim0.verdict == Verdict::NotHyperbolic);
  CHECK(lim0.rule == "Thm 1.1(2)");
  const auto pos = classify(with_tail(alt, TailAssumption::LiminfPositive));
  CHECK(pos.verdict == Verdict::Hyperbolic);
  CHECK(pos.rule == "Thm 1.1(1)");

  ClassifyOptions opt;
  opt.tail_assumption = TailAssumption::LimZero;
  CHECK(classify(with_tail(alt, TailAssumption::None), opt).verdict == Verdict::NotHyperbolic);
}

TEST_CASE("classify: c0 witness on request") {
  ClassifyOptions opt;
  opt.c0_solver = quick();
  const auto v = classify(domain({{-kInf, 0.0}, {1.0, 2.0}}), opt);
  CHECK(v.rule == "Prop 3.5");
  CHECK(v.witness["c0"].get<double>() > 0.0);
  CHECK(std::isfinite(v.witness["c0"].get<double>()));
}

TEST_CASE("classify: stripping part of the negative axis keeps NotHyperbolic") {
  // Omega minus F: the left ray is cut into pieces by a closed F in (-inf, 0].
  const std::vector<std::vector<Gap>> rays{
      {gap(-kInf, -3.0), gap(-3.0 + 1e-9, -1.0), gap(-0.5, 1.0)},
      {gap(-kInf, -10.0), gap(-2.0, 1.0)},
      {gap(-kInf, 0.0), gap(0.0 + 0.25, 1.0)},
  };
  for (const auto& r : rays) {
    const GapDomain d(r, GeneratorSpec(PeriodicTail{{{0.0, 0.0}}, 1.0, IndexSet::Natural}), 16);
    const auto v = classify(d);
    CHECK(v.verdict == Verdict::NotHyperbolic);
    CHECK(v.rule == "Thm 1.2 + Cor 1.3");
  }
  // no left ray at all: E contains (-inf, -5]
  std::vector<Gap> lim{gap(-5.0, -1.0), gap(-0.5, 0.0)};
  for (int n = 0; n < 10; ++n) lim.push_back(gap(std::ldexp(1.0, n), std::ldexp(1.0, n) * (1.0 + 1.0 / (n + 2))));
  const auto v = classify(with_tail(lim, TailAssumption::LimZero));
  CHECK(v.verdict == Verdict::NotHyperbolic);
  CHECK(v.rule == "Thm 1.2 + Thm 1.1(2)");
}

TEST_CASE("classify: scale and truncation invariance") {
  GFunctionTail g;
  g.table = {{1.0, 0.2}, {8.0, 0.05}};
  const std::vector<GapDomain> ds{
      GapDomain::geometric(2.0, 2.0, 0.5, 10),
      GapDomain::geometric(0.3, 3.5, 0.9, 5),
      periodic_unit(),
      GapDomain::periodic({{0.0, 0.3}, {0.5, 0.6}}, 2.0, IndexSet::Natural, 12),
      GapDomain::periodic({{0.0, 0.3}}, 1.0, IndexSet::Integer, 12),
      GapDomain({gap(-kInf, 0.0)}, GeneratorSpec(g), 8),
      domain({{-kInf, 0.0}, {1.0, 2.0}, {5.0, 9.0}}),
      with_tail({gap(-kInf, 0.0), gap(1.0, 3.0)}, TailAssumption::LiminfPositive),
  };
  for (const auto& d : ds) {
    const auto base = classify(d);
    for (const double t : {1e-6, 0.37, 3.0, 1e5}) {
      const auto s = classify(scale(d, t));
      CHECK(s.verdict == base.verdict);
      CHECK(s.rule == base.rule);
    }
    if (d.generated_count() > 0) {
      for (const std::size_t n : {2u, 40u, 200u}) {
        const auto w = classify(d.with_truncation(n));
        CHECK(w.verdict == base.verdict);
        CHECK(w.rule == base.rule);
      }
    }
  }
}

TEST_CASE("verdict json carries verdict, rule and witness") {
  const auto j = verdict_to_json(classify(periodic_unit()));
  CHECK(j["verdict"] == "NotHyperbolic");
  CHECK(j["rule"] == "Cor 1.3");
  CHECK(j.contains("witness"));
}

TEST_CASE("prefix liminf estimate") {
  std::vector<Gap> gaps{gap(-kInf, 0.0)};
  for (int n = 0; n < 8; ++n) gaps.push_back(gap(std::ldexp(1.0, n), 1.5 * std::ldexp(1.0, n)));
  CHECK(prefix_liminf_estimate(gaps) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::isnan(prefix_liminf_estimate({gap(-kInf, 0.0)})));
}

TEST_CASE("scan indices") {
  CHECK(scan_indices(20, Subsequence::Geometric) == std::vector<std::size_t>{1, 2, 4, 8, 16});
  CHECK(scan_indices(4, Subsequence::Linear) == std::vector<std::size_t>{1, 2, 3, 4});
}

TEST_CASE("scan: single far gap and thread independence") {
  const auto d = domain({{-kInf, 0.0}, {1000.0, 1001.0}});
  const std::vector<std::size_t> one{1};
  const auto r = real_axis_distance_scan(d, one, MetricKind::Quasihyperbolic, quick());
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].ok);
  CHECK(std::isfinite(r.rows[0].m));
  CHECK(r.rows[0].m > 0.0);
  CHECK(r.rows[0].m <= 0.5 * r.rows[0].length + 1e-9);

  const auto p = periodic_unit(12);
  const std::vector<std::size_t> idx{2, 4, 8, 40};
  const auto a = real_axis_distance_scan(p, idx, MetricKind::Quasihyperbolic, quick(), 20, 1);
  const auto b = real_axis_distance_scan(p, idx, MetricKind::Quasihyperbolic, quick(), 20, 3);
  CHECK(scan_to_json(a).dump() == scan_to_json(b).dump());
  CHECK(a.ok_count() == 3);
  CHECK_FALSE(a.rows[3].ok);
  CHECK(a.rows[3].error == "InvalidIndex");
}

TEST_CASE("scan: geometric lengths stay under the K bound") {
  const auto g = GapDomain::geometric(2.0, 2.0, 0.5, 6);
  const auto idx = scan_indices(6, Subsequence::Linear);
  const auto r = real_axis_distance_scan(g, idx, MetricKind::Quasihyperbolic, quick(), 20, 2);
  const double bound = 2 * std::numbers::pi * 2.5 / 0.5;
  for (const auto& row : r.rows) {
    CHECK(row.ok);
    CHECK(row.length <= bound * 1.05);
    CHECK(row.m <= 0.5 * row.length + 1e-9);
  }
}

TEST_CASE("thinness: two-gap domain converges") {
  const auto d = domain({{-kInf, 0.0}, {1.0, 2.0}});
  const auto a = bigon_thinness(d, 1, MetricKind::Quasihyperbolic, quick(6), 20);
  const auto b = bigon_thinness(d, 1, MetricKind::Quasihyperbolic, quick(7), 20);
  CHECK(std::isfinite(a.estimate));
  CHECK(a.estimate > 0.0);
  CHECK(std::abs(a.estimate - b.estimate) <= 0.1 * b.estimate);
  // the bigon is symmetric under conjugation
  CHECK(a.upper_to_lower == doctest::Approx(a.lower_to_upper).epsilon(0.05));
}

TEST_CASE("thinness: periodic estimates grow with n") {
  const auto p = periodic_unit(16);
  const auto a = bigon_thinness(p, 4, MetricKind::Quasihyperbolic, quick(), 16);
  const auto b = bigon_thinness(p, 8, MetricKind::Quasihyperbolic, quick(), 16);
  CHECK(b.estimate > a.estimate);
}

TEST_CASE("finite domain constants") {
  const auto two = finite_domain_constants(domain({{-kInf, 0.0}, {1.0, 2.0}}), MetricKind::Quasihyperbolic, quick());
  CHECK(two.gap_count == 2);
  REQUIRE(two.pair_distances.size() == 1);
  CHECK(two.c0 == two.pair_distances[0]);
  CHECK(two.c0 > 0.0);
  CHECK_FALSE(two.delta0.has_value());

  const auto far = finite_domain_constants(domain({{-kInf, 0.0}, {1.0, 2.0}, {1e6, 2e6}}),
                                           MetricKind::Quasihyperbolic, quick());
  REQUIRE(far.pair_distances.size() == 2);
  CHECK(far.worst_pair == 1);
  CHECK(far.pair_distances[1] > far.pair_distances[0]);

  const auto one = finite_domain_constants(domain({{0.0, 1.0}}), MetricKind::Quasihyperbolic, quick());
  CHECK(one.gap_count == 1);
  CHECK(one.c0 == 0.0);

  const auto hyp = finite_domain_constants(domain({{-kInf, 0.0}, {1.0, 2.0}}), MetricKind::HyperbolicUpper, quick());
  REQUIRE(hyp.delta0.has_value());
  CHECK(*hyp.delta0 == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-15));
  CHECK(*hyp.thinness_bound == doctest::Approx(2 * 2 * *hyp.delta0 + hyp.c0 / 2).epsilon(1e-15));

  CHECK_ERROR(finite_domain_constants(periodic_unit(), MetricKind::Quasihyperbolic, quick()), ErrorKind::InvalidArgument);
}

TEST_CASE("probe: periodic and geometric families") {
  const auto p = periodic_unit();
  const auto r = inner_uniformity_probe(p, 100);
  CHECK(r.s == 1.0);
  CHECK(r.a == 100.0);
  CHECK(r.b == 101.0);
  CHECK(r.g == 0.1);
  CHECK(r.c == 100.5);
  CHECK(r.a_lower == 10.0);
  CHECK(r.x == PlanePoint(100.5, 10.05));
  CHECK(r.y == std::conj(r.x));
  CHECK(r.truncation >= 100);

  double prev = 0.0;
  for (const std::size_t n : {2u, 5u, 20u, 80u, 320u}) {
    const auto q = inner_uniformity_probe(p, n);
    CHECK(q.a_lower == doctest::Approx(std::sqrt(q.a / q.s)).epsilon(1e-15));
    CHECK(q.a_lower == 1.0 / q.g);
    CHECK(q.a_lower > prev);
    prev = q.a_lower;
  }

  const auto g = GapDomain::geometric(2.0, 2.0, 0.5, 10);
  for (const std::size_t n : {1u, 4u, 10u, 30u}) {
    const auto q = inner_uniformity_probe(g, n);
    CHECK(q.a_lower == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }

  const auto first = inner_uniformity_probe(domain({{-kInf, 0.0}, {3.0, 7.0}}), 1);
  CHECK(first.s == 4.0);
  CHECK(probe_to_json(first)["s_n"].get<double>() == 4.0);
}

TEST_CASE("uniform curves") {
  const auto slit = testing_support::slit_plane();
  const PolylinePath seg{PlanePoint(0, 1), PlanePoint(0, 2)};
  const auto ok = is_uniform_curve(slit, seg, 2.0);
  CHECK(ok.pass);
  CHECK(ok.length_ratio == doctest::Approx(1.0));

  // length three times the chord
  const double h = std::sqrt(2.0);
  const PolylinePath detour{PlanePoint(0, 1), PlanePoint(h, 1.5), PlanePoint(0, 2)};
  CHECK(detour.euclidean_length() == doctest::Approx(3.0));
  const auto bad = is_uniform_curve(slit, detour, 2.0);
  CHECK_FALSE(bad.pass);
  CHECK(bad.length_ratio == doctest::Approx(3.0));

  // Arc of the circle |z| = sqrt(a b) through the gap (a, b); the ratio is
  // the same for every gap of a geometric family.
  const auto g = GapDomain::geometric(2.0, 2.0, 0.5, 10);
  std::vector<double> constants;
  for (const int n : {2, 4, 7}) {
    const auto gp = g.gaps()[n];
    const double r = std::sqrt(gp.lo.value() * gp.hi.value());
    std::vector<PlanePoint> arc;
    for (int k = 0; k <= 64; ++k) arc.push_back(std::polar(r, std::numbers::pi / 2 * (1.0 - k / 32.0)));
    const auto rep = is_uniform_curve(g, PolylinePath(arc), 20.0);
    CHECK(rep.pass);
    constants.push_back(rep.constant);
  }
  CHECK(constants[1] == doctest::Approx(constants[0]).epsilon(1e-9));
  CHECK(constants[2] == doctest::Approx(constants[0]).epsilon(1e-9));
}
