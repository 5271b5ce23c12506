#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "denjoy/domain_io.hpp"
#include "support.hpp"

using namespace denjoy;
using testing_support::describe;
using testing_support::kInf;

TEST_CASE("spec parsing") {
  const auto d = parse_domain_text(R"({"gaps": [["-inf", "0"], [1, 2.5], ["3", "inf"]]})");
  CHECK(describe(d) == "(-inf,0)(1,2.5)(3,inf)");

  const auto g = parse_domain_text(
      R"({"gaps": [["-inf", 0]], "generator": {"kind": "geometric", "a1": 2, "q": 2, "f": 0.5}, "truncate": 4})");
  CHECK(describe(g) == "(-inf,0)(2,3)(4,6)(8,12)(16,24)");
  CHECK(parse_domain_text(R"({"gaps": [["-inf", 0]], "generator": {"kind": "geometric", "a1": 2, "q": 2, "f": 0.5}})", 2)
            .gaps()
            .size() == 3);

  const auto p = parse_domain_text(
      R"({"gaps": [["-inf", 1]], "generator": {"kind": "periodic", "E0": [[0, 0]], "t": 1, "index": "N"}, "truncate": 3})");
  CHECK(describe(p) == "(-inf,1)(1,2)(2,3)(3,4)");
}

TEST_CASE("spec errors") {
  CHECK_ERROR(parse_domain_text("{"), ErrorKind::InvalidSpec);
  CHECK_ERROR(parse_domain_text(R"({"gaps": 3})"), ErrorKind::InvalidSpec);
  CHECK_ERROR(parse_domain_text(R"({"gaps": [[1]]})"), ErrorKind::InvalidSpec);
  CHECK_ERROR(parse_domain_text(R"({"gaps": [["one", 2]]})"), ErrorKind::InvalidSpec);
  CHECK_ERROR(parse_domain_text(R"({"gaps": [[0, 2], [1, 3]]})"), ErrorKind::OverlappingGaps);
  CHECK_ERROR(parse_domain_text(R"({"gaps": [[2, 1]]})"), ErrorKind::InvalidGap);
  CHECK_ERROR(parse_domain_text(R"({"gaps": [[0, 1]], "generator": {"kind": "spiral"}})"), ErrorKind::InvalidSpec);
  CHECK_ERROR(load_domain("/nonexistent/spec.json"), ErrorKind::Io);
}

TEST_CASE("round trip is bit exact") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> step(-12.0, 12.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<double, double>> gaps;
    double x = std::ldexp(1.0, -20) * (1 + trial);
    if (trial % 2) gaps.emplace_back(-kInf, 0.0);
    for (int k = 0; k < 5; ++k) {
      const double lo = x + std::exp(step(rng) * 0.5);
      const double hi = lo + std::exp(step(rng) * 0.5);
      gaps.emplace_back(lo, hi);
      x = hi;
    }
    if (trial % 3 == 0) gaps.emplace_back(x + 1.0 / 3.0, kInf);
    const auto d = testing_support::domain(gaps);
    const auto back = parse_domain(domain_to_json(d));
    REQUIRE(back.gaps().size() == d.gaps().size());
    for (std::size_t i = 0; i < d.gaps().size(); ++i) CHECK(back.gaps()[i] == d.gaps()[i]);
    CHECK(domain_to_json(back).dump() == domain_to_json(d).dump());
  }
}

TEST_CASE("generator specs round trip") {
  for (const auto& d : {GapDomain::geometric(0.1, 3.0, 0.7, 5), GapDomain::periodic({{0.0, 0.25}}, 0.5, IndexSet::Natural, 6), GapDomain::periodic({{0.0, 0.025}}, 0.1, IndexSet::Natural, 6)}) {
    const auto back = parse_domain(domain_to_json(d));
    CHECK(describe(back) == describe(d));
    CHECK(domain_to_json(back).dump() == domain_to_json(d).dump());
  }
}

TEST_CASE("tail assumption names") {
  for (const auto a : {TailAssumption::None, TailAssumption::LimZero, TailAssumption::LiminfPositive}) {
    CHECK(parse_tail_assumption(tail_assumption_name(a)) == a);
  }
  CHECK_ERROR(parse_tail_assumption("maybe"), ErrorKind::InvalidSpec);
}
