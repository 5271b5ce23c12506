#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "denjoy/domain.hpp"
#include "denjoy/errors.hpp"

namespace testing_support {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Builds a gap from doubles; +-inf become the ray sentinels.
inline denjoy::Gap gap(double lo, double hi) {
  denjoy::Gap g;
  g.lo = std::isinf(lo) ? denjoy::ExtendedReal::neg_inf() : denjoy::ExtendedReal(lo);
  g.hi = std::isinf(hi) ? denjoy::ExtendedReal::pos_inf() : denjoy::ExtendedReal(hi);
  return g;
}

inline denjoy::GapDomain domain(std::vector<std::pair<double, double>> gaps) {
  std::vector<denjoy::Gap> out;
  for (const auto& [a, b] : gaps) out.push_back(gap(a, b));
  return denjoy::GapDomain(std::move(out));
}

/// C minus (-inf, 0].
inline denjoy::GapDomain slit_plane() { return domain({{0.0, kInf}}); }

/// C minus {0}.
inline denjoy::GapDomain punctured_plane() { return denjoy::GapDomain::punctured({0.0}); }

inline std::string describe(const denjoy::GapDomain& d) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& g : d.gaps()) os << '(' << g.lo.as_double() << ',' << g.hi.as_double() << ')';
  return os.str();
}

/// Kind of the denjoy::Error thrown by f, or nullopt.
template <typename F>
std::optional<denjoy::ErrorKind> error_of(F&& f) {
  try {
    f();
  } catch (const denjoy::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing_support

#define CHECK_ERROR(expr, kind) \
  CHECK(testing_support::error_of([&] { (void)(expr); }) == std::optional<denjoy::ErrorKind>(kind))
