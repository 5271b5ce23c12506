#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace denjoy {

enum class ErrorKind {
  OverlappingGaps,
  InvalidGap,
  EmptyBoundary,
  DisconnectedDomain,
  NonHyperbolicType,
  PointOnBoundary,
  PathTouchesBoundary,
  Disconnected,
  AdjacentGaps,
  InvalidIndex,
  InvalidArgument,
  InvalidSpec,
  Io,
};

/// Stable machine-readable name, used in CLI error JSON.
std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace denjoy
