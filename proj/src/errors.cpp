#include "denjoy/errors.hpp"

namespace denjoy {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OverlappingGaps: return "OverlappingGaps";
    case ErrorKind::InvalidGap: return "InvalidGap";
    case ErrorKind::EmptyBoundary: return "EmptyBoundary";
    case ErrorKind::DisconnectedDomain: return "DisconnectedDomain";
    case ErrorKind::NonHyperbolicType: return "NonHyperbolicType";
    case ErrorKind::PointOnBoundary: return "PointOnBoundary";
    case ErrorKind::PathTouchesBoundary: return "PathTouchesBoundary";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::AdjacentGaps: return "AdjacentGaps";
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace denjoy
