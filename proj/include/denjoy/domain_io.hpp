#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "denjoy/domain.hpp"

namespace denjoy {

/// Domain spec document:
///   {"gaps": [[lo, hi], ...], "generator": {...}, "truncate": N}
/// Endpoints are numbers or decimal strings; "-inf"/"inf" mark rays.
/// Generators: {"kind": "geometric", "a1", "q", "f"},
///             {"kind": "periodic", "E0": [[p, q], ...], "t", "index": "N"|"Z"},
///             {"kind": "gfunction", "start", "step", "table": [[x, G], ...], "decay"},
///             {"kind": "explicit", "tail_assumption": "none"|"lim-zero"|"liminf-positive"}.
GapDomain parse_domain(const nlohmann::json& doc, std::optional<std::size_t> truncate_override = std::nullopt);
GapDomain parse_domain_text(const std::string& text,
                            std::optional<std::size_t> truncate_override = std::nullopt);
/// Reads and parses a spec file; missing or unreadable files raise Io.
GapDomain load_domain(const std::string& path, std::optional<std::size_t> truncate_override = std::nullopt);
std::string read_file(const std::string& path);

/// Normalized spec document; finite numbers are written as 17-digit strings
/// so that parse_domain(domain_to_json(d)) reproduces every endpoint bit
/// for bit.
nlohmann::ordered_json domain_to_json(const GapDomain& domain);

std::string tail_assumption_name(TailAssumption a);
TailAssumption parse_tail_assumption(const std::string& name);

}  // namespace denjoy
