#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace denjoy {

/// 17 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string fmt17(double v);

/// Writes JSON with every floating-point number in 17-significant-digit
/// form (non-finite numbers become strings). Key order is insertion order.
void write_json(std::ostream& os, const nlohmann::ordered_json& value, int indent = 2);
std::string to_json_text(const nlohmann::ordered_json& value, int indent = 2);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string content_hash(const std::string& bytes);

}  // namespace denjoy
