#include "denjoy/format.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace denjoy {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_value(std::ostream& os, const nlohmann::ordered_json& v, int indent, int level) {
  const auto pad = [&](int l) {
    if (indent > 0) os << '\n' << std::string(static_cast<std::size_t>(indent * l), ' ');
  };
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) os << ',';
        first = false;
        pad(level + 1);
        os << nlohmann::json(key).dump() << (indent > 0 ? ": " : ":");
        write_value(os, item, indent, level + 1);
      }
      pad(level);
      os << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      bool flat = v.size() <= 4;
      for (const auto& item : v) flat = flat && !item.is_structured();
      os << '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) os << (flat && indent > 0 ? ", " : ",");
        first = false;
        if (!flat) pad(level + 1);
        write_value(os, item, indent, level + 1);
      }
      if (!flat) pad(level);
      os << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      if (std::isfinite(d)) {
        os << fmt17(d);
      } else {
        os << '"' << fmt17(d) << '"';
      }
      return;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::ordered_json& value, int indent) {
  write_value(os, value, indent, 0);
  os << '\n';
}

std::string to_json_text(const nlohmann::ordered_json& value, int indent) {
  std::ostringstream os;
  write_json(os, value, indent);
  return os.str();
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace denjoy
