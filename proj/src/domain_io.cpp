#include "denjoy/domain_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "denjoy/errors.hpp"
#include "denjoy/format.hpp"

namespace denjoy {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ExtendedReal parse_endpoint(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "-inf") return ExtendedReal::neg_inf();
    if (s == "inf" || s == "+inf") return ExtendedReal::pos_inf();
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(d)) {
      throw Error(ErrorKind::InvalidSpec, "not a number: \"" + s + "\"");
    }
    return d;
  }
  throw Error(ErrorKind::InvalidSpec, "endpoint must be a number or a string");
}

double parse_number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorKind::InvalidSpec, std::string("generator is missing \"") + key + '"');
  const auto v = parse_endpoint(obj.at(key));
  if (!v.is_finite()) throw Error(ErrorKind::InvalidSpec, std::string("\"") + key + "\" must be finite");
  return v.value();
}

std::vector<std::pair<double, double>> parse_pairs(const json& arr, const char* what) {
  if (!arr.is_array()) throw Error(ErrorKind::InvalidSpec, std::string(what) + " must be an array of pairs");
  std::vector<std::pair<double, double>> out;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2) {
      throw Error(ErrorKind::InvalidSpec, std::string(what) + " entries must be [a, b] pairs");
    }
    const auto a = parse_endpoint(item[0]);
    const auto b = parse_endpoint(item[1]);
    if (!a.is_finite() || !b.is_finite()) {
      throw Error(ErrorKind::InvalidSpec, std::string(what) + " entries must be finite");
    }
    out.emplace_back(a.value(), b.value());
  }
  return out;
}

GeneratorSpec parse_generator(const json& g) {
  if (!g.is_object() || !g.contains("kind") || !g.at("kind").is_string()) {
    throw Error(ErrorKind::InvalidSpec, "generator needs a \"kind\"");
  }
  const auto kind = g.at("kind").get<std::string>();
  if (kind == "geometric") {
    return GeometricTail{parse_number(g, "a1"), parse_number(g, "q"), parse_number(g, "f")};
  }
  if (kind == "periodic") {
    PeriodicTail p;
    p.base = parse_pairs(g.value("E0", json::array()), "E0");
    p.period = parse_number(g, "t");
    const auto index = g.value("index", std::string("N"));
    if (index == "N") {
      p.index = IndexSet::Natural;
    } else if (index == "Z") {
      p.index = IndexSet::Integer;
    } else {
      throw Error(ErrorKind::InvalidSpec, "periodic index must be \"N\" or \"Z\"");
    }
    return p;
  }
  if (kind == "gfunction") {
    GFunctionTail t;
    t.start = parse_number(g, "start");
    t.step = parse_number(g, "step");
    t.table = parse_pairs(g.value("table", json::array()), "table");
    t.decay = g.contains("decay") ? parse_number(g, "decay") : 1.0;
    return t;
  }
  if (kind == "explicit") {
    return ExplicitTail{parse_tail_assumption(g.value("tail_assumption", std::string("none")))};
  }
  throw Error(ErrorKind::InvalidSpec, "unknown generator kind \"" + kind + '"');
}

ordered_json num(double v) { return fmt17(v); }

ordered_json endpoint_json(const ExtendedReal& v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.is_pos_inf()) return "inf";
  return num(v.value());
}

ordered_json pairs_json(const std::vector<std::pair<double, double>>& pairs) {
  auto arr = ordered_json::array();
  for (const auto& [a, b] : pairs) arr.push_back(ordered_json::array({num(a), num(b)}));
  return arr;
}

}  // namespace

std::string tail_assumption_name(TailAssumption a) {
  switch (a) {
    case TailAssumption::LimZero: return "lim-zero";
    case TailAssumption::LiminfPositive: return "liminf-positive";
    default: return "none";
  }
}

TailAssumption parse_tail_assumption(const std::string& name) {
  if (name == "none") return TailAssumption::None;
  if (name == "lim-zero") return TailAssumption::LimZero;
  if (name == "liminf-positive") return TailAssumption::LiminfPositive;
  throw Error(ErrorKind::InvalidSpec, "unknown tail assumption \"" + name + '"');
}

GapDomain parse_domain(const json& doc, std::optional<std::size_t> truncate_override) {
  if (!doc.is_object()) throw Error(ErrorKind::InvalidSpec, "domain spec must be a JSON object");
  std::vector<Gap> gaps;
  if (doc.contains("gaps")) {
    const auto& arr = doc.at("gaps");
    if (!arr.is_array()) throw Error(ErrorKind::InvalidSpec, "\"gaps\" must be an array");
    for (const auto& item : arr) {
      if (!item.is_array() || item.size() != 2) throw Error(ErrorKind::InvalidSpec, "gap entries must be [lo, hi]");
      gaps.push_back({parse_endpoint(item[0]), parse_endpoint(item[1])});
    }
  }
  std::optional<GeneratorSpec> tail;
  if (doc.contains("generator") && !doc.at("generator").is_null()) tail = parse_generator(doc.at("generator"));
  std::size_t truncate = 32;
  if (doc.contains("truncate")) {
    const auto& t = doc.at("truncate");
    if (!t.is_number_integer() || t.get<long long>() <= 0) {
      throw Error(ErrorKind::InvalidSpec, "\"truncate\" must be a positive integer");
    }
    truncate = t.get<std::size_t>();
  }
  if (truncate_override) truncate = *truncate_override;
  return GapDomain(std::move(gaps), std::move(tail), truncate);
}

GapDomain parse_domain_text(const std::string& text, std::optional<std::size_t> truncate_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("malformed JSON: ") + e.what());
  }
  return parse_domain(doc, truncate_override);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + path);
  return ss.str();
}

GapDomain load_domain(const std::string& path, std::optional<std::size_t> truncate_override) {
  return parse_domain_text(read_file(path), truncate_override);
}

ordered_json domain_to_json(const GapDomain& domain) {
  ordered_json doc;
  auto gaps = ordered_json::array();
  for (const auto& g : domain.explicit_gaps()) {
    gaps.push_back(ordered_json::array({endpoint_json(g.lo), endpoint_json(g.hi)}));
  }
  doc["gaps"] = gaps;
  if (const auto& tail = domain.tail()) {
    ordered_json g;
    if (const auto* geo = std::get_if<GeometricTail>(&*tail)) {
      g["kind"] = "geometric";
      g["a1"] = num(geo->a1);
      g["q"] = num(geo->q);
      g["f"] = num(geo->f);
    } else if (const auto* p = std::get_if<PeriodicTail>(&*tail)) {
      g["kind"] = "periodic";
      g["E0"] = pairs_json(p->base);
      g["t"] = num(p->period);
      g["index"] = p->index == IndexSet::Natural ? "N" : "Z";
    } else if (const auto* gf = std::get_if<GFunctionTail>(&*tail)) {
      g["kind"] = "gfunction";
      g["start"] = num(gf->start);
      g["step"] = num(gf->step);
      g["table"] = pairs_json(gf->table);
      g["decay"] = num(gf->decay);
    } else if (const auto* ex = std::get_if<ExplicitTail>(&*tail)) {
      g["kind"] = "explicit";
      g["tail_assumption"] = tail_assumption_name(ex->assumption);
    }
    doc["generator"] = g;
    doc["truncate"] = domain.truncation_count();
  }
  return doc;
}

}  // namespace denjoy
