#include "denjoy/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "denjoy/format.hpp"

namespace denjoy {

using nlohmann::ordered_json;

ordered_json RunManifest::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["spec"] = spec_path;
  j["metric"] = metric;
  j["config"] = config;
  j["options"] = options;
  j["out"] = out_dir;
  j["tool_version"] = tool_version;
  j["input_hash"] = input_hash;
  return j;
}

std::string RunManifest::id() const { return content_hash(to_json_text(to_json())); }

ordered_json geodesic_to_json(const GeodesicResult& r, const std::string& path_file) {
  ordered_json j;
  j["metric"] = metric_name(r.metric);
  j["length"] = r.length;
  if (r.band) {
    j["band"] = ordered_json::array({r.band->lower, r.band->upper});
  }
  j["start"] = ordered_json::array({r.start().real(), r.start().imag()});
  j["end"] = ordered_json::array({r.end().real(), r.end().imag()});
  j["path_file"] = path_file;
  j["vertices"] = r.path.size();
  j["grid_nodes"] = r.grid_nodes;
  j["grid_length"] = r.grid_length;
  j["direct"] = r.direct;
  j["converged"] = r.converged ? ordered_json(*r.converged) : ordered_json(nullptr);
  j["check_length"] = r.check_length ? ordered_json(*r.check_length) : ordered_json(nullptr);
  j["refinement_sweeps"] = r.refinement_lengths.empty() ? 0 : r.refinement_lengths.size() - 1;
  j["truncation"] = r.truncation;
  return j;
}

std::string path_csv(const PolylinePath& path, const std::string& manifest_id) {
  std::ostringstream os;
  os << "# manifest " << manifest_id << "\n";
  os << "index,re,im\n";
  const auto& v = path.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) os << i << ',' << fmt17(v[i].real()) << ',' << fmt17(v[i].imag()) << '\n';
  return os.str();
}

std::string density_csv(const std::vector<DensitySample>& samples, const std::string& manifest_id) {
  std::ostringstream os;
  os << "# manifest " << manifest_id << "\n";
  os << "re,im,delta,beta,qh_density,bp_lower_density,upper_density\n";
  for (const auto& s : samples) {
    os << fmt17(s.re) << ',' << fmt17(s.im) << ',' << fmt17(s.delta) << ',' << fmt17(s.beta) << ','
       << fmt17(s.qh) << ',' << fmt17(s.bp_lower) << ',' << fmt17(s.upper) << '\n';
  }
  return os.str();
}

std::string scan_csv(const ScanReport& report, const std::string& manifest_id) {
  std::ostringstream os;
  os << "# manifest " << manifest_id << "\n";
  os << "n,length,m_n,status\n";
  for (const auto& r : report.rows) {
    if (r.ok) {
      os << r.n << ',' << fmt17(r.length) << ',' << fmt17(r.m) << ",ok\n";
    } else {
      os << r.n << ",nan,nan," << r.error << '\n';
    }
  }
  return os.str();
}

namespace {

struct View {
  double x0, x1, y0, y1;
  double width = 800.0;
  double height = 0.0;
  double sx(double x) const { return (x - x0) / (x1 - x0) * width; }
  double sy(double y) const { return (y1 - y) / (y1 - y0) * height; }
};

std::string header(double w, double h, const std::string& manifest_id) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt17(w) << "\" height=\"" << fmt17(h)
     << "\" viewBox=\"0 0 " << fmt17(w) << ' ' << fmt17(h) << "\">\n";
  os << "<!-- manifest " << manifest_id << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

void line(std::ostream& os, double x0, double y0, double x1, double y1, const char* colour, double w) {
  os << "<line x1=\"" << fmt17(x0) << "\" y1=\"" << fmt17(y0) << "\" x2=\"" << fmt17(x1) << "\" y2=\"" << fmt17(y1)
     << "\" stroke=\"" << colour << "\" stroke-width=\"" << fmt17(w) << "\"/>\n";
}

}  // namespace

std::string path_svg(const GapDomain& domain, const PolylinePath& path, const std::string& manifest_id) {
  double x0 = path.front().real();
  double x1 = x0;
  double y0 = path.front().imag();
  double y1 = y0;
  for (const auto& p : path.vertices()) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  y0 = std::min(y0, 0.0);
  y1 = std::max(y1, 0.0);
  const double span = std::max({x1 - x0, y1 - y0, 1e-9 * std::max(1.0, std::abs(x0))});
  View v{x0 - 0.1 * span, x1 + 0.1 * span, y0 - 0.1 * span, y1 + 0.1 * span};
  v.height = v.width * (v.y1 - v.y0) / (v.x1 - v.x0);
  std::ostringstream os;
  os << header(v.width, v.height, manifest_id);
  line(os, 0.0, v.sy(0.0), v.width, v.sy(0.0), "#bbbbbb", 1.0);
  for (const auto& c : domain.boundary()) {
    const double a = std::max(c.lo.as_double(), v.x0);
    const double b = std::min(c.hi.as_double(), v.x1);
    if (a > b) continue;
    if (a == b) {
      os << "<circle cx=\"" << fmt17(v.sx(a)) << "\" cy=\"" << fmt17(v.sy(0.0)) << "\" r=\"3\" fill=\"#c0392b\"/>\n";
    } else {
      line(os, v.sx(a), v.sy(0.0), v.sx(b), v.sy(0.0), "#c0392b", 3.0);
    }
  }
  os << "<polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& p = path.vertices()[i];
    os << (i ? " " : "") << fmt17(v.sx(p.real())) << ',' << fmt17(v.sy(p.imag()));
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::string scan_svg(const ScanReport& report, const std::string& manifest_id) {
  const double w = 640.0;
  const double h = 400.0;
  const double pad = 40.0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : report.rows) {
    if (r.ok) pts.emplace_back(std::log2(static_cast<double>(r.n)), r.m);
  }
  std::ostringstream os;
  os << header(w, h, manifest_id);
  line(os, pad, h - pad, w - pad, h - pad, "black", 1.0);
  line(os, pad, pad, pad, h - pad, "black", 1.0);
  if (!pts.empty()) {
    double lx0 = pts.front().first;
    double lx1 = lx0;
    double my = 0.0;
    for (const auto& [x, y] : pts) {
      lx0 = std::min(lx0, x);
      lx1 = std::max(lx1, x);
      my = std::max(my, y);
    }
    if (lx1 == lx0) lx1 = lx0 + 1.0;
    if (my == 0.0) my = 1.0;
    auto sx = [&](double x) { return pad + (x - lx0) / (lx1 - lx0) * (w - 2 * pad); };
    auto sy = [&](double y) { return h - pad - y / my * (h - 2 * pad); };
    os << "<polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << fmt17(sx(pts[i].first)) << ',' << fmt17(sy(pts[i].second));
    os << "\"/>\n";
    for (const auto& [x, y] : pts) {
      os << "<circle cx=\"" << fmt17(sx(x)) << "\" cy=\"" << fmt17(sy(y)) << "\" r=\"3\" fill=\"#1f4e99\"/>\n";
    }
  }
  os << "<text x=\"" << fmt17(w / 2) << "\" y=\"" << fmt17(h - 8) << "\" font-size=\"12\">log2 n</text>\n";
  os << "<text x=\"4\" y=\"" << fmt17(pad - 8) << "\" font-size=\"12\">m_n</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace denjoy
