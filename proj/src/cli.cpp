#include "denjoy/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "denjoy/domain_io.hpp"
#include "denjoy/errors.hpp"
#include "denjoy/format.hpp"
#include "denjoy/hyperbolicity.hpp"
#include "denjoy/report.hpp"
#include "denjoy/solver.hpp"

namespace denjoy {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
  std::string spec;
  std::string metric = "qh";
  int depth = 6;
  double tol = kDefaultTol;
  std::size_t truncate = 0;  // 0 = take it from the spec
  std::string out;
  double grading = 1.25;
  int connectivity = 16;
  double margin = 2.0;
  int refine = 40;
  bool full_plane = false;
  bool no_check = false;
};

void add_common(CLI::App* sub, Options& o, bool solver) {
  sub->add_option("spec", o.spec, "domain spec (JSON)")->required();
  sub->add_option("--truncate", o.truncate, "number of generated gaps to materialize");
  sub->add_option("--out", o.out, "output directory");
  if (!solver) return;
  sub->add_option("--metric", o.metric, "qh | hyp-lower | hyp-upper");
  sub->add_option("--depth", o.depth, "grid depth");
  sub->add_option("--tol", o.tol, "relative quadrature tolerance");
  sub->add_option("--grading", o.grading, "grid grading ratio at depth 6");
  sub->add_option("--connectivity", o.connectivity, "8 or 16");
  sub->add_option("--margin", o.margin, "bounding-box margin factor");
  sub->add_option("--refine", o.refine, "refinement sweeps");
  sub->add_flag("--full-plane", o.full_plane, "search the whole plane instead of Im >= 0");
  sub->add_flag("--no-check", o.no_check, "skip the one-level-finer convergence check");
}

SolverConfig solver_config(const Options& o) {
  SolverConfig c;
  c.depth = o.depth;
  c.tol = o.tol;
  c.grading_ratio = o.grading;
  c.connectivity = o.connectivity;
  c.margin_factor = o.margin;
  c.refine_iters = o.refine;
  c.half_plane_only = !o.full_plane;
  c.check_convergence = !o.no_check;
  c.check();
  return c;
}

PlanePoint parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::InvalidArgument, "point must be written re,im: " + text);
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    const std::string rest = text.substr(comma + 1);
    std::size_t used2 = 0;
    const double im = std::stod(rest, &used2);
    if (used2 != rest.size()) throw std::invalid_argument("trailing");
    return {re, im};
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "point must be written re,im: " + text);
  }
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, std::string("bad ") + what + ": " + text);
    }
  }
  if (count != 0 && v.size() != count) throw Error(ErrorKind::InvalidArgument, std::string("bad ") + what + ": " + text);
  return v;
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DENJOY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

struct Run {
  Options opt;
  std::string command;
  std::string spec_text;
  GapDomain domain{std::vector<Gap>{{ExtendedReal::neg_inf(), 0.0}}};
  RunManifest manifest;
  std::string out_dir;

  void load() {
    spec_text = read_file(opt.spec);
    std::optional<std::size_t> trunc;
    if (opt.truncate > 0) trunc = opt.truncate;
    domain = parse_domain_text(spec_text, trunc);
  }

  void make_manifest(const ordered_json& config, const ordered_json& options, const std::string& out) {
    out_dir = out;
    manifest.command = command;
    manifest.spec_path = opt.spec;
    manifest.metric = opt.metric;
    manifest.config = config;
    manifest.options = options;
    manifest.out_dir = out;
    manifest.tool_version = kToolVersion;
    manifest.input_hash = content_hash(spec_text);
  }

  void write(const std::string& name, const std::string& body) const {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const auto path = fs::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
    f << body;
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
  }

  void write_manifest() const { write("manifest.json", to_json_text(manifest.to_json())); }

  std::string json_with_manifest(ordered_json body) const {
    ordered_json j;
    j["manifest"] = manifest.id();
    for (auto& [k, v] : body.items()) j[k] = v;
    return to_json_text(j);
  }
};

int cmd_validate(Run& run, std::ostream& out) {
  run.load();
  const auto& d = run.domain;
  out << "gaps " << d.gaps().size() << " (explicit " << d.explicit_gaps().size() << ", generated " << d.generated_count()
      << ")\n";
  out << "hyperbolic_type " << (d.is_hyperbolic_type() ? "yes" : "no") << "\n";
  out << "index,lo,hi\n";
  for (std::size_t i = 0; i < d.gaps().size(); ++i) {
    const auto& g = d.gaps()[i];
    out << i << ',' << fmt17(g.lo.as_double()) << ',' << fmt17(g.hi.as_double()) << '\n';
  }
  return kExitOk;
}

int cmd_density(Run& run, const std::string& window_text, const std::string& grid_text) {
  run.load();
  const auto w = parse_list(window_text, 4, "window");
  const auto g = parse_list(grid_text, 2, "grid");
  if (g[0] < 1 || g[1] < 1 || g[0] != std::floor(g[0]) || g[1] != std::floor(g[1])) {
    throw Error(ErrorKind::InvalidArgument, "grid sizes must be positive integers");
  }
  const SampleWindow win{w[0], w[1], w[2], w[3]};
  const auto samples = sample_densities(run.domain, win, static_cast<std::size_t>(g[0]), static_cast<std::size_t>(g[1]));
  ordered_json options;
  options["window"] = ordered_json::array({w[0], w[1], w[2], w[3]});
  options["grid"] = ordered_json::array({static_cast<std::size_t>(g[0]), static_cast<std::size_t>(g[1])});
  options["truncate"] = run.domain.truncation_count();
  run.make_manifest(ordered_json::object(), options, run.opt.out.empty() ? "." : run.opt.out);
  run.write_manifest();
  run.write("density.csv", density_csv(samples, run.manifest.id()));
  return kExitOk;
}

struct GeodesicQuery {
  std::optional<std::size_t> gap;
  std::vector<std::size_t> gaps;
  std::vector<std::string> points;
  std::string to_real;
};

int cmd_geodesic(Run& run, const GeodesicQuery& q) {
  run.load();
  const auto cfg = solver_config(run.opt);
  const auto metric = parse_metric(run.opt.metric);
  const int modes = (q.gap ? 1 : 0) + (q.gaps.empty() ? 0 : 1) + (q.points.empty() ? 0 : 1) + (q.to_real.empty() ? 0 : 1);
  if (modes != 1) throw Error(ErrorKind::InvalidArgument, "give exactly one of --gap, --gaps, --points, --to-real");
  ordered_json options;
  options["truncate"] = run.domain.truncation_count();
  GeodesicResult r;
  ordered_json query;
  if (q.gap) {
    options["gap"] = *q.gap;
    query["kind"] = "fundamental";
    query["n"] = *q.gap;
    r = fundamental_geodesic(run.domain, *q.gap, metric, cfg);
  } else if (!q.gaps.empty()) {
    options["gaps"] = q.gaps;
    query["kind"] = "gap_pair";
    query["gaps"] = q.gaps;
    r = gap_distance(run.domain, q.gaps[0], q.gaps[1], metric, cfg);
  } else if (!q.points.empty()) {
    const PlanePoint z = parse_point(q.points[0]);
    const PlanePoint w = parse_point(q.points[1]);
    options["points"] = q.points;
    query["kind"] = "points";
    query["z"] = ordered_json::array({z.real(), z.imag()});
    query["w"] = ordered_json::array({w.real(), w.imag()});
    r = distance(run.domain, z, w, metric, cfg);
  } else {
    const PlanePoint z = parse_point(q.to_real);
    options["to_real"] = q.to_real;
    query["kind"] = "to_real";
    query["z"] = ordered_json::array({z.real(), z.imag()});
    r = distance_to_real(run.domain, z, metric, cfg);
  }
  run.make_manifest(cfg.to_json(), options, run.opt.out.empty() ? "." : run.opt.out);
  const auto id = run.manifest.id();
  run.write_manifest();
  run.write("path.csv", path_csv(r.path, id));
  ordered_json body;
  body["query"] = query;
  body["result"] = geodesic_to_json(r, "path.csv");
  run.write("result.json", run.json_with_manifest(body));
  run.write("plot.svg", path_svg(run.domain, r.path, id));
  return kExitOk;
}

struct ScanOptions {
  std::size_t max_n = 0;
  std::string subseq = "geometric";
  std::string indices;
  std::size_t samples = 50;
};

int cmd_scan(Run& run, const ScanOptions& s) {
  run.load();
  const auto cfg = solver_config(run.opt);
  const auto metric = parse_metric(run.opt.metric);
  std::vector<std::size_t> idx;
  ordered_json options;
  options["truncate"] = run.domain.truncation_count();
  if (!s.indices.empty()) {
    for (const double v : parse_list(s.indices, 0, "indices")) {
      if (v < 1 || v != std::floor(v)) throw Error(ErrorKind::InvalidArgument, "indices must be positive integers");
      idx.push_back(static_cast<std::size_t>(v));
    }
    options["indices"] = idx;
  } else {
    if (s.subseq != "geometric" && s.subseq != "linear") {
      throw Error(ErrorKind::InvalidArgument, "subsequence must be geometric or linear");
    }
    const std::size_t max_n = s.max_n > 0 ? s.max_n : std::min<std::size_t>(32, run.domain.gaps().size() - 1);
    idx = scan_indices(max_n, s.subseq == "linear" ? Subsequence::Linear : Subsequence::Geometric);
    options["max_n"] = max_n;
    options["subseq"] = s.subseq;
  }
  if (idx.empty()) throw Error(ErrorKind::InvalidArgument, "no scan indices");
  options["samples"] = s.samples;
  const auto report = real_axis_distance_scan(run.domain, idx, metric, cfg, s.samples, thread_cap());
  run.make_manifest(cfg.to_json(), options, run.opt.out.empty() ? "." : run.opt.out);
  const auto id = run.manifest.id();
  run.write_manifest();
  run.write("scan.csv", scan_csv(report, id));
  run.write("scan.json", run.json_with_manifest(scan_to_json(report)));
  run.write("scan.svg", scan_svg(report, id));
  return report.ok_count() * 5 >= report.rows.size() * 4 ? kExitOk : kExitSolver;
}

int cmd_classify(Run& run, std::ostream& out, const std::string& tail, bool c0) {
  run.load();
  ClassifyOptions co;
  ordered_json options;
  if (!tail.empty()) {
    co.tail_assumption = parse_tail_assumption(tail);
    options["tail_assumption"] = tail;
  }
  ordered_json config = ordered_json::object();
  if (c0) {
    co.c0_solver = solver_config(run.opt);
    co.c0_metric = parse_metric(run.opt.metric);
    config = co.c0_solver->to_json();
    options["c0"] = true;
  }
  const auto v = classify(run.domain, co);
  run.make_manifest(config, options, run.opt.out);
  const auto text = run.json_with_manifest(verdict_to_json(v));
  out << text;
  if (!run.opt.out.empty()) {
    run.write_manifest();
    run.write("verdict.json", text);
  }
  switch (v.verdict) {
    case Verdict::Hyperbolic: return kExitOk;
    case Verdict::NotHyperbolic: return kExitNotHyperbolic;
    default: return kExitInconclusive;
  }
}

int cmd_probe(Run& run, std::ostream& out, std::size_t n) {
  run.load();
  const auto p = inner_uniformity_probe(run.domain, n);
  ordered_json options;
  options["n"] = n;
  run.make_manifest(ordered_json::object(), options, run.opt.out);
  const auto text = run.json_with_manifest(probe_to_json(p));
  out << text;
  if (!run.opt.out.empty()) {
    run.write_manifest();
    run.write("probe.json", text);
  }
  return kExitOk;
}

int cmd_thinness(Run& run, std::ostream& out, std::size_t n, std::size_t samples) {
  run.load();
  const auto cfg = solver_config(run.opt);
  const auto metric = parse_metric(run.opt.metric);
  const auto t = bigon_thinness(run.domain, n, metric, cfg, samples);
  ordered_json options;
  options["gap"] = n;
  options["samples"] = samples;
  run.make_manifest(cfg.to_json(), options, run.opt.out);
  ordered_json body;
  body["n"] = t.n;
  body["metric"] = metric_name(metric);
  body["geodesic_length"] = t.geodesic_length;
  body["upper_to_lower"] = t.upper_to_lower;
  body["lower_to_upper"] = t.lower_to_upper;
  body["estimate"] = t.estimate;
  body["worst"] = ordered_json::array({t.worst.real(), t.worst.imag()});
  body["samples"] = t.samples;
  const auto text = run.json_with_manifest(body);
  out << text;
  if (!run.opt.out.empty()) {
    run.write_manifest();
    run.write("thinness.json", text);
  }
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::InvalidSpec:
    case ErrorKind::OverlappingGaps:
    case ErrorKind::InvalidGap:
    case ErrorKind::EmptyBoundary:
    case ErrorKind::DisconnectedDomain:
    case ErrorKind::InvalidArgument: return kExitInvalid;
    default: return kExitSolver;
  }
}

void report_error(std::ostream& err, const std::string& name, const std::string& message) {
  ordered_json j;
  j["error"] = name;
  j["message"] = message;
  err << to_json_text(j, -1);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric geometry and Gromov hyperbolicity diagnostics for Denjoy domains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Run run;
  std::string window = "-1,1,0,1";
  std::string grid = "21,11";
  GeodesicQuery gq;
  ScanOptions so;
  std::string tail;
  bool c0 = false;
  std::size_t probe_n = 1;
  std::size_t thin_gap = 1;
  std::size_t thin_samples = 50;

  auto* validate = app.add_subcommand("validate", "check a domain spec and print its gap table");
  add_common(validate, run.opt, false);

  auto* density = app.add_subcommand("density", "sample delta, beta and the metric densities on a grid");
  add_common(density, run.opt, false);
  density->add_option("--window", window, "x0,x1,y0,y1");
  density->add_option("--grid", grid, "nx,ny");

  auto* geodesic = app.add_subcommand("geodesic", "approximate geodesic and distance");
  add_common(geodesic, run.opt, true);
  geodesic->add_option("--gap", gq.gap, "fundamental geodesic from gap 0 to gap n");
  geodesic->add_option("--gaps", gq.gaps, "distance between two gaps")->expected(2);
  geodesic->add_option("--points", gq.points, "two points re,im")->expected(2);
  geodesic->add_option("--to-real", gq.to_real, "distance from re,im to the real axis");

  auto* scan = app.add_subcommand("scan", "fundamental geodesics and their distance to the real axis");
  add_common(scan, run.opt, true);
  scan->add_option("--max-n", so.max_n, "largest gap index");
  scan->add_option("--subseq", so.subseq, "geometric | linear");
  scan->add_option("--indices", so.indices, "explicit comma-separated gap indices");
  scan->add_option("--samples", so.samples, "points per geodesic");

  auto* classify_cmd = app.add_subcommand("classify", "decide hyperbolicity from the gap structure");
  add_common(classify_cmd, run.opt, true);
  classify_cmd->add_option("--tail-assumption", tail, "none | lim-zero | liminf-positive");
  classify_cmd->add_flag("--c0", c0, "compute c0 for finite gap lists");

  auto* probe = app.add_subcommand("probe", "inner-uniformity probe at gap n");
  add_common(probe, run.opt, false);
  probe->add_option("--n", probe_n, "gap index")->required();

  auto* thinness = app.add_subcommand("thinness", "bigon thinness for gap n");
  add_common(thinness, run.opt, true);
  thinness->add_option("--gap", thin_gap, "gap index")->required();
  thinness->add_option("--samples", thin_samples, "points per geodesic");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return kExitInvalid;
  }

  try {
    if (validate->parsed()) {
      run.command = "validate";
      return cmd_validate(run, out);
    }
    if (density->parsed()) {
      run.command = "density";
      return cmd_density(run, window, grid);
    }
    if (geodesic->parsed()) {
      run.command = "geodesic";
      return cmd_geodesic(run, gq);
    }
    if (scan->parsed()) {
      run.command = "scan";
      return cmd_scan(run, so);
    }
    if (classify_cmd->parsed()) {
      run.command = "classify";
      return cmd_classify(run, out, tail, c0);
    }
    if (probe->parsed()) {
      run.command = "probe";
      return cmd_probe(run, out, probe_n);
    }
    if (thinness->parsed()) {
      run.command = "thinness";
      return cmd_thinness(run, out, thin_gap, thin_samples);
    }
  } catch (const Error& e) {
    report_error(err, std::string(e.name()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "Internal", e.what());
    return kExitSolver;
  }
  return kExitInvalid;
}

}  // namespace denjoy
