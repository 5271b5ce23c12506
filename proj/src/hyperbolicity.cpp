#include "denjoy/hyperbolicity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "denjoy/domain_io.hpp"
#include "denjoy/errors.hpp"
#include "denjoy/grid.hpp"

namespace denjoy {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string truncation_note(const GapDomain& domain) {
  if (!domain.tail()) {
    return "finite gap list (" + std::to_string(domain.gaps().size()) + " gaps)";
  }
  return "generator rule; " + std::to_string(domain.generated_count()) +
         " generated gaps materialized for numerics";
}

ordered_json pairs_json(const std::vector<std::pair<double, double>>& pairs) {
  auto arr = ordered_json::array();
  for (const auto& [a, b] : pairs) arr.push_back(ordered_json::array({a, b}));
  return arr;
}

bool starts_with_left_ray(const GapDomain& domain) {
  const auto& e = domain.explicit_gaps();
  return std::any_of(e.begin(), e.end(), [](const Gap& g) { return g.lo.is_neg_inf(); });
}

CriterionVerdict finite_verdict(const GapDomain& domain, const ClassifyOptions& opt) {
  CriterionVerdict v;
  v.verdict = Verdict::Hyperbolic;
  v.rule = "Prop 3.5";
  v.witness["N"] = domain.gaps().size();
  if (opt.c0_solver) {
    const auto c = finite_domain_constants(domain, opt.c0_metric, *opt.c0_solver);
    v.witness["c0"] = c.c0;
    v.witness["c0_metric"] = metric_name(opt.c0_metric);
  } else {
    v.witness["c0"] = nullptr;
  }
  return v;
}

CriterionVerdict geometric_verdict(const GapDomain& domain, const GeometricTail& g) {
  CriterionVerdict v;
  const auto& ex = domain.explicit_gaps();
  const double k_gen = g.ratio();
  // Smallest b / a over all gaps to the right of 0; explicit gaps must sit
  // below the generated family.
  double k = k_gen;
  bool has_zero_ray = false;
  bool fits = true;
  for (const auto& gap : ex) {
    if (gap.lo.is_neg_inf()) {
      has_zero_ray = gap.hi == ExtendedReal(0.0);
      if (!has_zero_ray) fits = false;
      continue;
    }
    if (!gap.is_finite() || gap.lo.value() < 0.0 || gap.hi.value() > g.a1) {
      fits = false;
      continue;
    }
    if (gap.lo.value() > 0.0) k = std::min(k, gap.hi.value() / gap.lo.value());
  }
  if (has_zero_ray && fits && k > 1.0) {
    v.verdict = Verdict::Hyperbolic;
    v.rule = "Thm 3.6";
    v.witness["K"] = k;
    v.witness["bound"] = 2.0 * std::numbers::pi * (k + 1.0) / (k - 1.0);
    return v;
  }
  if (starts_with_left_ray(domain)) {
    v.verdict = Verdict::Hyperbolic;
    v.rule = "Thm 1.1(1)";
    v.witness["liminf"] = k_gen - 1.0;
    return v;
  }
  v.witness["K"] = k_gen;
  v.witness["reason"] = "no left ray in the gap list";
  return v;
}

CriterionVerdict periodic_verdict(const GapDomain& domain, const PeriodicTail& p) {
  CriterionVerdict v;
  v.witness["E0"] = pairs_json(p.base);
  v.witness["t"] = p.period;
  v.witness["index"] = p.index == IndexSet::Natural ? "N" : "Z";
  const auto& ex = domain.explicit_gaps();
  if (p.index == IndexSet::Integer) {
    v.verdict = Verdict::NotHyperbolic;
    v.rule = "Cor 1.3";
    return v;
  }
  const double first = p.first_boundary_point();
  const bool inside = std::all_of(ex.begin(), ex.end(), [&](const Gap& g) { return g.hi <= ExtendedReal(first); });
  if (!inside) {
    v.witness["reason"] = "explicit gaps reach into the periodic part";
    return v;
  }
  v.verdict = Verdict::NotHyperbolic;
  const bool plain = ex.size() == 1 && ex.front().lo.is_neg_inf() && ex.front().hi == ExtendedReal(first);
  v.rule = plain ? "Cor 1.3" : "Thm 1.2 + Cor 1.3";
  return v;
}

CriterionVerdict gfunction_verdict(const GapDomain& domain, const GFunctionTail& gf) {
  CriterionVerdict v;
  v.witness["G_table"] = pairs_json(gf.table);
  v.witness["decay"] = gf.decay;
  if (!gf.tends_to_zero()) {
    v.witness["reason"] = "G does not tend to 0";
    return v;
  }
  for (const auto& g : domain.explicit_gaps()) {
    if (!(g.lo > ExtendedReal(0.0))) continue;
    if (!g.hi.is_finite() || g.width() > g.lo.value() * gf(g.lo.value())) {
      v.witness["reason"] = "an explicit gap is wider than a G(a)";
      return v;
    }
  }
  v.verdict = Verdict::NotHyperbolic;
  v.rule = "Thm 4.6";
  return v;
}

CriterionVerdict explicit_verdict(const GapDomain& domain, TailAssumption assumption) {
  CriterionVerdict v;
  const double est = prefix_liminf_estimate(domain.gaps());
  v.witness["tail_assumption"] = tail_assumption_name(assumption);
  v.witness["liminf_estimate"] = est;
  const bool ray = starts_with_left_ray(domain);
  if (assumption == TailAssumption::LimZero) {
    v.verdict = Verdict::NotHyperbolic;
    v.rule = ray ? "Thm 1.1(2)" : "Thm 1.2 + Thm 1.1(2)";
  } else if (assumption == TailAssumption::LiminfPositive && ray) {
    v.verdict = Verdict::Hyperbolic;
    v.rule = "Thm 1.1(1)";
  }
  return v;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Hyperbolic: return "Hyperbolic";
    case Verdict::NotHyperbolic: return "NotHyperbolic";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double prefix_liminf_estimate(const std::vector<Gap>& gaps) {
  std::vector<double> ratios;
  for (const auto& g : gaps) {
    if (g.is_finite() && g.lo.value() > 0.0) ratios.push_back(g.width() / g.lo.value());
  }
  if (ratios.empty()) return kNaN;
  const std::size_t from = ratios.size() / 2;
  return *std::min_element(ratios.begin() + static_cast<long>(from), ratios.end());
}

CriterionVerdict classify(const GapDomain& domain, const ClassifyOptions& options) {
  CriterionVerdict v;
  const auto& tail = domain.tail();
  if (!tail) {
    v = finite_verdict(domain, options);
  } else if (const auto* ex = std::get_if<ExplicitTail>(&*tail)) {
    v = explicit_verdict(domain, options.tail_assumption.value_or(ex->assumption));
  } else if (const auto* g = std::get_if<GeometricTail>(&*tail)) {
    v = geometric_verdict(domain, *g);
  } else if (const auto* p = std::get_if<PeriodicTail>(&*tail)) {
    v = periodic_verdict(domain, *p);
  } else if (const auto* gf = std::get_if<GFunctionTail>(&*tail)) {
    v = gfunction_verdict(domain, *gf);
  }
  v.truncation_note = truncation_note(domain);
  return v;
}

ordered_json verdict_to_json(const CriterionVerdict& v) {
  ordered_json j;
  j["verdict"] = verdict_name(v.verdict);
  j["rule"] = v.rule;
  j["witness"] = v.witness;
  j["truncation"] = v.truncation_note;
  return j;
}

std::size_t ScanReport::ok_count() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ScanRow& r) { return r.ok; }));
}

std::vector<std::size_t> scan_indices(std::size_t max_n, Subsequence kind) {
  std::vector<std::size_t> out;
  if (kind == Subsequence::Linear) {
    for (std::size_t n = 1; n <= max_n; ++n) out.push_back(n);
  } else {
    for (std::size_t n = 1; n <= max_n; n *= 2) out.push_back(n);
  }
  return out;
}

namespace {

ScanRow scan_row(const GapDomain& domain, std::size_t n, MetricKind metric, const SolverConfig& config,
                 std::size_t samples) {
  ScanRow row;
  row.n = n;
  try {
    const auto geo = fundamental_geodesic(domain, n, metric, config);
    row.length = geo.length;
    row.converged = geo.converged;
    const auto pts = sample_by_arc_length(geo.path, samples);
    const auto dists = distance_to_real_many(domain, pts, metric, config);
    row.m = 0.0;
    for (std::size_t k = 0; k < dists.size(); ++k) {
      if (dists[k].length > row.m) {
        row.m = dists[k].length;
        row.argmax = pts[k];
      }
    }
    row.ok = true;
  } catch (const Error& e) {
    row.ok = false;
    row.error = std::string(e.name());
  }
  return row;
}

}  // namespace

ScanReport real_axis_distance_scan(const GapDomain& domain, std::span<const std::size_t> indices,
                                   MetricKind metric, const SolverConfig& config, std::size_t samples,
                                   unsigned threads) {
  config.check();
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "a scan needs at least 2 samples per geodesic");
  if (needs_hyperbolic_type(metric)) domain.require_hyperbolic_type();
  ScanReport report;
  report.metric = metric;
  report.config = config;
  report.samples = samples;
  report.truncation = domain.truncation_count();
  report.rows.resize(indices.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(indices.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < indices.size(); k = next++) {
      report.rows[k] = scan_row(domain, indices[k], metric, config, samples);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return report;
}

ordered_json scan_to_json(const ScanReport& report) {
  ordered_json j;
  j["metric"] = metric_name(report.metric);
  j["solver"] = report.config.fingerprint();
  j["samples_per_geodesic"] = report.samples;
  j["truncation"] = report.truncation;
  auto rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["n"] = r.n;
    row["ok"] = r.ok;
    if (r.ok) {
      row["length"] = r.length;
      row["m_n"] = r.m;
      row["argmax"] = ordered_json::array({r.argmax.real(), r.argmax.imag()});
      row["converged"] = r.converged ? ordered_json(*r.converged) : ordered_json(nullptr);
    } else {
      row["error"] = r.error;
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

namespace {

/// Largest grid distance from the `from` samples to the nearest `to`
/// sample, then tightened for the worst sample with a direct solve.
double one_sided(const GapDomain& domain, std::span<const PlanePoint> from, std::span<const PlanePoint> to,
                 MetricKind metric, const SolverConfig& config, PlanePoint& worst) {
  std::vector<PlanePoint> all(from.begin(), from.end());
  all.insert(all.end(), to.begin(), to.end());
  const Box box = query_box(domain, all, config.margin_factor, false);
  GridParams params;
  params.ratio = depth_ratio(config.grading_ratio, config.depth);
  params.connectivity = config.connectivity;
  GradedGrid grid(domain, box, params, {});
  std::vector<std::size_t> src;
  std::vector<std::size_t> dst;
  for (const auto& p : to) src.push_back(grid.attach(p));
  for (const auto& p : from) dst.push_back(grid.attach(p));
  const auto search = shortest_paths(grid, domain, metric, src);
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < dst.size(); ++k) {
    if (!std::isfinite(search.dist[dst[k]])) throw Error(ErrorKind::Disconnected, "bigon samples not connected");
    if (search.dist[dst[k]] > best) {
      best = search.dist[dst[k]];
      arg = k;
    }
  }
  worst = from[arg];
  if (best == 0.0) return 0.0;
  const auto chain = trace_back(grid, search, dst[arg]);
  SolverConfig direct = config;
  direct.half_plane_only = false;
  direct.check_convergence = false;
  const double refined = distance(domain, from[arg], chain.front(), metric, direct).length;
  return std::min(best, refined);
}

}  // namespace

ThinnessReport bigon_thinness(const GapDomain& domain, std::size_t n, MetricKind metric,
                              const SolverConfig& config, std::size_t samples) {
  config.check();
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "thinness needs at least 2 samples");
  if (needs_hyperbolic_type(metric)) domain.require_hyperbolic_type();
  SolverConfig cfg = config;
  cfg.check_convergence = false;
  const auto geo = fundamental_geodesic(domain, n, metric, cfg);
  const auto upper = sample_by_arc_length(geo.path, samples);
  const auto lower = sample_by_arc_length(reflect(geo.path), samples);
  ThinnessReport r;
  r.n = n;
  r.samples = samples;
  r.geodesic_length = geo.length;
  PlanePoint worst_up;
  PlanePoint worst_low;
  r.upper_to_lower = one_sided(domain, upper, lower, metric, cfg, worst_up);
  r.lower_to_upper = one_sided(domain, lower, upper, metric, cfg, worst_low);
  r.estimate = std::max(r.upper_to_lower, r.lower_to_upper);
  r.worst = r.upper_to_lower >= r.lower_to_upper ? worst_up : worst_low;
  return r;
}

FiniteDomainConstants finite_domain_constants(const GapDomain& domain, MetricKind metric,
                                              const SolverConfig& config) {
  if (domain.tail()) throw Error(ErrorKind::InvalidArgument, "constants need a finite gap list");
  const auto& gaps = domain.gaps();
  FiniteDomainConstants c;
  c.gap_count = gaps.size();
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    double d = 0.0;
    // Gaps sharing an endpoint are at distance 0.
    if (!(gaps[i].hi.is_finite() && gaps[i].hi == gaps[i + 1].lo)) {
      d = gap_distance(domain, i, i + 1, metric, config).length;
    }
    c.pair_distances.push_back(d);
    if (d > c.c0) {
      c.c0 = d;
      c.worst_pair = i;
    }
  }
  if (needs_hyperbolic_type(metric)) {
    c.delta0 = std::log1p(std::numbers::sqrt2);
    c.thinness_bound = 2.0 * static_cast<double>(c.gap_count) * *c.delta0 + c.c0 / 2.0;
  }
  return c;
}

ProbeReport inner_uniformity_probe(const GapDomain& domain, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidIndex, "probe index must be at least 1");
  GapDomain d = domain;
  if (n >= d.gaps().size()) {
    if (!d.tail()) throw Error(ErrorKind::InvalidIndex, "probe index beyond the gap list");
    d = d.with_truncation(d.truncation_count() + (n + 1 - d.gaps().size()));
    if (n >= d.gaps().size()) throw Error(ErrorKind::InvalidIndex, "generator does not reach the probe index");
  }
  const auto& gaps = d.gaps();
  const Gap& gn = gaps[n];
  if (!gn.is_finite() || !(gn.lo.value() > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "probe gap must be finite with a positive left end");
  }
  ProbeReport r;
  r.n = n;
  r.a = gn.lo.value();
  r.b = gn.hi.value();
  for (std::size_t m = 1; m <= n; ++m) {
    if (!gaps[m].is_finite()) throw Error(ErrorKind::InvalidArgument, "gaps before the probe index must be finite");
    r.s = std::max(r.s, gaps[m].width());
  }
  r.g = std::sqrt(r.s) / std::sqrt(r.a);
  r.c = 0.5 * (r.a + r.b);
  r.x = {r.c, r.c * r.g};
  r.y = {r.c, -r.c * r.g};
  r.a_lower = 1.0 / r.g;
  r.truncation = d.truncation_count();
  return r;
}

ordered_json probe_to_json(const ProbeReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["a_n"] = r.a;
  j["b_n"] = r.b;
  j["s_n"] = r.s;
  j["g_n"] = r.g;
  j["c_n"] = r.c;
  j["x_n"] = ordered_json::array({r.x.real(), r.x.imag()});
  j["y_n"] = ordered_json::array({r.y.real(), r.y.imag()});
  j["A_lower"] = r.a_lower;
  j["truncation"] = r.truncation;
  return j;
}

UniformityReport is_uniform_curve(const GapDomain& domain, const PolylinePath& path, double a,
                                  std::size_t samples) {
  if (!(a >= 1.0)) throw Error(ErrorKind::InvalidArgument, "uniformity constant must be at least 1");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
  UniformityReport r;
  r.constant = a;
  const double len = path.euclidean_length();
  const double chord = std::abs(path.back() - path.front());
  r.length_ratio = len == 0.0 ? 1.0 : (chord == 0.0 ? std::numeric_limits<double>::infinity() : len / chord);
  const auto pts = sample_by_arc_length(path, samples);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(pts.size() - 1);
    const double before = t * len;
    const double shorter = std::min(before, len - before);
    if (shorter == 0.0) continue;
    const double d = domain.boundary_distance(pts[k]);
    const double ratio = d == 0.0 ? std::numeric_limits<double>::infinity() : shorter / d;
    if (ratio > r.cigar_ratio) {
      r.cigar_ratio = ratio;
      r.worst_t = t;
      r.worst_point = pts[k];
    }
  }
  r.pass = r.length_ratio <= a && r.cigar_ratio <= a;
  return r;
}

}  // namespace denjoy
