#include "cusplab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "cusplab/boundary_proxy.hpp"
#include "cusplab/coarse_geometry.hpp"
#include "cusplab/cusped_space.hpp"
#include "cusplab/hyperbolicity.hpp"
#include "cusplab/morphisms.hpp"
#include "cusplab/parallel.hpp"
#include "cusplab/random.hpp"

namespace cusplab {

namespace {

struct KindName {
  ExperimentKind kind;
  char const* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::delta, "delta"},
    {ExperimentKind::cross_ratio, "cross-ratio"},
    {ExperimentKind::one_of_three, "one-of-three"},
    {ExperimentKind::relative_cr, "relative-cr"},
    {ExperimentKind::exit_sets, "exit-sets"},
    {ExperimentKind::qm, "qm"},
    {ExperimentKind::relative_qm, "relative-qm"},
    {ExperimentKind::exit_distortion, "exit-distortion"},
    {ExperimentKind::reconstruct, "reconstruct"},
    {ExperimentKind::stability, "stability"},
    {ExperimentKind::probes, "probes"},
};

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (auto const& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string const& s) {
  for (auto const& k : kKinds) {
    if (s == k.name) return k.kind;
  }
  fail(ErrorKind::parse, "unknown experiment kind " + s);
}

ExperimentConfig ExperimentConfig::from_json(nlohmann::json const& j) {
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    if (!j.contains("presentation")) fail(ErrorKind::parse, "config needs a presentation");
    c.presentation = j.at("presentation");
    c.R = j.value("R", c.R);
    c.D = j.value("D", c.D);
    c.seed = j.value("seed", c.seed);
    c.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    c.samples = j.value("samples", c.samples);
    c.min_separation = j.value("min_separation", c.min_separation);
    c.threshold = j.value("threshold", c.threshold);
    c.delta_hat = j.value("delta_hat", c.delta_hat);
    c.delta_samples = j.value("delta_samples", c.delta_samples);
    if (j.contains("map")) c.map = j.at("map");
    if (j.contains("inverse_map")) c.inverse_map = j.at("inverse_map");
    c.mode = j.value("mode", c.mode);
    c.coverage_cap = j.value("coverage_cap", c.coverage_cap);
    c.interior_radius = j.value("interior_radius", c.interior_radius);
    if (j.contains("stability_kind")) {
      c.stability_kind = parse_experiment_kind(j.at("stability_kind").get<std::string>());
    }
    if (j.contains("scales")) {
      for (auto const& s : j.at("scales")) {
        c.scales.emplace_back(s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>());
      }
    }
    c.max_flag_fraction = j.value("max_flag_fraction", c.max_flag_fraction);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.write_files = j.value("write_files", c.write_files);
    c.jobs = j.value("jobs", c.jobs);
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, std::string("config: ") + e.what());
  }
  if (c.samples == 0) fail(ErrorKind::parse, "config: samples must be at least 1");
  if (c.R < 1) fail(ErrorKind::parse, "config: R must be at least 1");
  return c;
}

ExperimentConfig ExperimentConfig::load(std::string const& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
  // Relative file references resolve against the config's directory.
  auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](char const* key) {
    if (j.contains(key) && j[key].is_string()) {
      auto s = j[key].get<std::string>();
      std::filesystem::path p(s);
      if (p.is_relative() && std::filesystem::exists(base / p)) j[key] = (base / p).string();
    }
  };
  resolve("presentation");
  resolve("map");
  resolve("inverse_map");
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["presentation"] = presentation;
  j["R"] = R;
  j["D"] = D;
  j["seed"] = seed;
  j["kind"] = to_string(kind);
  j["samples"] = samples;
  j["min_separation"] = min_separation;
  j["threshold"] = threshold;
  j["delta_hat"] = delta_hat;
  j["delta_samples"] = delta_samples;
  if (!map.is_null()) j["map"] = map;
  if (!inverse_map.is_null()) j["inverse_map"] = inverse_map;
  if (!mode.empty()) j["mode"] = mode;
  j["coverage_cap"] = coverage_cap;
  j["interior_radius"] = interior_radius;
  j["max_flag_fraction"] = max_flag_fraction;
  if (kind == ExperimentKind::stability) {
    j["stability_kind"] = to_string(stability_kind);
    auto s = nlohmann::json::array();
    for (auto [r, d] : scales) s.push_back({r, d});
    j["scales"] = s;
  }
  return j;
}

Presentation ExperimentConfig::load_presentation() const {
  if (presentation.is_string()) return Presentation::load(presentation.get<std::string>());
  if (presentation.is_object()) return Presentation::from_json(presentation);
  fail(ErrorKind::parse, "presentation must be a path or an object");
}

std::string PointTable::csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (auto const& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

nlohmann::json Report::deterministic() const {
  auto j = json;
  j.erase("wall_clock_seconds");
  return j;
}

double Report::value(std::string const& key) const {
  auto const& values = json.at("values");
  if (!values.contains(key)) fail(ErrorKind::invalid_argument, "report has no value " + key);
  return values.at(key).get<double>();
}

int exit_code_for(Error const& e) {
  switch (e.kind()) {
    case ErrorKind::parse: return 2;
    case ErrorKind::sampling_starved: return 3;
    case ErrorKind::budget_exceeded: return 4;
    case ErrorKind::invariant_violation: return 5;
    default: return 6;
  }
}

namespace {

std::string fmt_word(Word const& w) { return w.empty() ? "1" : w.str(); }

std::string fmt_num(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v)) + ".0";
  }
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

nlohmann::json fit_json(DistortionFit const& f) {
  return {{"A", f.A}, {"B", f.B}, {"points", f.points}, {"max_residual", f.max_residual}};
}

void put_fit(nlohmann::json& values, std::string const& prefix, DistortionFit const& f) {
  values[prefix + ".A"] = f.A;
  values[prefix + ".B"] = f.B;
}

struct Context {
  ExperimentConfig const& cfg;
  Presentation presentation;
  std::unique_ptr<CuspedSpace> space;
  double delta_hat = 0.0;
  ConstantsLedger ledger;
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json fits = nlohmann::json::object();
  PointTable table;
  double flag_fraction = 0.0;

  void record(std::string const& name, double v, std::size_t samples) {
    ledger.record(name, v, space->radius(), space->depth(), cfg.seed, samples);
  }
};

void ensure_delta(Context& ctx) {
  if (ctx.cfg.delta_hat >= 0.0) {
    ctx.delta_hat = ctx.cfg.delta_hat;
    return;
  }
  DeltaOptions o;
  o.samples = ctx.cfg.delta_samples;
  o.min_separation = 1;
  o.seed = mix_seed(ctx.cfg.seed, 0xde17a);
  o.jobs = ctx.cfg.jobs;
  auto est = estimate_delta(*ctx.space, o);
  ctx.delta_hat = est.max_slimness;
  ctx.record("delta_hat", ctx.delta_hat, est.samples);
}

// Runs fn(oracle, rng) for every sample index until it yields a row.
template <class Row, class Fn>
std::vector<Row> sample_rows(Context& ctx, std::size_t attempts, Fn fn) {
  auto const& cs = *ctx.space;
  std::size_t n = ctx.cfg.samples;
  std::size_t jobs = std::max<std::size_t>(1, std::min(ctx.cfg.jobs, n));
  std::vector<std::unique_ptr<DistanceOracle>> oracles;
  for (std::size_t w = 0; w < jobs; ++w) oracles.push_back(std::make_unique<DistanceOracle>(cs));
  std::vector<std::optional<Row>> rows(n);
  parallel_for(n, jobs, [&](std::size_t i, std::size_t worker) {
    DistanceOracle& o = *oracles[worker];
    Rng rng(ctx.cfg.seed, i);
    for (std::size_t a = 0; a < attempts && !rows[i]; ++a) {
      o.clear();
      rows[i] = fn(o, rng);
    }
    o.clear();
  });
  std::vector<Row> out;
  for (auto& r : rows) {
    if (r) out.push_back(std::move(*r));
  }
  if (out.size() < n) {
    fail(ErrorKind::sampling_starved, "achieved " + std::to_string(out.size()) + " of " +
                                          std::to_string(n) + " samples");
  }
  return out;
}

std::optional<ProxySample> try_sample(DistanceOracle& o, Rng& rng, std::size_t count,
                                      std::size_t parabolic, std::int64_t threshold) {
  ProxySampleOptions po;
  po.count = count;
  po.parabolic = parabolic;
  po.threshold = threshold;
  try {
    return sample_proxies(o, po, rng);
  } catch (Error const& e) {
    if (e.kind() != ErrorKind::sampling_starved) throw;
    return std::nullopt;
  }
}

bool any_suspect(DistanceOracle& o, std::vector<VertexId> const& vs) {
  auto const& cs = o.space();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (cs.suspect(vs[i], vs[j], o.from(vs[i]), o.from(vs[j]))) return true;
    }
  }
  return false;
}

void run_delta(Context& ctx) {
  DeltaOptions o;
  o.samples = ctx.cfg.samples;
  o.min_separation = ctx.cfg.min_separation;
  o.seed = ctx.cfg.seed;
  o.jobs = ctx.cfg.jobs;
  auto est = estimate_delta(*ctx.space, o);
  ctx.delta_hat = est.max_slimness;
  ctx.record("delta_hat", est.max_slimness, est.samples);
  ctx.record("thinness", est.max_thinness, est.samples);
  ctx.values["delta_hat"] = est.max_slimness;
  ctx.values["max_thinness"] = est.max_thinness;
  ctx.values["samples"] = est.samples;
  ctx.values["attempts"] = est.attempts;
  ctx.flag_fraction = est.flag_fraction;
  nlohmann::json hist = nlohmann::json::object();
  for (auto [k, v] : est.histogram) hist[std::to_string(k)] = v;
  ctx.fits["slimness_histogram"] = hist;
  ctx.table.header = {"a", "b", "c", "slimness", "thinness", "flagged_attempts"};
  auto const& cs = *ctx.space;
  for (auto const& t : est.triangles) {
    ctx.table.rows.push_back({cs.label(t.a), cs.label(t.b), cs.label(t.c),
                              std::to_string(t.slimness), std::to_string(t.thinness),
                              std::to_string(t.flagged_attempts)});
  }
}

struct QuadRow {
  std::vector<std::string> proxies;
  HalfInt cr, cr2, cr3;
  std::int32_t d_pq = 0, f_p = 0, f_q = 0;
  std::string p, q;
  bool suspect = false;
};

void run_cross_ratio(Context& ctx, bool one_of_three) {
  ensure_delta(ctx);
  double dh = ctx.delta_hat;
  auto rows = sample_rows<QuadRow>(ctx, 50, [&](DistanceOracle& o, Rng& rng) -> std::optional<QuadRow> {
    auto s = try_sample(o, rng, 4, 0, ctx.cfg.threshold);
    if (!s) return std::nullopt;
    auto const& ps = s->proxies;
    VertexId a = ps[0].realization, b = ps[1].realization, c = ps[2].realization,
             d = ps[3].realization;
    QuadRow r;
    for (auto const& p : ps) r.proxies.push_back(p.str());
    r.cr = cross_ratio(o, a, b, c, d).value();
    r.cr2 = cross_ratio(o, a, c, b, d).value();
    r.cr3 = cross_ratio(o, c, a, b, d).value();
    if (!one_of_three) {
      auto p = quasi_projection(o, a, b, c, dh);
      auto q = quasi_projection(o, a, d, c, dh);
      r.d_pq = o(p.vertex, q.vertex);
      r.f_p = p.f_value;
      r.f_q = q.f_value;
      r.p = o.space().label(p.vertex);
      r.q = o.space().label(q.vertex);
    }
    r.suspect = any_suspect(o, {a, b, c, d});
    return r;
  });
  std::size_t flagged = 0;
  double worst = 0.0, max_cr = 0.0;
  std::int32_t max_f = 0;
  std::size_t f_violations = 0;
  for (auto const& r : rows) {
    flagged += r.suspect ? 1 : 0;
    max_cr = std::max(max_cr, r.cr.abs().value());
    if (one_of_three) {
      worst = std::max(worst, std::min({r.cr.abs(), r.cr2.abs(), r.cr3.abs()}).value());
    } else {
      worst = std::max(worst, std::fabs(r.cr.abs().value() - r.d_pq));
      max_f = std::max({max_f, r.f_p, r.f_q});
      for (auto f : {r.f_p, r.f_q}) {
        if (f > 5.0 * dh + 2.0) ++f_violations;
      }
    }
  }
  ctx.flag_fraction = static_cast<double>(flagged) / static_cast<double>(rows.size());
  std::string constant = one_of_three ? "C6" : "C5";
  ctx.record(constant, worst, rows.size());
  ctx.values[constant] = worst;
  ctx.values["max_abs_cross_ratio"] = max_cr;
  ctx.values["samples"] = rows.size();
  ctx.values["delta_hat"] = dh;
  if (!one_of_three) {
    ctx.values["max_f_value"] = max_f;
    ctx.values["f_bound_violations"] = f_violations;
  }
  if (one_of_three) {
    ctx.table.header = {"a", "b", "c", "d", "cr_abcd", "cr_acbd", "cr_cabd", "min_abs", "suspect"};
  } else {
    ctx.table.header = {"a", "b", "c", "d", "cross_ratio", "p_abc", "q_acd", "d_pq", "f_p", "f_q",
                        "discrepancy", "suspect"};
  }
  for (auto const& r : rows) {
    std::vector<std::string> row = r.proxies;
    if (one_of_three) {
      row.insert(row.end(), {r.cr.str(), r.cr2.str(), r.cr3.str(),
                             std::min({r.cr.abs(), r.cr2.abs(), r.cr3.abs()}).str(),
                             r.suspect ? "1" : "0"});
    } else {
      row.insert(row.end(), {r.cr.str(), r.p, r.q, std::to_string(r.d_pq), std::to_string(r.f_p),
                             std::to_string(r.f_q),
                             fmt_num(std::fabs(r.cr.abs().value() - r.d_pq)),
                             r.suspect ? "1" : "0"});
    }
    ctx.table.rows.push_back(std::move(row));
  }
}

struct RelRow {
  std::vector<std::string> proxies;
  HalfInt r;
  std::int32_t center = 0;
  std::string z, w, center_vertex;
};

void run_relative_cr(Context& ctx) {
  ensure_delta(ctx);
  double dh = ctx.delta_hat;
  auto rows = sample_rows<RelRow>(ctx, 50, [&](DistanceOracle& o, Rng& rng) -> std::optional<RelRow> {
    auto s = try_sample(o, rng, 3, 1, ctx.cfg.threshold);
    if (!s) return std::nullopt;
    auto const& ps = s->proxies;
    auto const& cs = o.space();
    if (cs.in_horoball(ps[0].realization, ps[2].horoball) ||
        cs.in_horoball(ps[1].realization, ps[2].horoball)) {
      return std::nullopt;
    }
    auto rc = relative_cross_ratio(o, ps[0].realization, ps[1].realization, ps[2].horoball, dh);
    RelRow r;
    for (auto const& p : ps) r.proxies.push_back(p.str());
    r.r = rc.r_estimate.value();
    r.center = rc.center_estimate;
    r.z = cs.label(rc.z);
    r.w = cs.label(rc.w);
    r.center_vertex = cs.label(rc.center.vertex);
    return r;
  });
  std::vector<FitPoint> fwd, bwd;
  double c8 = 0.0;
  for (auto const& r : rows) {
    double abs_r = r.r.abs().value();
    fwd.push_back({static_cast<double>(r.center), abs_r});
    bwd.push_back({abs_r, static_cast<double>(r.center)});
    c8 = std::max(c8, std::fabs(abs_r - 2.0 * r.center));
  }
  auto f = fit_affine_envelope(fwd);
  auto b = fit_affine_envelope(bwd);
  ctx.fits["r_vs_center"] = fit_json(f);
  ctx.fits["center_vs_r"] = fit_json(b);
  put_fit(ctx.values, "r_vs_center", f);
  put_fit(ctx.values, "center_vs_r", b);
  ctx.record("C8", c8, rows.size());
  ctx.values["C8"] = c8;
  ctx.values["samples"] = rows.size();
  ctx.values["delta_hat"] = dh;
  ctx.table.header = {"a", "b", "c", "r_estimate", "center_estimate", "z", "w", "center"};
  for (auto const& r : rows) {
    auto row = r.proxies;
    row.insert(row.end(), {r.r.str(), std::to_string(r.center), r.z, r.w, r.center_vertex});
    ctx.table.rows.push_back(std::move(row));
  }
}

struct ExitRow {
  std::vector<std::string> proxies;
  std::size_t size = 0, diameter = 0, policy_gap = 0;
  std::string least, greatest;
};

void run_exit_sets(Context& ctx) {
  auto rows = sample_rows<ExitRow>(ctx, 50, [&](DistanceOracle& o, Rng& rng) -> std::optional<ExitRow> {
    auto s = try_sample(o, rng, 2, 1, ctx.cfg.threshold);
    if (!s) return std::nullopt;
    auto const& ps = s->proxies;
    auto set = exit_point_set(o, ps[1].horoball, ps[0].realization);
    ExitRow r;
    r.proxies = {ps[1].str(), ps[0].str()};
    r.size = set.vertices.size();
    r.diameter = set.diameter;
    r.policy_gap = o.space().ball().word_distance(set.vertices.front(), set.vertices.back());
    r.least = o.space().label(set.vertices.front());
    r.greatest = o.space().label(set.vertices.back());
    return r;
  });
  std::size_t c1 = 0, gap = 0, largest = 0;
  for (auto const& r : rows) {
    c1 = std::max(c1, r.diameter);
    gap = std::max(gap, r.policy_gap);
    largest = std::max(largest, r.size);
  }
  ctx.record("C1", static_cast<double>(c1), rows.size());
  ctx.values["C1"] = c1;
  ctx.values["max_policy_gap"] = gap;
  ctx.values["max_set_size"] = largest;
  ctx.values["samples"] = rows.size();
  ctx.table.header = {"a", "b", "set_size", "diameter", "least", "greatest", "policy_gap"};
  for (auto const& r : rows) {
    auto row = r.proxies;
    row.insert(row.end(), {std::to_string(r.size), std::to_string(r.diameter), r.least, r.greatest,
                           std::to_string(r.policy_gap)});
    ctx.table.rows.push_back(std::move(row));
  }
}

std::optional<GeneratorMap> resolve_map(nlohmann::json const& spec, Presentation const& p,
                                        bool inverse) {
  if (spec.is_null()) return std::nullopt;
  if (spec.is_object()) return GeneratorMap::from_json(spec, p, p);
  if (!spec.is_string()) fail(ErrorKind::parse, "map must be a name, a path or an object");
  auto s = spec.get<std::string>();
  if (s == "identity") return GeneratorMap::identity(p);
  if (s == "dehn-twist") return dehn_twist_map(p, inverse ? -1 : 1);
  if (s == "dehn-twist-inverse") return dehn_twist_map(p, inverse ? 1 : -1);
  if (!std::filesystem::exists(s)) fail(ErrorKind::parse, "map file " + s + " does not exist");
  return GeneratorMap::load(s, p, p);
}

void run_distortion(Context& ctx) {
  auto const& cfg = ctx.cfg;
  if (cfg.map.is_null()) fail(ErrorKind::parse, "experiment " + to_string(cfg.kind) + " needs a map");
  auto map = *resolve_map(cfg.map, ctx.presentation, false);
  std::optional<GeneratorMap> inverse;
  if (!cfg.inverse_map.is_null()) {
    inverse = resolve_map(cfg.inverse_map, ctx.presentation, false);
  } else if (cfg.map.is_string() && !std::filesystem::exists(cfg.map.get<std::string>())) {
    inverse = resolve_map(cfg.map, ctx.presentation, true);
  }
  ensure_delta(ctx);
  DistortionOptions o;
  o.samples = cfg.samples;
  o.seed = cfg.seed;
  o.jobs = cfg.jobs;
  o.threshold = cfg.threshold;
  o.delta_hat_x = ctx.delta_hat;
  o.delta_hat_y = ctx.delta_hat;
  auto const& X = *ctx.space;
  GeneratorMap const* inv = inverse ? &*inverse : nullptr;
  DistortionResult result;
  if (cfg.kind == ExperimentKind::qm) {
    result = qm_distortion_experiment(map, X, X, o, inv);
  } else if (cfg.kind == ExperimentKind::relative_qm) {
    result = relative_qm_experiment(map, X, X, o, inv);
  } else {
    result = exit_distortion_experiment(map, X, X, o, inv);
  }
  ctx.fits["forward"] = fit_json(result.forward);
  ctx.fits["backward"] = fit_json(result.backward);
  put_fit(ctx.values, "forward", result.forward);
  put_fit(ctx.values, "backward", result.backward);
  if (result.inverse) {
    ctx.fits["inverse"] = fit_json(*result.inverse);
    put_fit(ctx.values, "inverse", *result.inverse);
  }
  double max_x = 0.0, max_y = 0.0;
  for (auto const& s : result.samples) {
    max_x = std::max(max_x, s.x);
    max_y = std::max(max_y, s.y);
  }
  ctx.values["max_x"] = max_x;
  ctx.values["max_y"] = max_y;
  ctx.values["samples"] = result.samples.size();
  ctx.values["resamples"] = result.resamples;
  ctx.values["delta_hat"] = ctx.delta_hat;
  auto const& k = cusp_preservation_report(map, X, X);
  ctx.values["K_hat"] = k.k_hat;
  ctx.record("K", static_cast<double>(k.k_hat), k.per_coset.size());

  std::size_t arity = result.samples.empty() ? 0 : result.samples.front().source.size();
  for (std::size_t i = 0; i < arity; ++i) ctx.table.header.push_back("src" + std::to_string(i));
  for (std::size_t i = 0; i < arity; ++i) ctx.table.header.push_back("img" + std::to_string(i));
  ctx.table.header.insert(ctx.table.header.end(), {"x", "y"});
  bool aux = cfg.kind == ExperimentKind::relative_qm;
  if (aux) ctx.table.header.insert(ctx.table.header.end(), {"r_x", "r_y"});
  for (auto const& s : result.samples) {
    std::vector<std::string> row = s.source;
    row.insert(row.end(), s.image.begin(), s.image.end());
    row.push_back(fmt_num(s.x));
    row.push_back(fmt_num(s.y));
    if (aux) {
      row.push_back(fmt_num(s.aux_x));
      row.push_back(fmt_num(s.aux_y));
    }
    ctx.table.rows.push_back(std::move(row));
  }
}

void run_reconstruct(Context& ctx) {
  auto const& cfg = ctx.cfg;
  if (cfg.map.is_null()) fail(ErrorKind::parse, "reconstruct needs a map");
  auto map = *resolve_map(cfg.map, ctx.presentation, false);
  ensure_delta(ctx);
  ReconstructionOptions o;
  o.mode = parse_reconstruction_mode(cfg.mode.empty() ? "centers" : cfg.mode);
  o.delta_hat_x = ctx.delta_hat;
  o.delta_hat_y = ctx.delta_hat;
  o.interior_radius = cfg.interior_radius;
  o.coverage_cap = cfg.coverage_cap;
  o.jobs = cfg.jobs;
  auto const& X = *ctx.space;
  auto rep = reconstruct_qi(map, X, X, o);
  ctx.values["D_hat"] = rep.d_hat;
  ctx.values["mean_error"] = rep.mean_error;
  ctx.values["R_hat"] = rep.r_hat;
  ctx.values["lambda_hat"] = rep.lambda_hat;
  ctx.values["epsilon_hat"] = rep.epsilon_hat;
  ctx.values["K_hat"] = rep.k_hat;
  ctx.values["flagged_vertices"] = rep.flagged;
  ctx.values["vertices"] = rep.vertices.size();
  ctx.flag_fraction = rep.vertices.empty() ? 0.0
                                           : static_cast<double>(rep.flagged) /
                                                 static_cast<double>(rep.vertices.size());
  ctx.values["delta_hat"] = ctx.delta_hat;
  ctx.fits["forward"] = fit_json(rep.forward);
  ctx.fits["backward"] = fit_json(rep.backward);
  ctx.record("R", rep.r_hat, rep.vertices.size());
  ctx.record("D_hat_" + to_string(o.mode), static_cast<double>(rep.d_hat), rep.vertices.size());
  ctx.table.header = {"x", "phi_x", "expected", "error", "anchor_distance", "flagged"};
  for (auto const& v : rep.vertices) {
    ctx.table.rows.push_back({fmt_word(v.x), fmt_word(v.phi_x), fmt_word(v.expected),
                              std::to_string(v.error), std::to_string(v.anchor_distance),
                              v.flagged ? "1" : "0"});
  }
}

void run_probes(Context& ctx) {
  ensure_delta(ctx);
  auto const& cs = *ctx.space;
  if (cs.horoballs().empty()) fail(ErrorKind::invalid_argument, "probes need a horoball");
  ProbeOptions o;
  o.samples = ctx.cfg.samples;
  o.seed = ctx.cfg.seed;
  o.jobs = ctx.cfg.jobs;
  std::size_t h = cs.horoball_of(0, 0);
  auto k3 = visual_boundedness_probe(cs, h, o);
  std::int32_t P = default_projection_margin(ctx.delta_hat);
  o.seed = mix_seed(ctx.cfg.seed, 0x6b31);
  auto k1 = bounded_projection_probe(cs, P, o);
  ctx.record("K3", static_cast<double>(k3.max_diameter), k3.samples);
  ctx.record("K1", static_cast<double>(k1.max_diameter), k1.samples);
  ctx.values["K3"] = k3.max_diameter;
  ctx.values["K1"] = k1.max_diameter;
  ctx.values["P"] = P;
  ctx.values["samples"] = k3.samples;
  ctx.values["delta_hat"] = ctx.delta_hat;
  ctx.table.header = {"sample", "visual_diameter", "projection_diameter"};
  for (std::size_t i = 0; i < k3.diameters.size(); ++i) {
    ctx.table.rows.push_back({std::to_string(i), std::to_string(k3.diameters[i]),
                              std::to_string(k1.diameters[i])});
  }
}

void write_outputs(ExperimentConfig const& cfg, Report const& report) {
  if (!cfg.write_files) return;
  std::filesystem::create_directories(cfg.output_dir);
  auto base = std::filesystem::path(cfg.output_dir) / cfg.name;
  std::ofstream json_out(base.string() + ".report.json");
  std::ofstream csv_out(base.string() + ".points.csv");
  if (!json_out || !csv_out) fail(ErrorKind::invalid_argument, "cannot write outputs under " + cfg.output_dir);
  json_out << report.json.dump(2) << '\n';
  csv_out << report.points.csv();
}

Report run_single(ExperimentConfig const& cfg) {
  Context ctx{cfg, cfg.load_presentation(), nullptr, 0.0, {}, nlohmann::json::object(), nlohmann::json::object(), {}, 0.0};
  if (!ctx.presentation.peripherals().empty() && cfg.R < 4) {
    fail(ErrorKind::parse, "config: cusped experiments need R >= 4");
  }
  ctx.space = std::make_unique<CuspedSpace>(ctx.presentation, cfg.R, cfg.D);
  switch (cfg.kind) {
    case ExperimentKind::delta: run_delta(ctx); break;
    case ExperimentKind::cross_ratio: run_cross_ratio(ctx, false); break;
    case ExperimentKind::one_of_three: run_cross_ratio(ctx, true); break;
    case ExperimentKind::relative_cr: run_relative_cr(ctx); break;
    case ExperimentKind::exit_sets: run_exit_sets(ctx); break;
    case ExperimentKind::qm:
    case ExperimentKind::relative_qm:
    case ExperimentKind::exit_distortion: run_distortion(ctx); break;
    case ExperimentKind::reconstruct: run_reconstruct(ctx); break;
    case ExperimentKind::probes: run_probes(ctx); break;
    case ExperimentKind::stability: fail(ErrorKind::invalid_argument, "nested stability run");
  }
  Report report;
  auto& j = report.json;
  j["name"] = cfg.name;
  j["kind"] = to_string(cfg.kind);
  j["config"] = cfg.to_json();
  std::size_t low = 0;
  for (auto const& h : ctx.space->horoballs()) low += h.low_confidence ? 1 : 0;
  j["space"] = {{"R", ctx.space->radius()},
                {"D", ctx.space->depth()},
                {"vertex_count", ctx.space->size()},
                {"horoballs", ctx.space->horoballs().size()},
                {"low_confidence_horoballs", low}};
  j["ledger"] = ctx.ledger.to_json();
  j["values"] = ctx.values;
  j["fits"] = ctx.fits;
  j["truncation_flag_fraction"] = ctx.flag_fraction;
  j["points_csv"] = cfg.name + ".points.csv";
  j["rows"] = ctx.table.rows.size();
  report.points = std::move(ctx.table);
  if (cfg.max_flag_fraction >= 0.0 && ctx.flag_fraction > cfg.max_flag_fraction) {
    fail(ErrorKind::invariant_violation, "truncation-flag fraction " + fmt_num(ctx.flag_fraction) +
                                             " exceeds " + fmt_num(cfg.max_flag_fraction));
  }
  return report;
}

Report run_stability(ExperimentConfig const& cfg) {
  auto scales = cfg.scales;
  if (scales.empty()) scales = {{cfg.R, cfg.D}, {cfg.R + 2, cfg.D}};
  std::vector<Report> runs;
  for (auto [r, d] : scales) {
    ExperimentConfig sub = cfg;
    sub.kind = cfg.stability_kind;
    sub.R = r;
    sub.D = d;
    sub.write_files = false;
    sub.name = cfg.name + ".R" + std::to_string(r) + "D" + std::to_string(d);
    runs.push_back(run_single(sub));
  }
  Report report;
  auto& j = report.json;
  j["name"] = cfg.name;
  j["kind"] = to_string(cfg.kind);
  j["config"] = cfg.to_json();
  j["runs"] = nlohmann::json::array();
  nlohmann::json values = nlohmann::json::object();
  report.points.header = {"key", "scale", "value", "drift_from_first"};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    j["runs"].push_back(runs[i].json);
    auto scale = "R" + std::to_string(scales[i].first) + "D" + std::to_string(scales[i].second);
    for (auto const& [key, v] : runs[i].json["values"].items()) {
      double first = runs[0].json["values"].value(key, v.get<double>());
      double drift = std::fabs(v.get<double>() - first);
      values[key + "@" + scale] = v;
      values["drift." + key] = std::max(values.value("drift." + key, 0.0), drift);
      report.points.rows.push_back({key, scale, fmt_num(v.get<double>()), fmt_num(drift)});
    }
  }
  j["values"] = values;
  j["points_csv"] = cfg.name + ".points.csv";
  j["rows"] = report.points.rows.size();
  return report;
}

}  // namespace

Report run_experiment(ExperimentConfig const& cfg) {
  auto start = std::chrono::steady_clock::now();
  Report report = cfg.kind == ExperimentKind::stability ? run_stability(cfg) : run_single(cfg);
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report.json["wall_clock_seconds"] = elapsed.count();
  write_outputs(cfg, report);
  return report;
}

nlohmann::json DriftSummary::to_json() const {
  auto out = nlohmann::json::array();
  for (auto const& r : rows) {
    nlohmann::json row = {{"key", r.key}, {"a", r.a}, {"b", r.b}, {"drift", r.drift},
                          {"exceeded", r.exceeded}};
    if (r.tolerance) row["tolerance"] = *r.tolerance;
    out.push_back(row);
  }
  return out;
}

DriftSummary compare_runs(nlohmann::json const& report_a, nlohmann::json const& report_b,
                          std::map<std::string, double> const& tolerances) {
  auto kind_a = report_a.value("kind", std::string());
  auto kind_b = report_b.value("kind", std::string());
  if (kind_a != kind_b) fail(ErrorKind::kind_mismatch, "cannot compare " + kind_a + " with " + kind_b);
  auto const& pa = report_a.at("config").at("presentation");
  auto const& pb = report_b.at("config").at("presentation");
  if (pa != pb) fail(ErrorKind::kind_mismatch, "reports use different presentations");
  DriftSummary summary;
  auto const& va = report_a.at("values");
  auto const& vb = report_b.at("values");
  for (auto const& [key, a] : va.items()) {
    if (!vb.contains(key) || !a.is_number()) continue;
    DriftRow row;
    row.key = key;
    row.a = a.get<double>();
    row.b = vb.at(key).get<double>();
    row.drift = std::fabs(row.a - row.b);
    if (auto it = tolerances.find(key); it != tolerances.end()) {
      row.tolerance = it->second;
      row.exceeded = row.drift > it->second;
      summary.any_exceeded = summary.any_exceeded || row.exceeded;
    }
    summary.rows.push_back(row);
  }
  return summary;
}

}  // namespace cusplab
