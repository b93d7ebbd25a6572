#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "cusplab/cusped_space.hpp"
#include "cusplab/experiments.hpp"

using namespace cusplab;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::string export_space;
  std::string presentation;
  std::optional<std::size_t> R, D, samples;
  std::string map;
  std::string inverse_map;
  std::string output_dir;
  std::string name;
  std::optional<double> delta_hat;
  std::optional<std::int64_t> threshold;
  std::optional<std::int32_t> min_separation;
};

// Without an experiment subcommand the config file's kind is run.
ExperimentConfig make_config(Overrides const& o, std::optional<ExperimentKind> chosen) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = ExperimentConfig::load(o.config);
  } else {
    if (o.presentation.empty()) fail(ErrorKind::parse, "need --config or --presentation");
    if (!chosen) fail(ErrorKind::parse, "need a subcommand or --config");
    nlohmann::json j = nlohmann::json::object();
    j["presentation"] = o.presentation;
    j["kind"] = to_string(*chosen);
    cfg = ExperimentConfig::from_json(j);
  }
  ExperimentKind kind = chosen.value_or(cfg.kind);
  // The subcommand decides the experiment; a stability run keeps the config kind.
  if (kind == ExperimentKind::stability && cfg.kind != ExperimentKind::stability) {
    cfg.stability_kind = cfg.kind;
  }
  cfg.kind = kind;
  if (!o.presentation.empty()) cfg.presentation = o.presentation;
  if (o.seed) cfg.seed = *o.seed;
  if (o.jobs) cfg.jobs = std::max<std::size_t>(1, *o.jobs);
  if (o.R) cfg.R = *o.R;
  if (o.D) cfg.D = *o.D;
  if (o.samples) cfg.samples = *o.samples;
  if (o.delta_hat) cfg.delta_hat = *o.delta_hat;
  if (o.threshold) cfg.threshold = *o.threshold;
  if (o.min_separation) cfg.min_separation = *o.min_separation;
  if (!o.map.empty()) cfg.map = o.map;
  if (!o.inverse_map.empty()) cfg.inverse_map = o.inverse_map;
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  if (!o.name.empty()) cfg.name = o.name;
  if (cfg.samples == 0) fail(ErrorKind::parse, "samples must be at least 1");
  return cfg;
}

void export_if_requested(Overrides const& o, ExperimentConfig const& cfg) {
  if (o.export_space.empty()) return;
  CuspedSpace cs(cfg.load_presentation(), cfg.R, cfg.D);
  cs.export_to(o.export_space);
  std::cerr << "exported " << cs.size() << " vertices to " << o.export_space << ".{json,edges}\n";
}

void print_summary(Report const& r) {
  nlohmann::json out = {{"name", r.json.at("name")},
                        {"kind", r.json.at("kind")},
                        {"values", r.json.at("values")}};
  if (r.json.contains("truncation_flag_fraction")) {
    out["truncation_flag_fraction"] = r.json["truncation_flag_fraction"];
  }
  out["wall_clock_seconds"] = r.json.at("wall_clock_seconds");
  std::cout << out.dump(2) << '\n';
}

nlohmann::json read_json(std::string const& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on cusped spaces of relatively hyperbolic groups"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--jobs", o.jobs, "worker threads");
  app.add_option("--export-space", o.export_space, "write the cusped space to <path>.json and <path>.edges");
  app.add_option("--presentation", o.presentation, "presentation JSON file");
  app.add_option("-R,--radius", o.R, "ball radius");
  app.add_option("-D,--depth", o.D, "horoball depth (0 picks a default)");
  app.add_option("--samples", o.samples, "sample count");
  app.add_option("--delta-hat", o.delta_hat, "use this delta instead of estimating it");
  app.add_option("--threshold", o.threshold, "proxy separation threshold");
  app.add_option("--min-separation", o.min_separation, "triangle vertex separation");
  app.add_option("--map", o.map, "map file or builtin (identity, dehn-twist, dehn-twist-inverse)");
  app.add_option("--inverse-map", o.inverse_map, "inverse map file or builtin");
  app.add_option("--output-dir", o.output_dir, "directory for report and CSV");
  app.add_option("--name", o.name, "output file stem");

  app.add_subcommand("run", "run the experiment described by --config");
  auto* build = app.add_subcommand("build-space", "build the cusped space and print its manifest");
  std::vector<std::pair<CLI::App*, ExperimentKind>> simple = {
      {app.add_subcommand("estimate-delta", "sample geodesic triangles"), ExperimentKind::delta},
      {app.add_subcommand("cross-ratio", "cross-ratio vs quasi-center distance"), ExperimentKind::cross_ratio},
      {app.add_subcommand("one-of-three", "smallest of the three cross-ratios"), ExperimentKind::one_of_three},
      {app.add_subcommand("relative-cr", "relative cross-ratio vs center depth"), ExperimentKind::relative_cr},
      {app.add_subcommand("exit-sets", "exit point set diameters"), ExperimentKind::exit_sets},
      {app.add_subcommand("probe", "visual boundedness and projection probes"), ExperimentKind::probes},
      {app.add_subcommand("stability", "rerun an experiment across scales"), ExperimentKind::stability},
  };
  auto* distortion = app.add_subcommand("distortion", "distortion of a map on boundary proxies");
  std::string dmode = "qm";
  distortion->add_option("--mode", dmode, "qm|relqm|exit")->check(CLI::IsMember({"qm", "relqm", "exit"}));
  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild the map from its boundary action");
  std::string rmode;
  reconstruct->add_option("--mode", rmode, "centers|exits")->check(CLI::IsMember({"centers", "exits"}));
  auto* compare = app.add_subcommand("compare", "drift between two reports");
  std::string report_a, report_b;
  std::vector<std::string> tolerances;
  compare->add_option("report_a", report_a)->required()->check(CLI::ExistingFile);
  compare->add_option("report_b", report_b)->required()->check(CLI::ExistingFile);
  compare->add_option("--tol", tolerances, "key=tolerance");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) {
      auto cfg = make_config(o, ExperimentKind::delta);
      CuspedSpace cs(cfg.load_presentation(), cfg.R, cfg.D);
      if (!o.export_space.empty()) cs.export_to(o.export_space);
      std::cout << cs.manifest().dump(2) << '\n';
      return 0;
    }
    if (*compare) {
      std::map<std::string, double> tol;
      for (auto const& t : tolerances) {
        auto eq = t.find('=');
        if (eq == std::string::npos) fail(ErrorKind::parse, "tolerance must be key=value: " + t);
        try {
          tol[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
        } catch (std::exception const&) {
          fail(ErrorKind::parse, "bad tolerance " + t);
        }
      }
      auto summary = compare_runs(read_json(report_a), read_json(report_b), tol);
      std::cout << nlohmann::json{{"rows", summary.to_json()}, {"any_exceeded", summary.any_exceeded}}.dump(2)
                << '\n';
      return summary.any_exceeded ? 5 : 0;
    }
    std::optional<ExperimentKind> kind;
    for (auto const& [sub, k] : simple) {
      if (*sub) kind = k;
    }
    if (*distortion) {
      kind = dmode == "qm" ? ExperimentKind::qm
             : dmode == "relqm" ? ExperimentKind::relative_qm
                                : ExperimentKind::exit_distortion;
    }
    if (*reconstruct) kind = ExperimentKind::reconstruct;
    auto cfg = make_config(o, kind);
    if (!rmode.empty()) cfg.mode = rmode;
    export_if_requested(o, cfg);
    print_summary(run_experiment(cfg));
    return 0;
  } catch (Error const& e) {
    std::cerr << "cusplab: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (std::exception const& e) {
    std::cerr << "cusplab: " << e.what() << '\n';
    return 1;
  }
}
