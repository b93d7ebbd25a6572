#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cusplab/error.hpp"
#include "cusplab/presentation.hpp"

namespace cusplab {

enum class ExperimentKind {
  delta,
  cross_ratio,
  one_of_three,
  relative_cr,
  exit_sets,
  qm,
  relative_qm,
  exit_distortion,
  reconstruct,
  stability,
  probes,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string const& s);

struct ExperimentConfig {
  std::string name = "experiment";
  nlohmann::json presentation;  // inline object, or a path string
  std::size_t R = 8;
  std::size_t D = 4;             // 0 selects the default depth
  std::uint64_t seed = 1;
  ExperimentKind kind = ExperimentKind::delta;
  std::size_t samples = 100;
  std::int32_t min_separation = 1;
  std::int64_t threshold = -1;   // proxy separation, negative for floor(R/3)
  double delta_hat = -1.0;       // negative: estimate it first
  std::size_t delta_samples = 200;
  nlohmann::json map;            // path, builtin name, or inline object
  nlohmann::json inverse_map;
  std::string mode;              // centers|exits for reconstruct
  double coverage_cap = -1.0;
  std::size_t interior_radius = 0;
  ExperimentKind stability_kind = ExperimentKind::cross_ratio;
  std::vector<std::pair<std::size_t, std::size_t>> scales;  // (R, D) for stability
  double max_flag_fraction = -1.0;  // fatal above this truncation-flag fraction; negative disables
  std::string output_dir = ".";
  bool write_files = true;
  std::size_t jobs = 1;

  static ExperimentConfig from_json(nlohmann::json const& j);
  static ExperimentConfig load(std::string const& path);
  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] Presentation load_presentation() const;
};

struct PointTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  [[nodiscard]] std::string csv() const;
};

struct Report {
  nlohmann::json json;  // deterministic content plus "wall_clock_seconds"
  PointTable points;

  // The report without wall-clock time, for bit-for-bit comparisons.
  [[nodiscard]] nlohmann::json deterministic() const;
  [[nodiscard]] double value(std::string const& key) const;
};

Report run_experiment(ExperimentConfig const& cfg);

struct DriftRow {
  std::string key;
  double a = 0.0;
  double b = 0.0;
  double drift = 0.0;
  std::optional<double> tolerance;
  bool exceeded = false;
};

struct DriftSummary {
  std::vector<DriftRow> rows;
  bool any_exceeded = false;
  [[nodiscard]] nlohmann::json to_json() const;
};

// Compares the scalar values of two reports of the same kind.
DriftSummary compare_runs(nlohmann::json const& report_a, nlohmann::json const& report_b,
                          std::map<std::string, double> const& tolerances = {});

// Exit codes used by the command line tool.
int exit_code_for(Error const& e);

}  // namespace cusplab
