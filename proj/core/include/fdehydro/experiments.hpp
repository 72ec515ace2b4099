#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "fdehydro/lattice.hpp"
#include "fdehydro/svg.hpp"

namespace fdehydro::cli {

// Named initial-profile family: "constant" (value) or "sine"
// (offset + amplitude sin(2 pi x)).
struct ProfileSpec {
  std::string family = "sine";
  double value = 1.0;      // constant family
  double offset = 1.0;     // sine family
  double amplitude = 0.5;  // sine family

  std::function<double(double)> as_function() const;
  DensityProfile materialize(int n) const;
};

struct ExperimentConfig {
  std::string experiment;
  std::vector<int> n_list;
  double alpha = 0.5;
  ProfileSpec profile;
  double delta = 0.3;   // block exponent, ell = n^delta
  double eps = 0.5;     // density lower cutoff scale
  double eps0 = 0.25;   // small-density cutoff
  double M = 10.0;      // high-density cutoff
  int replicas = 50;
  std::uint64_t seed = 20240817;
  double t_end = 0.01;
  std::vector<double> checkpoints;  // optional; defaults per experiment
  int n_ref = 1024;
  int max_sum = 12;       // spectral-gap sweep bound on ell+k
  int ell = 50;           // concentration block size
  double nalpha = 4.0;    // concentration n^alpha
  double rho = 1.0;       // concentration / one-block reference density
  std::vector<double> a_upper = {1.5, 2.0};
  std::vector<double> a_lower = {0.5, 0.6};
  std::string out_dir = "out";
  int threads = 1;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_json_file(const std::string& path);
  nlohmann::json to_json() const;
  void validate() const;
};

struct PlotJob {
  std::string filename;  // relative to out_dir
  svg::PlotSpec spec;
  std::vector<svg::Series> series;
};

struct ResultBundle {
  ExperimentConfig config;
  nlohmann::json summary;
  std::vector<std::string> csv_paths;  // relative to out_dir
  std::vector<PlotJob> plots;
  bool all_passed = false;
};

// Dispatches on config.experiment: mol-convergence, hydro-limit, one-block,
// concentration, spectral-gap, entropy-decay. Writes CSVs and summary.json
// under config.out_dir.
ResultBundle run_experiment(const ExperimentConfig& config);

// Writes one SVG per plot job; returns the paths.
std::vector<std::string> emit_plots(const ResultBundle& bundle);

}  // namespace fdehydro::cli
