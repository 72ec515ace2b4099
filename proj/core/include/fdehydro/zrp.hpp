#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fdehydro/lattice.hpp"
#include "fdehydro/rng.hpp"

namespace fdehydro::zrp {

// Checkpointed snapshots of a simulation run.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Configuration> snapshots;
  std::uint64_t event_count = 0;

  std::string to_csv() const;            // long format: time, site, count
  std::string to_json_summary() const;   // observables only
};

// State of the speeded-up zero-range process: configuration, the set of
// occupied sites, macroscopic time and the clock stream. With g in {0,1}
// every occupied site carries the same rate, so events are drawn uniformly
// from a dynamic occupied array with swap-remove, O(1) per event.
class SimState {
 public:
  SimState(const ScalingParams& params, Configuration config, RngStream rng);

  const Configuration& config() const { return config_; }
  const ScalingParams& params() const { return params_; }
  double macro_time() const { return macro_time_; }
  std::uint64_t event_count() const { return event_count_; }
  int occupied_count() const { return static_cast<int>(occupied_.size()); }

  // Exact Gillespie simulation up to t_end, snapshotting the configuration
  // in force at each checkpoint (left-continuous sampling).
  TrajectoryRecord simulate(double t_end, const std::vector<double>& checkpoints);

 private:
  friend class CoupledState;
  void apply_jump(TorusIndex x, TorusIndex y);

  ScalingParams params_;
  Configuration config_;
  std::vector<int> occupied_;   // dynamic array of occupied sites
  std::vector<int> occ_pos_;    // site -> index into occupied_, -1 if absent
  double macro_time_ = 0.0;
  std::uint64_t event_count_ = 0;
  RngStream rng_;
};

// Order-preserving basic coupling of two copies sharing one clock stream.
// One clock per site; when the chosen site is occupied in both copies the
// particles jump together, otherwise only the upper copy moves.
class CoupledState {
 public:
  // check_order: assert lower <= upper after every event.
  CoupledState(const ScalingParams& params, Configuration lower,
               Configuration upper, RngStream rng, bool check_order = false);

  const Configuration& lower() const { return lower_.config(); }
  const Configuration& upper() const { return upper_.config(); }

  std::pair<TrajectoryRecord, TrajectoryRecord> simulate(
      double t_end, const std::vector<double>& checkpoints);

 private:
  SimState lower_;
  SimState upper_;
  RngStream rng_;
  double macro_time_ = 0.0;
  bool check_order_;
};

// Independent per-site geometric draws with means n^alpha u(x/n).
Configuration sample_product_measure(const DensityProfile& profile,
                                     const ScalingParams& params,
                                     RngStream& rng);

// Monotone joint draw from two ordered profiles through shared uniforms.
std::pair<Configuration, Configuration> sample_product_measure_coupled(
    const DensityProfile& lower_profile, const DensityProfile& upper_profile,
    const ScalingParams& params, RngStream& rng);

// n^-(1+alpha) sum_x eta(x) F(x/n).
double empirical_pairing(const Configuration& config,
                         const std::function<double(double)>& F,
                         const ScalingParams& params);

// Density of particles on the box of size ell at the right of x,
// normalized by n^alpha.
double block_average(const Configuration& config, TorusIndex x, int ell,
                     const ScalingParams& params);

// One-block statistics with test function values F(x), block size ell and
// high-density cutoff M.
struct OneBlockStatistic {
  // n^-1 sum_x F(x) n^alpha [ g(eta(x)) - phi(n^alpha eta^{n,ell}(x)) ]
  double replacement;
  // n^-1 sum_x F(x) n^alpha V^{n,ell,M}_x with
  // V = (g^{n,ell}_x - psi^{n,ell}_x) 1{eta^{n,ell}(x) <= M}
  double v_statistic;
};
OneBlockStatistic one_block_statistic(const Configuration& config, int ell,
                                      const std::vector<double>& F_values,
                                      const ScalingParams& params, double M);

// Per-site eta(x)/n^alpha.
DensityProfile density_field(const Configuration& config,
                             const ScalingParams& params);

}  // namespace fdehydro::zrp
