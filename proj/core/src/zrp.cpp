#include "fdehydro/zrp.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fdehydro/measures.hpp"

namespace fdehydro::zrp {

namespace {

void validate_checkpoints(const std::vector<double>& cps, double t_start,
                          double t_end) {
  double prev = t_start;
  for (double c : cps) {
    if (c < prev || c > t_end)
      throw InvalidCheckpointError("checkpoints must be sorted within [t, t_end]");
    prev = c;
  }
}

}  // namespace

std::string TrajectoryRecord::to_csv() const {
  std::ostringstream os;
  os << "time,site,count\n";
  os.precision(17);
  for (std::size_t i = 0; i < times.size(); ++i)
    for (int x = 0; x < snapshots[i].n(); ++x)
      os << times[i] << "," << x << "," << snapshots[i][x] << "\n";
  return os.str();
}

std::string TrajectoryRecord::to_json_summary() const {
  nlohmann::json j;
  j["event_count"] = event_count;
  j["times"] = times;
  std::vector<std::int64_t> totals;
  totals.reserve(snapshots.size());
  for (const auto& s : snapshots) totals.push_back(s.total());
  j["totals"] = totals;
  return j.dump();
}

SimState::SimState(const ScalingParams& params, Configuration config,
                   RngStream rng)
    : params_(params),
      config_(std::move(config)),
      occ_pos_(params.n, -1),
      rng_(rng) {
  if (config_.n() != params_.n)
    throw SizeMismatchError("SimState: configuration size != n");
  for (int x = 0; x < params_.n; ++x) {
    if (config_[x] > 0) {
      occ_pos_[x] = static_cast<int>(occupied_.size());
      occupied_.push_back(x);
    }
  }
}

void SimState::apply_jump(TorusIndex x, TorusIndex y) {
  config_.add(x, -1);
  config_.add(y, +1);
  if (config_[x] == 0) {
    // swap-remove x from the occupied array
    const int px = occ_pos_[x];
    const int last = occupied_.back();
    occupied_[px] = last;
    occ_pos_[last] = px;
    occupied_.pop_back();
    occ_pos_[x] = -1;
  }
  if (config_[y] == 1) {
    occ_pos_[y] = static_cast<int>(occupied_.size());
    occupied_.push_back(y);
  }
  ++event_count_;
}

TrajectoryRecord SimState::simulate(double t_end,
                                    const std::vector<double>& checkpoints) {
  if (t_end < macro_time_)
    throw InvalidCheckpointError("simulate: t_end < macro_time");
  validate_checkpoints(checkpoints, macro_time_, t_end);
  TrajectoryRecord rec;
  std::size_t ci = 0;
  const int n = params_.n;
  while (!occupied_.empty()) {
    const double rate = 2.0 * params_.speedup * occupied_.size();
    const double t_next = macro_time_ + rng_.exponential(rate);
    // left-continuous snapshots: configuration in force at the checkpoint
    while (ci < checkpoints.size() && checkpoints[ci] <= t_next &&
           checkpoints[ci] <= t_end) {
      rec.times.push_back(checkpoints[ci]);
      rec.snapshots.push_back(config_);
      ++ci;
    }
    if (t_next >= t_end) break;
    macro_time_ = t_next;
    const std::uint64_t u = rng_.next_u64();
    const int dir = (u & 1) ? 1 : -1;
    const auto idx = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(u >> 1) * occupied_.size()) >> 63);
    const int x = occupied_[idx];
    const int y = torus_wrap(x + dir, n);
    apply_jump(x, y);
  }
  macro_time_ = t_end;
  while (ci < checkpoints.size()) {
    rec.times.push_back(checkpoints[ci]);
    rec.snapshots.push_back(config_);
    ++ci;
  }
  rec.event_count = event_count_;
  return rec;
}

CoupledState::CoupledState(const ScalingParams& params, Configuration lower,
                           Configuration upper, RngStream rng, bool check_order)
    : lower_(params, std::move(lower), rng.split(1)),
      upper_(params, std::move(upper), rng.split(2)),
      rng_(rng),
      check_order_(check_order) {
  if (!partial_order_leq(lower_.config(), upper_.config()))
    throw OrderViolationError("CoupledState: initial configurations not ordered");
}

std::pair<TrajectoryRecord, TrajectoryRecord> CoupledState::simulate(
    double t_end, const std::vector<double>& checkpoints) {
  if (t_end < macro_time_)
    throw InvalidCheckpointError("simulate: t_end < macro_time");
  validate_checkpoints(checkpoints, macro_time_, t_end);
  TrajectoryRecord rec_lo, rec_up;
  std::size_t ci = 0;
  const int n = lower_.params().n;
  auto snapshot = [&](double t) {
    rec_lo.times.push_back(t);
    rec_lo.snapshots.push_back(lower_.config());
    rec_up.times.push_back(t);
    rec_up.snapshots.push_back(upper_.config());
  };
  // lower <= upper implies every lower-occupied site is upper-occupied, so
  // uniformizing over the upper occupied set is exact for both marginals.
  while (!upper_.occupied_.empty()) {
    const double rate = 2.0 * lower_.params().speedup * upper_.occupied_.size();
    const double t_next = macro_time_ + rng_.exponential(rate);
    while (ci < checkpoints.size() && checkpoints[ci] <= t_next &&
           checkpoints[ci] <= t_end) {
      snapshot(checkpoints[ci]);
      ++ci;
    }
    if (t_next >= t_end) break;
    macro_time_ = t_next;
    const std::uint64_t u = rng_.next_u64();
    const int dir = (u & 1) ? 1 : -1;
    const auto idx = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(u >> 1) * upper_.occupied_.size()) >> 63);
    const int x = upper_.occupied_[idx];
    const int y = torus_wrap(x + dir, n);
    const bool lower_moves = lower_.config()[x] > 0;
    upper_.apply_jump(x, y);
    if (lower_moves) lower_.apply_jump(x, y);
    if (check_order_ &&
        (lower_.config()[x] > upper_.config()[x] ||
         lower_.config()[y] > upper_.config()[y]))
      throw OrderViolationError("CoupledState: order violated at event");
  }
  macro_time_ = t_end;
  lower_.macro_time_ = t_end;
  upper_.macro_time_ = t_end;
  while (ci < checkpoints.size()) {
    snapshot(checkpoints[ci]);
    ++ci;
  }
  rec_lo.event_count = lower_.event_count();
  rec_up.event_count = upper_.event_count();
  return {std::move(rec_lo), std::move(rec_up)};
}

Configuration sample_product_measure(const DensityProfile& profile,
                                     const ScalingParams& params,
                                     RngStream& rng) {
  if (profile.n() != params.n)
    throw SizeMismatchError("sample_product_measure: profile size != n");
  std::vector<std::int64_t> counts(params.n);
  for (int x = 0; x < params.n; ++x)
    counts[x] = rng.geometric_mean(params.n_alpha * profile[x]);
  return Configuration(std::move(counts));
}

std::pair<Configuration, Configuration> sample_product_measure_coupled(
    const DensityProfile& lower_profile, const DensityProfile& upper_profile,
    const ScalingParams& params, RngStream& rng) {
  if (lower_profile.n() != params.n || upper_profile.n() != params.n)
    throw SizeMismatchError("sample_product_measure_coupled: profile size != n");
  std::vector<std::int64_t> lo(params.n), up(params.n);
  for (int x = 0; x < params.n; ++x) {
    const double u = rng.uniform01();
    lo[x] = RngStream::geometric_mean(params.n_alpha * lower_profile[x], u);
    up[x] = RngStream::geometric_mean(params.n_alpha * upper_profile[x], u);
  }
  return {Configuration(std::move(lo)), Configuration(std::move(up))};
}

double empirical_pairing(const Configuration& config,
                         const std::function<double(double)>& F,
                         const ScalingParams& params) {
  double s = 0.0;
  const int n = config.n();
  for (int x = 0; x < n; ++x)
    s += static_cast<double>(config[x]) * F(static_cast<double>(x) / n);
  return s / (params.n_alpha * n);
}

double block_average(const Configuration& config, TorusIndex x, int ell,
                     const ScalingParams& params) {
  const int n = config.n();
  if (ell < 1 || ell > n)
    throw DomainError("block_average: ell out of range");
  std::int64_t s = 0;
  for (int i = 1; i <= ell; ++i) s += config[torus_wrap(x + i, n)];
  return static_cast<double>(s) / (params.n_alpha * ell);
}

OneBlockStatistic one_block_statistic(const Configuration& config, int ell,
                                      const std::vector<double>& F_values,
                                      const ScalingParams& params, double M) {
  const int n = config.n();
  if (ell < 2) throw DomainError("one_block_statistic: ell must be >= 2");
  if (static_cast<int>(F_values.size()) != n)
    throw SizeMismatchError("one_block_statistic: F_values size != n");
  // sliding window sums over sites x+1..x+ell
  std::int64_t win_count = 0;
  int win_g = 0;
  for (int i = 1; i <= ell; ++i) {
    const auto c = config[torus_wrap(i, n)];
    win_count += c;
    win_g += c > 0 ? 1 : 0;
  }
  double replacement = 0.0, v_stat = 0.0;
  for (int x = 0; x < n; ++x) {
    const double m = static_cast<double>(win_count) / ell;  // n^a eta^{n,l}(x)
    const double block_density = m / params.n_alpha;
    const double g_here = config[x] > 0 ? 1.0 : 0.0;
    replacement += F_values[x] * (g_here - m / (1.0 + m));
    if (block_density <= M) {
      const double g_block = static_cast<double>(win_g) / ell;
      const double psi = m / (1.0 - 1.0 / ell + m);
      v_stat += F_values[x] * (g_block - psi);
    }
    // advance window from x to x+1
    const auto c_out = config[torus_wrap(x + 1, n)];
    const auto c_in = config[torus_wrap(x + 1 + ell, n)];
    win_count += c_in - c_out;
    win_g += (c_in > 0 ? 1 : 0) - (c_out > 0 ? 1 : 0);
  }
  const double scale = params.n_alpha / n;
  return {replacement * scale, v_stat * scale};
}

DensityProfile density_field(const Configuration& config,
                             const ScalingParams& params) {
  DensityProfile u(config.n());
  for (int x = 0; x < config.n(); ++x)
    u[x] = static_cast<double>(config[x]) / params.n_alpha;
  return u;
}

}  // namespace fdehydro::zrp
