#include "fdehydro/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fdehydro/measures.hpp"
#include "fdehydro/mol.hpp"
#include "fdehydro/ensemble.hpp"
#include "fdehydro/rng.hpp"
#include "fdehydro/zrp.hpp"

namespace fdehydro::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << content;
}

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

nlohmann::json checks_to_json(const std::vector<Check>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return arr;
}

bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

// Replica worker pool; results must be written into per-replica slots so
// the merge is independent of completion order.
template <class Fn>
void parallel_replicas(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads <= 1) {
    for (int r = 0; r < count; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      int r;
      while ((r = next.fetch_add(1)) < count) {
        try {
          fn(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> linspace_checkpoints(double t_end, int count) {
  std::vector<double> cps(count);
  for (int i = 0; i < count; ++i) cps[i] = t_end * (i + 1) / count;
  return cps;
}

struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

Stats replica_stats(const std::vector<double>& v) {
  Stats s;
  const double m = static_cast<double>(v.size());
  for (double x : v) s.mean += x;
  s.mean /= m;
  double var = 0.0;
  for (double x : v) var += (x - s.mean) * (x - s.mean);
  if (v.size() > 1) var /= (m - 1.0);
  s.se = std::sqrt(var / m);
  return s;
}

double periodic_integral(const std::vector<double>& u,
                         const std::function<double(double)>& F) {
  const int n = static_cast<int>(u.size());
  double s = 0.0;
  for (int x = 0; x < n; ++x) s += u[x] * F(static_cast<double>(x) / n);
  return s / n;
}

std::string fmtnum(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

ResultBundle experiment_mol_convergence(const ExperimentConfig& cfg) {
  ResultBundle bundle;
  bundle.config = cfg;
  std::vector<Check> checks;

  // horizon: min provable window over the n list, capped at t_end
  double t_star = cfg.t_end;
  for (int n : cfg.n_list) {
    ScalingParams params(n, cfg.alpha);
    const auto w = mol::time_window(cfg.profile.materialize(n), params);
    t_star = std::min(t_star, w.T);
  }
  const auto cps = linspace_checkpoints(t_star, 8);
  const auto reference =
      mol::reference_fde_solve(cfg.profile.as_function(), cfg.n_ref, t_star, cps);

  std::ostringstream csv;
  csv.precision(17);
  csv << "n,sup_error,T_window,energy_initial,energy_final\n";
  std::vector<double> errors;
  svg::Series err_series{"sup_error", {}, {}};
  for (int n : cfg.n_list) {
    ScalingParams params(n, cfg.alpha);
    mol::MolProblem problem{params, cfg.profile.materialize(n), {}};
    const auto w = mol::time_window(problem.u0, params);
    const auto sol = mol::integrate(problem, t_star, cps);
    const double err = mol::sup_error(sol, reference);
    errors.push_back(err);
    csv << n << "," << err << "," << w.T << ","
        << mol::energy(problem.u0, params) << ","
        << sol.diagnostics.back().energy << "\n";
    err_series.x.push_back(n);
    err_series.y.push_back(err);
  }
  for (std::size_t i = 0; i + 1 < errors.size(); ++i)
    checks.push_back({"sup_error_decreasing_" + std::to_string(cfg.n_list[i]) +
                          "_to_" + std::to_string(cfg.n_list[i + 1]),
                      errors[i + 1] < errors[i],
                      fmtnum(errors[i]) + " -> " + fmtnum(errors[i + 1])});
  if (errors.size() >= 2)
    checks.push_back({"sup_error_factor_4",
                      errors.back() <= errors.front() / 4.0,
                      "first=" + fmtnum(errors.front()) +
                          " last=" + fmtnum(errors.back())});

  write_file(fs::path(cfg.out_dir) / "mol_convergence.csv", csv.str());
  bundle.csv_paths.push_back("mol_convergence.csv");
  bundle.plots.push_back({"mol_convergence.svg",
                          {"MOL convergence to the limiting equation", "n",
                           "sup error", true},
                          {err_series}});
  bundle.summary["t_star"] = t_star;
  bundle.summary["sup_errors"] = errors;
  bundle.summary["checks"] = checks_to_json(checks);
  bundle.all_passed = all_passed(checks);
  return bundle;
}

ResultBundle experiment_hydro_limit(const ExperimentConfig& cfg) {
  ResultBundle bundle;
  bundle.config = cfg;
  std::vector<Check> checks;

  struct TestFn {
    std::string name;
    std::function<double(double)> f;
  };
  const std::vector<TestFn> fns = {
      {"one", [](double) { return 1.0; }},
      {"cos2pix", [](double x) { return std::cos(2.0 * kPi * x); }}};

  const std::vector<double> cps = {cfg.t_end};
  const auto reference = mol::reference_fde_solve(cfg.profile.as_function(),
                                                  cfg.n_ref, cfg.t_end, cps);
  std::vector<double> ref_integrals;
  for (const auto& fn : fns)
    ref_integrals.push_back(
        periodic_integral(reference.profiles.back().values, fn.f));

  const RngStream base(cfg.seed);
  std::ostringstream csv, agg;
  csv.precision(17);
  agg.precision(17);
  csv << "n,F,replica,pairing,error\n";
  agg << "n,F,mean_error,mean_abs_error,se\n";

  std::vector<std::vector<Stats>> stats_by_fn(fns.size());
  std::vector<svg::Series> plot_series;
  for (std::size_t fi = 0; fi < fns.size(); ++fi)
    plot_series.push_back({"mean |error|, F=" + fns[fi].name, {}, {}});
  svg::Series scatter{"per-replica |error|", {}, {}, true};

  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    ScalingParams params(n, cfg.alpha);
    const DensityProfile u0 = cfg.profile.materialize(n);
    std::vector<std::vector<double>> pairings(
        fns.size(), std::vector<double>(cfg.replicas));
    parallel_replicas(cfg.replicas, cfg.threads, [&](int r) {
      RngStream rng = base.split(ni * 1'000'003ULL + static_cast<std::uint64_t>(r));
      Configuration eta0 = zrp::sample_product_measure(u0, params, rng);
      zrp::SimState sim(params, std::move(eta0), rng.split(0));
      const auto rec = sim.simulate(cfg.t_end, cps);
      for (std::size_t fi = 0; fi < fns.size(); ++fi)
        pairings[fi][r] =
            zrp::empirical_pairing(rec.snapshots.back(), fns[fi].f, params);
    });
    for (std::size_t fi = 0; fi < fns.size(); ++fi) {
      std::vector<double> errs(cfg.replicas), abs_errs(cfg.replicas);
      for (int r = 0; r < cfg.replicas; ++r) {
        errs[r] = pairings[fi][r] - ref_integrals[fi];
        abs_errs[r] = std::abs(errs[r]);
        csv << n << "," << fns[fi].name << "," << r << "," << pairings[fi][r]
            << "," << errs[r] << "\n";
        scatter.x.push_back(n);
        scatter.y.push_back(abs_errs[r]);
      }
      const Stats err_stats = replica_stats(errs);
      const Stats abs_stats = replica_stats(abs_errs);
      stats_by_fn[fi].push_back(err_stats);
      agg << n << "," << fns[fi].name << "," << err_stats.mean << ","
          << abs_stats.mean << "," << err_stats.se << "\n";
      plot_series[fi].x.push_back(n);
      plot_series[fi].y.push_back(abs_stats.mean);
    }
  }

  // F = 1: the pairing is conserved mass, zero up to initial-sampling noise
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const auto& s = stats_by_fn[0][ni];
    checks.push_back({"mass_pairing_3sigma_n" + std::to_string(cfg.n_list[ni]),
                      std::abs(s.mean) <= 3.0 * s.se,
                      "mean=" + fmtnum(s.mean) + " se=" + fmtnum(s.se)});
  }
  // decreasing replica-mean |error| with n for the nonconstant test function
  for (std::size_t ni = 0; ni + 1 < cfg.n_list.size(); ++ni) {
    const double a = plot_series[1].y[ni];
    const double b = plot_series[1].y[ni + 1];
    checks.push_back({"pairing_error_decreasing_cos_n" +
                          std::to_string(cfg.n_list[ni]) + "_to_" +
                          std::to_string(cfg.n_list[ni + 1]),
                      b < a, fmtnum(a) + " -> " + fmtnum(b)});
  }

  write_file(fs::path(cfg.out_dir) / "hydro_limit_replicas.csv", csv.str());
  write_file(fs::path(cfg.out_dir) / "hydro_limit.csv", agg.str());
  bundle.csv_paths.push_back("hydro_limit_replicas.csv");
  bundle.csv_paths.push_back("hydro_limit.csv");
  plot_series.push_back(scatter);
  bundle.plots.push_back({"hydro_limit.svg",
                          {"Empirical pairing error vs n", "n",
                           "|pairing - integral|", true},
                          plot_series});
  bundle.summary["ref_integrals"] = ref_integrals;
  bundle.summary["checks"] = checks_to_json(checks);
  bundle.all_passed = all_passed(checks);
  return bundle;
}

ResultBundle experiment_one_block(const ExperimentConfig& cfg) {
  ResultBundle bundle;
  bundle.config = cfg;
  std::vector<Check> checks;

  const auto cps = linspace_checkpoints(cfg.t_end, 32);
  const RngStream base(cfg.seed);
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,ell,mean_abs_statistic,se\n";
  std::vector<Stats> stats;
  svg::Series series{"replica mean |statistic|", {}, {}};

  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    ScalingParams params(n, cfg.alpha);
    const int ell = std::max<int>(
        2, static_cast<int>(std::lround(std::pow(n, cfg.delta))));
    std::vector<double> F_values(n);
    for (int x = 0; x < n; ++x)
      F_values[x] = std::cos(2.0 * kPi * x / n);
    DensityProfile flat(n, cfg.rho);
    std::vector<double> per_replica(cfg.replicas);
    parallel_replicas(cfg.replicas, cfg.threads, [&](int r) {
      RngStream rng = base.split(ni * 1'000'003ULL + static_cast<std::uint64_t>(r));
      Configuration eta0 = zrp::sample_product_measure(flat, params, rng);
      zrp::SimState sim(params, std::move(eta0), rng.split(0));
      const auto rec = sim.simulate(cfg.t_end, cps);
      double acc = 0.0;
      for (const auto& snap : rec.snapshots)
        acc += std::abs(
            zrp::one_block_statistic(snap, ell, F_values, params, cfg.M)
                .replacement);
      per_replica[r] = acc / static_cast<double>(rec.snapshots.size());
    });
    const Stats s = replica_stats(per_replica);
    stats.push_back(s);
    csv << n << "," << ell << "," << s.mean << "," << s.se << "\n";
    series.x.push_back(n);
    series.y.push_back(s.mean);
  }

  for (std::size_t i = 0; i + 1 < stats.size(); ++i) {
    const double diff = stats[i].mean - stats[i + 1].mean;
    const double sigma =
        std::sqrt(stats[i].se * stats[i].se + stats[i + 1].se * stats[i + 1].se);
    checks.push_back({"one_block_decay_" + std::to_string(cfg.n_list[i]) +
                          "_to_" + std::to_string(cfg.n_list[i + 1]),
                      diff > 2.0 * sigma,
                      "diff=" + fmtnum(diff) + " sigma=" + fmtnum(sigma)});
  }

  write_file(fs::path(cfg.out_dir) / "one_block.csv", csv.str());
  bundle.csv_paths.push_back("one_block.csv");
  bundle.plots.push_back({"one_block.svg",
                          {"One-block statistic decay", "n",
                           "time-averaged |statistic|", false},
                          {series}});
  bundle.summary["checks"] = checks_to_json(checks);
  bundle.all_passed = all_passed(checks);
  return bundle;
}

ResultBundle experiment_concentration(const ExperimentConfig& cfg) {
  ResultBundle bundle;
  bundle.config = cfg;
  std::vector<Check> checks;

  const RngStream base(cfg.seed);
  std::vector<std::int64_t> sums(cfg.replicas);
  parallel_replicas(cfg.replicas, cfg.threads, [&](int r) {
    RngStream rng = base.split(static_cast<std::uint64_t>(r));
    std::int64_t s = 0;
    for (int i = 0; i < cfg.ell; ++i)
      s += rng.geometric_mean(cfg.rho * cfg.nalpha);
    sums[r] = s;
  });

  const ldp::RateFunctionParams params(cfg.rho, cfg.rho, cfg.rho);
  std::ostringstream csv;
  csv.precision(17);
  csv << "side,a,threshold,empirical,bound\n";
  svg::Series emp_u{"empirical upper", {}, {}, true}, bnd_u{"bound upper", {}, {}},
      emp_l{"empirical lower", {}, {}, true}, bnd_l{"bound lower", {}, {}};

  auto tail_freq = [&](double threshold, bool upper) {
    std::int64_t c = 0;
    for (auto s : sums)
      if (upper ? (static_cast<double>(s) >= threshold)
                : (static_cast<double>(s) <= threshold))
        ++c;
    return static_cast<double>(c) / static_cast<double>(sums.size());
  };

  for (double a : cfg.a_upper) {
    const double thr = cfg.ell * a * cfg.nalpha;
    const double freq = tail_freq(thr, true);
    const double bound = ldp::chernoff_upper(params, cfg.nalpha, cfg.ell, a);
    csv << "upper," << a << "," << thr << "," << freq << "," << bound << "\n";
    emp_u.x.push_back(a);
    emp_u.y.push_back(freq);
    bnd_u.x.push_back(a);
    bnd_u.y.push_back(bound);
    checks.push_back({"upper_tail_a_" + fmtnum(a), freq <= bound,
                      "freq=" + fmtnum(freq) + " bound=" + fmtnum(bound)});
  }
  for (double a : cfg.a_lower) {
    const double thr = cfg.ell * a * cfg.nalpha;
    const double freq = tail_freq(thr, false);
    const double bound = ldp::chernoff_lower(params, cfg.nalpha, cfg.ell, a);
    csv << "lower," << a << "," << thr << "," << freq << "," << bound << "\n";
    emp_l.x.push_back(a);
    emp_l.y.push_back(freq);
    bnd_l.x.push_back(a);
    bnd_l.y.push_back(bound);
    checks.push_back({"lower_tail_a_" + fmtnum(a), freq <= bound,
                      "freq=" + fmtnum(freq) + " bound=" + fmtnum(bound)});
  }

  write_file(fs::path(cfg.out_dir) / "concentration.csv", csv.str());
  bundle.csv_paths.push_back("concentration.csv");
  bundle.plots.push_back({"concentration.svg",
                          {"Tail frequencies vs Chernoff bounds", "a",
                           "probability", true},
                          {bnd_u, emp_u, bnd_l, emp_l}});
  bundle.summary["checks"] = checks_to_json(checks);
  bundle.all_passed = all_passed(checks);
  return bundle;
}

ResultBundle experiment_spectral_gap(const ExperimentConfig& cfg) {
  ResultBundle bundle;
  bundle.config = cfg;
  std::vector<Check> checks;

  const auto rows = ens::gap_sweep(cfg.max_sum);
  double min_scaled = std::numeric_limits<double>::infinity();
  bool all_positive = true;
  double gap21 = 0.0;
  svg::Series series{"gap (ell+k)^2", {}, {}, true};
  for (const auto& r : rows) {
    all_positive = all_positive && r.gap > 0.0;
    min_scaled = std::min(min_scaled, r.gap_scaled);
    if (r.ell == 2 && r.k == 1) gap21 = r.gap;
    series.x.push_back(static_cast<double>(r.ell + r.k));
    series.y.push_back(r.gap_scaled);
  }
  checks.push_back({"all_gaps_positive", all_positive, ""});
  checks.push_back({"gap_2_1_equals_2", std::abs(gap21 - 2.0) <= 1e-12,
                    "gap=" + fmtnum(gap21)});
  checks.push_back({"scaled_gap_bounded_below", min_scaled > 0.0,
                    "min=" + fmtnum(min_scaled)});

  write_file(fs::path(cfg.out_dir) / "spectral_gap.csv",
             ens::gap_table_csv(rows));
  bundle.csv_paths.push_back("spectral_gap.csv");
  bundle.plots.push_back({"spectral_gap.svg",
                          {"Scaled spectral gaps", "ell+k", "gap (ell+k)^2",
                           false},
                          {series}});
  bundle.summary["kappa0_estimate"] = 1.0 / min_scaled;
  bundle.summary["min_scaled_gap"] = min_scaled;
  bundle.summary["checks"] = checks_to_json(checks);
  bundle.all_passed = all_passed(checks);
  return bundle;
}

ResultBundle experiment_entropy_decay(const ExperimentConfig& cfg) {
  ResultBundle bundle;
  bundle.config = cfg;
  std::vector<Check> checks;

  const std::vector<double> cps = {cfg.t_end};
  const auto reference = mol::reference_fde_solve(cfg.profile.as_function(),
                                                  cfg.n_ref, cfg.t_end, cps);
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,entropy_per_site\n";
  std::vector<double> entropies;
  svg::Series series{"H/n", {}, {}};
  for (int n : cfg.n_list) {
    if (cfg.n_ref % n != 0)
      throw ConfigError("entropy-decay: n_ref must be a multiple of each n");
    ScalingParams params(n, cfg.alpha);
    mol::MolProblem problem{params, cfg.profile.materialize(n), {}};
    const auto sol = mol::integrate(problem, cfg.t_end, cps);
    const int f = cfg.n_ref / n;
    DensityProfile u_ref(n);
    for (int x = 0; x < n; ++x)
      u_ref[x] = reference.profiles.back()[x * f];
    const double h = ldp::relative_entropy_geometric_products(
                         sol.profiles.back(), u_ref, params.n_alpha) /
                     n;
    entropies.push_back(h);
    csv << n << "," << h << "\n";
    series.x.push_back(n);
    series.y.push_back(h);
  }
  for (std::size_t i = 0; i + 1 < entropies.size(); ++i)
    checks.push_back({"entropy_decreasing_" + std::to_string(cfg.n_list[i]) +
                          "_to_" + std::to_string(cfg.n_list[i + 1]),
                      entropies[i + 1] < entropies[i],
                      fmtnum(entropies[i]) + " -> " + fmtnum(entropies[i + 1])});

  write_file(fs::path(cfg.out_dir) / "entropy_decay.csv", csv.str());
  bundle.csv_paths.push_back("entropy_decay.csv");
  bundle.plots.push_back({"entropy_decay.svg",
                          {"Relative entropy per site vs n", "n", "H/n", true},
                          {series}});
  bundle.summary["entropy_per_site"] = entropies;
  bundle.summary["checks"] = checks_to_json(checks);
  bundle.all_passed = all_passed(checks);
  return bundle;
}

}  // namespace

std::function<double(double)> ProfileSpec::as_function() const {
  if (family == "constant") {
    const double v = value;
    return [v](double) { return v; };
  }
  if (family == "sine") {
    const double o = offset, a = amplitude;
    return [o, a](double x) { return o + a * std::sin(2.0 * kPi * x); };
  }
  throw ConfigError("unknown profile family: " + family);
}

DensityProfile ProfileSpec::materialize(int n) const {
  const auto f = as_function();
  DensityProfile u(n);
  for (int x = 0; x < n; ++x) u[x] = f(static_cast<double>(x) / n);
  return u;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("experiment", cfg.experiment);
  get("n_list", cfg.n_list);
  get("alpha", cfg.alpha);
  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    if (p.contains("family")) cfg.profile.family = p.at("family").get<std::string>();
    if (p.contains("value")) cfg.profile.value = p.at("value").get<double>();
    if (p.contains("offset")) cfg.profile.offset = p.at("offset").get<double>();
    if (p.contains("amplitude"))
      cfg.profile.amplitude = p.at("amplitude").get<double>();
  }
  get("delta", cfg.delta);
  get("eps", cfg.eps);
  get("eps0", cfg.eps0);
  get("M", cfg.M);
  get("replicas", cfg.replicas);
  get("seed", cfg.seed);
  get("t_end", cfg.t_end);
  get("checkpoints", cfg.checkpoints);
  get("n_ref", cfg.n_ref);
  get("max_sum", cfg.max_sum);
  get("ell", cfg.ell);
  get("nalpha", cfg.nalpha);
  get("rho", cfg.rho);
  get("a_upper", cfg.a_upper);
  get("a_lower", cfg.a_lower);
  get("out", cfg.out_dir);
  get("threads", cfg.threads);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["n_list"] = n_list;
  j["alpha"] = alpha;
  j["profile"] = {{"family", profile.family},
                  {"value", profile.value},
                  {"offset", profile.offset},
                  {"amplitude", profile.amplitude}};
  j["delta"] = delta;
  j["eps"] = eps;
  j["eps0"] = eps0;
  j["M"] = M;
  j["replicas"] = replicas;
  j["seed"] = seed;
  j["t_end"] = t_end;
  j["n_ref"] = n_ref;
  j["max_sum"] = max_sum;
  j["ell"] = ell;
  j["nalpha"] = nalpha;
  j["rho"] = rho;
  j["a_upper"] = a_upper;
  j["a_lower"] = a_lower;
  j["out"] = out_dir;
  j["threads"] = threads;
  return j;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> known = {
      "mol-convergence", "hydro-limit",  "one-block",
      "concentration",   "spectral-gap", "entropy-decay"};
  if (std::find(known.begin(), known.end(), experiment) == known.end())
    throw ConfigError("unknown experiment: " + experiment);
  const bool needs_n_list = experiment == "mol-convergence" ||
                            experiment == "hydro-limit" ||
                            experiment == "one-block" ||
                            experiment == "entropy-decay";
  if (needs_n_list && n_list.empty())
    throw ConfigError("experiment '" + experiment + "' requires a non-empty n_list");
  if (profile.family == "sine" && profile.offset - profile.amplitude <= 0.0)
    throw ConfigError("sine profile requires offset - amplitude > 0");
  if (profile.family == "constant" && profile.value <= 0.0)
    throw ConfigError("constant profile requires value > 0");
  if (experiment == "one-block" && !(2.0 * alpha + 3.0 * delta < 2.0))
    throw ConfigError("one-block requires 2*alpha + 3*delta < 2");
  if (replicas < 1) throw ConfigError("replicas must be >= 1");
  if (t_end < 0.0) throw ConfigError("t_end must be >= 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

ResultBundle run_experiment(const ExperimentConfig& config) {
  config.validate();
  ResultBundle bundle;
  if (config.experiment == "mol-convergence")
    bundle = experiment_mol_convergence(config);
  else if (config.experiment == "hydro-limit")
    bundle = experiment_hydro_limit(config);
  else if (config.experiment == "one-block")
    bundle = experiment_one_block(config);
  else if (config.experiment == "concentration")
    bundle = experiment_concentration(config);
  else if (config.experiment == "spectral-gap")
    bundle = experiment_spectral_gap(config);
  else
    bundle = experiment_entropy_decay(config);

  bundle.summary["experiment"] = config.experiment;
  bundle.summary["config"] = config.to_json();
  bundle.summary["csv_paths"] = bundle.csv_paths;
  bundle.summary["all_passed"] = bundle.all_passed;
  write_file(fs::path(config.out_dir) / "summary.json",
             bundle.summary.dump(2) + "\n");
  return bundle;
}

std::vector<std::string> emit_plots(const ResultBundle& bundle) {
  for (const auto& p : bundle.csv_paths)
    if (!fs::exists(fs::path(bundle.config.out_dir) / p))
      throw IoError("missing CSV: " + p);
  std::vector<std::string> paths;
  for (const auto& job : bundle.plots) {
    const fs::path path = fs::path(bundle.config.out_dir) / job.filename;
    write_file(path, svg::render_plot(job.spec, job.series));
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace fdehydro::cli
