#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "fdehydro/errors.hpp"
#include "fdehydro/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rescaled zero-range dynamics, fast-diffusion MOL solvers and "
               "concentration/spectral toolbox"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  bool have_seed = false;

  const std::vector<std::string> experiments = {
      "mol-convergence", "hydro-limit",  "one-block",
      "concentration",   "spectral-gap", "entropy-decay"};
  for (const auto& name : experiments) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "override config seed")
        ->each([&](const std::string&) { have_seed = true; });
    sub->add_option("--out", out_dir, "override output directory");
    sub->add_option("--threads", threads, "override worker thread count");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string chosen = app.get_subcommands().front()->get_name();

  try {
    auto cfg = fdehydro::cli::ExperimentConfig::from_json_file(config_path);
    cfg.experiment = chosen;
    if (have_seed) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;

    const auto bundle = fdehydro::cli::run_experiment(cfg);
    const auto plots = fdehydro::cli::emit_plots(bundle);

    std::printf("experiment: %s\n", chosen.c_str());
    for (const auto& p : bundle.csv_paths)
      std::printf("csv: %s/%s\n", cfg.out_dir.c_str(), p.c_str());
    for (const auto& p : plots) std::printf("svg: %s\n", p.c_str());
    std::printf("summary: %s/summary.json\n", cfg.out_dir.c_str());
    for (const auto& c : bundle.summary.at("checks"))
      std::printf("[%s] %s %s\n",
                  c.at("passed").get<bool>() ? "pass" : "FAIL",
                  c.at("name").get<std::string>().c_str(),
                  c.at("detail").get<std::string>().c_str());
    std::printf("%s\n", bundle.all_passed ? "ALL CHECKS PASSED" : "CHECKS FAILED");
    return bundle.all_passed ? 0 : 1;
  } catch (const fdehydro::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
}
