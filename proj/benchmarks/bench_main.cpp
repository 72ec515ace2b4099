#include <benchmark/benchmark.h>

#include <cmath>

#include "fdehydro/mol.hpp"
#include "fdehydro/rng.hpp"
#include "fdehydro/zrp.hpp"

using namespace fdehydro;

namespace {

constexpr double kPi = 3.14159265358979323846;

void BM_gillespie_events(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ScalingParams params(n, 0.5);
  RngStream rng(1);
  DensityProfile u(n, 1.0);
  auto eta = zrp::sample_product_measure(u, params, rng);
  // pick a horizon giving ~1e6 events per iteration
  const double rate = 2.0 * params.speedup * n;
  const double t_chunk = 1e6 / rate;
  zrp::SimState sim(params, std::move(eta), rng.split(0));
  double t = 0.0;
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto before = sim.event_count();
    t += t_chunk;
    sim.simulate(t, {});
    events += sim.event_count() - before;
  }
  state.counters["events_per_s"] =
      benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}

void BM_mol_rhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ScalingParams params(n, 0.5);
  DensityProfile u(n);
  for (int x = 0; x < n; ++x)
    u[x] = 1.0 + 0.5 * std::sin(2.0 * kPi * x / n);
  for (auto _ : state) {
    auto rhs = mol::mol_rhs(u, params);
    benchmark::DoNotOptimize(rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_integrate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ScalingParams params(n, 0.5);
  DensityProfile u(n);
  for (int x = 0; x < n; ++x)
    u[x] = 1.0 + 0.5 * std::sin(2.0 * kPi * x / n);
  mol::MolProblem prob{params, u, {}};
  for (auto _ : state) {
    auto sol = mol::integrate(prob, 0.001, {0.001});
    benchmark::DoNotOptimize(sol.rhs_evals);
  }
}

}  // namespace

BENCHMARK(BM_gillespie_events)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mol_rhs)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_integrate)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
