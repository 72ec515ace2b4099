#include <doctest.h>

#include <cmath>
#include <vector>

#include "fdehydro/measures.hpp"
#include "fdehydro/mol.hpp"
#include "fdehydro/rng.hpp"

using namespace fdehydro;
using namespace fdehydro::mol;

namespace {

constexpr double kPi = 3.14159265358979323846;

DensityProfile sine_profile(int n, double offset = 1.0, double amp = 0.5) {
  DensityProfile u(n);
  for (int x = 0; x < n; ++x)
    u[x] = offset + amp * std::sin(2.0 * kPi * x / n);
  return u;
}

}  // namespace

TEST_CASE("discrete laplacian") {
  std::vector<double> c(8, 3.0);
  for (double v : discrete_laplacian(c, 8)) CHECK(v == 0.0);

  std::vector<double> f = {0.0, 1.0, 2.0, 1.0};
  auto lap = discrete_laplacian(f, 4);
  CHECK(lap[0] == doctest::Approx(32.0).epsilon(1e-14));
  CHECK(lap[2] == doctest::Approx(-32.0).epsilon(1e-14));

  CHECK_THROWS_AS(discrete_laplacian(f, 5), SizeMismatchError);

  // eigenfunction check: Delta_n cos ~ -(2 pi)^2 cos at n=256
  const int n = 256;
  std::vector<double> g(n);
  for (int x = 0; x < n; ++x) g[x] = std::cos(2.0 * kPi * x / n);
  auto lg = discrete_laplacian(g, n);
  for (int x = 0; x < n; ++x) {
    if (std::abs(g[x]) < 0.1) continue;
    CHECK(std::abs(lg[x] / (-4.0 * kPi * kPi * g[x]) - 1.0) <= 1e-3);
  }
}

TEST_CASE("mol rhs") {
  ScalingParams params(4, 0.0);  // n^alpha = 1
  DensityProfile c(4, 2.0);
  for (double v : mol_rhs(c, params)) CHECK(v == doctest::Approx(0.0));

  DensityProfile u(std::vector<double>{1.0, 2.0, 1.0, 2.0});
  auto rhs = mol_rhs(u, params);
  CHECK(rhs[0] == doctest::Approx(16.0 / 3.0).epsilon(1e-13));
  CHECK(rhs[1] == doctest::Approx(-16.0 / 3.0).epsilon(1e-13));

  RngStream rng(17);
  ScalingParams p64(64, 0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    DensityProfile w(64);
    double l1 = 0.0;
    for (int x = 0; x < 64; ++x) w[x] = 0.2 + 2.0 * rng.uniform01();
    auto r = mol_rhs(w, p64);
    double s = 0.0;
    for (double v : r) {
      s += v;
      l1 += std::abs(v);
    }
    CHECK(std::abs(s) <= 1e-12 * std::max(l1, 1.0));
  }
}

TEST_CASE("energy") {
  ScalingParams p(8, 0.5);
  CHECK(energy(DensityProfile(8, 1.3), p) == doctest::Approx(0.0));

  ScalingParams p2(2, 0.0);
  DensityProfile u(std::vector<double>{1.0, 3.0});
  CHECK(energy(u, p2) == doctest::Approx(0.25).epsilon(1e-14));

  // quadrature oracle: E_n(u( . /n)) -> int u'^2/(s+u)^4 dx
  for (int n : {64, 256, 1024}) {
    ScalingParams ps(n, 0.5);
    const double s = 1.0 / ps.n_alpha;
    auto u_n = sine_profile(n);
    const double en = energy(u_n, ps);
    const int q = 200000;
    double integral = 0.0;
    for (int i = 0; i < q; ++i) {
      const double x = (i + 0.5) / q;
      const double uu = 1.0 + 0.5 * std::sin(2.0 * kPi * x);
      const double up = kPi * std::cos(2.0 * kPi * x);
      const double su = s + uu;
      integral += up * up / (su * su * su * su);
    }
    integral /= q;
    CHECK(std::abs(en / integral - 1.0) <= 40.0 / n);
  }
}

TEST_CASE("psi and F fields") {
  ScalingParams p4(4, 0.0);
  DensityProfile c(4, 1.5);
  for (double v : psi_field(c, p4)) CHECK(v == doctest::Approx(0.0));
  for (double v : f_field(c, p4)) CHECK(v == doctest::Approx(0.0));

  DensityProfile u(std::vector<double>{1.0, 2.0, 1.0, 2.0});
  auto psi = psi_field(u, p4);
  auto F = f_field(u, p4);
  CHECK(psi[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK(F[0] == doctest::Approx(32.0 / 3.0).epsilon(1e-13));

  // identity psi * n^alpha / (phi_n phi_n') = F
  ScalingParams p64(64, 0.5);
  auto w = sine_profile(64, 1.0, 0.4);
  auto pw = psi_field(w, p64);
  auto Fw = f_field(w, p64);
  for (int x = 0; x < 64; ++x) {
    const double lhs = pw[x] * p64.n_alpha /
                       (ldp::phi_n(w[x], p64.n_alpha) *
                        ldp::phi_n_prime(w[x], p64.n_alpha));
    CHECK(lhs == doctest::Approx(Fw[x]).epsilon(1e-10));
  }

  DensityProfile with_zero(std::vector<double>{1.0, 0.0, 1.0, 1.0});
  CHECK_THROWS_AS(f_field(with_zero, p4), DivisionByZeroError);
}

TEST_CASE("time window") {
  ScalingParams p(8, 0.5);
  auto w = time_window(DensityProfile(8, 2.0), p);
  CHECK(w.psi_bar == 0.0);
  CHECK(std::isinf(w.T));

  ScalingParams p4(4, 0.0);
  DensityProfile u(std::vector<double>{1.0, 2.0, 1.0, 2.0});
  auto tw = time_window(u, p4);
  CHECK(tw.psi_bar == doctest::Approx(48.0).epsilon(1e-13));
  CHECK(tw.u_bar == doctest::Approx(2.0));
  CHECK(tw.T == doctest::Approx(1.0 / 576.0).epsilon(1e-13));
}

TEST_CASE("integration basics") {
  ScalingParams p(16, 0.5);
  MolProblem constant{p, DensityProfile(16, 2.0), {}};
  auto sol = integrate(constant, 0.01, {0.0, 0.005, 0.01});
  CHECK(sol.times.size() == 3);
  for (const auto& prof : sol.profiles)
    for (int x = 0; x < 16; ++x) CHECK(prof[x] == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(integrate(constant, 0.01, {0.005, 0.001}),
                  InvalidCheckpointError);

  // comparison principle: ordered initial data stay ordered
  MolProblem lo{p, sine_profile(16, 1.0, 0.4), {}};
  MolProblem hi{p, sine_profile(16, 1.5, 0.4), {}};
  std::vector<double> cps = {0.002, 0.004, 0.006};
  auto sl = integrate(lo, 0.006, cps);
  auto sh = integrate(hi, 0.006, cps);
  for (std::size_t i = 0; i < cps.size(); ++i)
    for (int x = 0; x < 16; ++x) CHECK(sl.profiles[i][x] <= sh.profiles[i][x] + 1e-9);

  // mass conservation and maximum principle along the run
  const auto& d0 = sl.diagnostics.front();
  double u0min = 1e18, u0max = -1e18, mass0 = 0.0;
  for (int x = 0; x < 16; ++x) {
    u0min = std::min(u0min, lo.u0[x]);
    u0max = std::max(u0max, lo.u0[x]);
    mass0 += lo.u0[x];
  }
  for (const auto& d : sl.diagnostics) {
    CHECK(std::abs(d.mass - mass0) <= 1e-10 * mass0);
    CHECK(d.min_u >= u0min - 1e-12);
    CHECK(d.max_u <= u0max + 1e-12);
  }
  CHECK(d0.energy <= energy(lo.u0, p) + 1e-9);

  // energy decreasing along checkpoints
  for (std::size_t i = 1; i < sl.diagnostics.size(); ++i)
    CHECK(sl.diagnostics[i].energy <= sl.diagnostics[i - 1].energy + 1e-9);
}

TEST_CASE("psi stays within twice its initial bound on its window") {
  // Psi(t) = max |psi_t| obeys Psi(t) <= 2 Psi(0) for
  // t <= 1/(4 Psi(0) (n^-alpha + u_bar)).
  ScalingParams p(32, 0.5);
  auto u0 = sine_profile(32);
  double psi0 = 0.0, ubar = 0.0;
  for (double v : psi_field(u0, p)) psi0 = std::max(psi0, std::abs(v));
  for (int x = 0; x < 32; ++x) ubar = std::max(ubar, u0[x]);
  REQUIRE(psi0 > 0.0);
  const double T0 = 1.0 / (4.0 * psi0 * (1.0 / p.n_alpha + ubar));
  std::vector<double> cps;
  for (int i = 1; i <= 20; ++i) cps.push_back(T0 * i / 20.0);
  MolProblem prob{p, u0, {}};
  auto sol = integrate(prob, T0, cps);
  for (const auto& d : sol.diagnostics)
    CHECK(d.sup_psi <= 2.0 * psi0 * (1.0 + 1e-6));
}

TEST_CASE("psi evolution equation") {
  // d/dt psi = phi_n'(u) Delta_n psi - 2 (n^-alpha + u) psi^2
  ScalingParams p(16, 0.5);
  auto u0 = sine_profile(16);
  const double t0 = 2e-4, h = 1e-6;
  MolProblem prob{p, u0, {}};
  auto sol = integrate(prob, t0 + h, {t0 - h, t0, t0 + h});
  auto psi_m = psi_field(sol.profiles[0], p);
  auto psi_0 = psi_field(sol.profiles[1], p);
  auto psi_p = psi_field(sol.profiles[2], p);
  auto lap_psi = discrete_laplacian(psi_0, 16);
  const double s = 1.0 / p.n_alpha;
  double scale = 0.0;
  for (int x = 0; x < 16; ++x)
    scale = std::max(scale, std::abs((psi_p[x] - psi_m[x]) / (2.0 * h)));
  for (int x = 0; x < 16; ++x) {
    const double dpsi = (psi_p[x] - psi_m[x]) / (2.0 * h);
    const double su = s + sol.profiles[1][x];
    const double rhs = lap_psi[x] / (su * su) - 2.0 * su * psi_0[x] * psi_0[x];
    CHECK(std::abs(dpsi - rhs) <= 1e-3 * scale);
  }
}

TEST_CASE("holder diagnostics are finite") {
  ScalingParams p(32, 0.5);
  auto u0 = sine_profile(32);
  MolProblem prob{p, u0, {}};
  auto w = time_window(u0, p);
  std::vector<double> cps = {w.T / 2.0, w.T};
  auto sol = integrate(prob, w.T, cps);
  double k0 = 0.0;
  for (const auto& prof : sol.profiles)
    for (int x = 0; x < 32; ++x)
      for (int y = x + 1; y < 32; ++y) {
        const double dist = static_cast<double>(torus_distance(x, y, 32)) / 32.0;
        k0 = std::max(k0, std::abs(prof[y] - prof[x]) / std::sqrt(dist));
      }
  CHECK(k0 > 0.0);
  CHECK(std::isfinite(k0));
  MESSAGE("fitted Holder-1/2 constant K0 = ", k0);
}

TEST_CASE("reference solver and sup error") {
  std::vector<double> cps = {0.0025, 0.005};
  auto u0f = [](double x) { return 1.0 + 0.5 * std::sin(2.0 * kPi * x); };

  auto c = reference_fde_solve([](double) { return 2.0; }, 64, 0.005, cps);
  for (const auto& prof : c.profiles)
    for (int x = 0; x < 64; ++x) CHECK(prof[x] == doctest::Approx(2.0).epsilon(1e-12));

  auto coarse = reference_fde_solve(u0f, 512, 0.005, cps);
  auto fine = reference_fde_solve(u0f, 1024, 0.005, cps);
  CHECK(sup_error(coarse, coarse) == 0.0);
  CHECK(sup_error(coarse, fine) <= 1e-3);
  CHECK(sup_error(coarse, fine) > 0.0);

  auto odd = reference_fde_solve(u0f, 96, 0.005, cps);
  CHECK_THROWS_AS(sup_error(odd, fine), GridMismatchError);
  auto short_cp = reference_fde_solve(u0f, 512, 0.005, {0.005});
  CHECK_THROWS_AS(sup_error(short_cp, fine), GridMismatchError);
}

TEST_CASE("stiffness and negativity are reported") {
  ScalingParams p(64, 0.5);
  MolProblem prob{p, sine_profile(64), {}};
  prob.opts.max_steps = 10;  // force a failure
  CHECK_THROWS_AS(integrate(prob, 0.01, {0.01}), StiffnessFailure);
}

TEST_CASE("solution serialization") {
  ScalingParams p(4, 0.5);
  MolProblem prob{p, DensityProfile(4, 1.0), {}};
  auto sol = integrate(prob, 0.001, {0.001});
  CHECK(sol.to_csv().rfind("time,site,value\n", 0) == 0);
  CHECK(sol.diagnostics_to_csv().rfind("time,mass,energy", 0) == 0);
  CHECK(sol.to_json_diagnostics().find("rhs_evals") != std::string::npos);
}
