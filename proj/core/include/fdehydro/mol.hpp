#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fdehydro/lattice.hpp"

namespace fdehydro::mol {

struct IntegratorOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-14;
  std::uint64_t max_steps = 200'000'000;
};

// Semidiscrete problem du/dt = Delta_n phi_n(u) on the torus.
struct MolProblem {
  ScalingParams params;
  DensityProfile u0;
  IntegratorOptions opts;
};

struct Diagnostics {
  double mass;
  double energy;
  double min_u;
  double max_u;
  double sup_psi;
  double sup_f;
};

struct MolSolution {
  int n;
  double nalpha;      // ignored when limiting
  bool limiting;      // true for the reference solver of the limit equation
  std::vector<double> times;
  std::vector<DensityProfile> profiles;
  std::vector<Diagnostics> diagnostics;
  std::uint64_t rhs_evals = 0;

  std::string to_csv() const;               // time, site, value
  std::string diagnostics_to_csv() const;
  std::string to_json_diagnostics() const;
};

// Delta_n f(x) = n^2 (f(x+1) + f(x-1) - 2 f(x)), periodic.
std::vector<double> discrete_laplacian(const std::vector<double>& f, int n);

// Delta_n (phi_n o u); sums to zero up to roundoff.
std::vector<double> mol_rhs(const DensityProfile& u, const ScalingParams& params);

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration of the
// semidiscrete system, with diagnostics recorded at each checkpoint.
MolSolution integrate(const MolProblem& problem, double t_end,
                      const std::vector<double>& checkpoints);

// E_n(u) = sum_x n (phi_n(u(x+1)) - phi_n(u(x)))^2.
double energy(const DensityProfile& u, const ScalingParams& params);

// psi(x) = phi_n'(u(x)) Delta_n phi_n(u)(x)
std::vector<double> psi_field(const DensityProfile& u,
                              const ScalingParams& params);
// F(x) = n^alpha Delta_n phi_n(u)(x) / phi_n(u(x)); requires u > 0.
std::vector<double> f_field(const DensityProfile& u,
                            const ScalingParams& params);

// Provable horizon T = 1/(4 Psi_bar (n^-alpha + u_bar)); T = +inf for
// constant initial data.
struct TimeWindow {
  double T;
  double psi_bar;
  double u_bar;
};
TimeWindow time_window(const DensityProfile& u0, const ScalingParams& params);

// Fine-grid method of lines for the limiting equation du/dt = Delta(-1/u).
MolSolution reference_fde_solve(const std::function<double(double)>& u0,
                                int N_ref, double t_end,
                                const std::vector<double>& checkpoints,
                                const IntegratorOptions& opts = {});

// Max over shared checkpoints and sites of |u^n - u_ref| with nodal
// subsampling of the reference grid (N_ref must be a multiple of n).
double sup_error(const MolSolution& sol_n, const MolSolution& reference);

}  // namespace fdehydro::mol
