#include "fdehydro/mol.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fdehydro::mol {

namespace {

// phi_n(u) = n^a - 1/(n^-a + u) exactly; differences of phi_n are computed
// through p(u) = -1/(shift + u), which also covers the limiting equation
// (shift = 0, p = -1/u) since Delta kills the constant offset.
struct System {
  int n;
  double shift;     // n^-alpha, or 0 for the limiting equation
  double nalpha;    // unused when limiting
  bool limiting;

  void rhs(const std::vector<double>& u, std::vector<double>& out,
           std::vector<double>& p) const {
    const double n2 = static_cast<double>(n) * n;
    for (int x = 0; x < n; ++x) p[x] = -1.0 / (shift + u[x]);
    for (int x = 0; x < n; ++x) {
      const int xp = x + 1 == n ? 0 : x + 1;
      const int xm = x == 0 ? n - 1 : x - 1;
      out[x] = n2 * (p[xp] + p[xm] - 2.0 * p[x]);
    }
  }

  Diagnostics diagnostics(const std::vector<double>& u) const {
    Diagnostics d{};
    d.mass = 0.0;
    d.min_u = u[0];
    d.max_u = u[0];
    std::vector<double> p(n), lap(n);
    rhs_raw(u, p, lap);
    d.energy = 0.0;
    d.sup_psi = 0.0;
    d.sup_f = 0.0;
    const double nn = static_cast<double>(n);
    for (int x = 0; x < n; ++x) {
      d.mass += u[x];
      d.min_u = std::min(d.min_u, u[x]);
      d.max_u = std::max(d.max_u, u[x]);
      const int xp = x + 1 == n ? 0 : x + 1;
      const double dp = p[xp] - p[x];
      d.energy += nn * dp * dp;
      const double s = shift + u[x];
      d.sup_psi = std::max(d.sup_psi, std::abs(lap[x] / (s * s)));
      if (limiting) {
        d.sup_f = std::max(d.sup_f, std::abs(lap[x]));
      } else {
        const double phi_val = nalpha * nalpha * u[x] / (1.0 + nalpha * u[x]);
        if (phi_val > 0.0)
          d.sup_f = std::max(d.sup_f, std::abs(nalpha * lap[x] / phi_val));
      }
    }
    return d;
  }

 private:
  void rhs_raw(const std::vector<double>& u, std::vector<double>& p,
               std::vector<double>& lap) const {
    const double n2 = static_cast<double>(n) * n;
    for (int x = 0; x < n; ++x) p[x] = -1.0 / (shift + u[x]);
    for (int x = 0; x < n; ++x) {
      const int xp = x + 1 == n ? 0 : x + 1;
      const int xm = x == 0 ? n - 1 : x - 1;
      lap[x] = n2 * (p[xp] + p[xm] - 2.0 * p[x]);
    }
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

MolSolution run_integration(const System& sys, std::vector<double> u,
                            const IntegratorOptions& opts, double t_end,
                            const std::vector<double>& checkpoints) {
  const int n = sys.n;
  MolSolution sol;
  sol.n = n;
  sol.nalpha = sys.nalpha;
  sol.limiting = sys.limiting;

  double prev = 0.0;
  for (double c : checkpoints) {
    if (c < prev || c > t_end)
      throw InvalidCheckpointError("integrate: checkpoints must be sorted in [0, t_end]");
    prev = c;
  }

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n),
      tmp(n), p(n), u5(n);
  std::uint64_t evals = 0, steps = 0;

  auto record = [&](double t) {
    sol.times.push_back(t);
    sol.profiles.push_back(DensityProfile(u));
    sol.diagnostics.push_back(sys.diagnostics(u));
  };

  double t = 0.0;
  std::size_t ci = 0;
  while (ci < checkpoints.size() && checkpoints[ci] == 0.0) {
    record(0.0);
    ++ci;
  }

  // initial step size from the rhs magnitude
  sys.rhs(u, k1, p);
  ++evals;
  double fmax = 1e-12, umax = 1e-12;
  for (int x = 0; x < n; ++x) {
    fmax = std::max(fmax, std::abs(k1[x]));
    umax = std::max(umax, std::abs(u[x]));
  }
  double h = std::min({0.01 * umax / fmax, opts.max_step, t_end > 0 ? t_end : 1.0});

  while (t < t_end) {
    const double t_target =
        ci < checkpoints.size() ? checkpoints[ci] : t_end;
    while (t < t_target) {
      if (++steps > opts.max_steps)
        throw StiffnessFailure("integrate: max step count exceeded");
      bool clipped = false;
      double hs = h;
      if (t + hs >= t_target) {
        hs = t_target - t;
        clipped = true;
      }
      sys.rhs(u, k1, p);
      for (int x = 0; x < n; ++x) tmp[x] = u[x] + hs * a21 * k1[x];
      sys.rhs(tmp, k2, p);
      for (int x = 0; x < n; ++x)
        tmp[x] = u[x] + hs * (a31 * k1[x] + a32 * k2[x]);
      sys.rhs(tmp, k3, p);
      for (int x = 0; x < n; ++x)
        tmp[x] = u[x] + hs * (a41 * k1[x] + a42 * k2[x] + a43 * k3[x]);
      sys.rhs(tmp, k4, p);
      for (int x = 0; x < n; ++x)
        tmp[x] = u[x] + hs * (a51 * k1[x] + a52 * k2[x] + a53 * k3[x] +
                              a54 * k4[x]);
      sys.rhs(tmp, k5, p);
      for (int x = 0; x < n; ++x)
        tmp[x] = u[x] + hs * (a61 * k1[x] + a62 * k2[x] + a63 * k3[x] +
                              a64 * k4[x] + a65 * k5[x]);
      sys.rhs(tmp, k6, p);
      for (int x = 0; x < n; ++x)
        u5[x] = u[x] + hs * (b1 * k1[x] + b3 * k3[x] + b4 * k4[x] +
                             b5 * k5[x] + b6 * k6[x]);
      sys.rhs(u5, k7, p);
      evals += 6;

      double err = 0.0;
      for (int x = 0; x < n; ++x) {
        const double e = hs * (e1 * k1[x] + e3 * k3[x] + e4 * k4[x] +
                               e5 * k5[x] + e6 * k6[x] + e7 * k7[x]);
        const double sc =
            opts.abs_tol + opts.rel_tol * std::max(std::abs(u[x]), std::abs(u5[x]));
        err = std::max(err, std::abs(e) / sc);
      }

      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      if (err <= 1.0) {
        t = clipped ? t_target : t + hs;
        std::swap(u, u5);
        for (int x = 0; x < n; ++x)
          if (u[x] < 0.0)
            throw NegativityBreach("integrate: negative value; tolerance too loose");
        // a checkpoint-clipped step must not shrink the proposal
        if (!clipped) h = std::min(hs * fac, opts.max_step);
      } else {
        h = hs * fac;
        if (h < opts.min_step)
          throw StiffnessFailure("integrate: step size collapsed below minimum");
      }
    }
    if (ci < checkpoints.size()) {
      record(t_target);
      ++ci;
      // duplicate checkpoints
      while (ci < checkpoints.size() && checkpoints[ci] == t_target) {
        record(t_target);
        ++ci;
      }
    }
  }
  sol.rhs_evals = evals;
  return sol;
}

}  // namespace

std::vector<double> discrete_laplacian(const std::vector<double>& f, int n) {
  if (static_cast<int>(f.size()) != n)
    throw SizeMismatchError("discrete_laplacian: size mismatch");
  std::vector<double> out(n);
  const double n2 = static_cast<double>(n) * n;
  for (int x = 0; x < n; ++x) {
    const int xp = x + 1 == n ? 0 : x + 1;
    const int xm = x == 0 ? n - 1 : x - 1;
    out[x] = n2 * (f[xp] + f[xm] - 2.0 * f[x]);
  }
  return out;
}

std::vector<double> mol_rhs(const DensityProfile& u,
                            const ScalingParams& params) {
  System sys{params.n, 1.0 / params.n_alpha, params.n_alpha, false};
  std::vector<double> out(params.n), p(params.n);
  sys.rhs(u.values, out, p);
  return out;
}

MolSolution integrate(const MolProblem& problem, double t_end,
                      const std::vector<double>& checkpoints) {
  System sys{problem.params.n, 1.0 / problem.params.n_alpha,
             problem.params.n_alpha, false};
  return run_integration(sys, problem.u0.values, problem.opts, t_end,
                         checkpoints);
}

double energy(const DensityProfile& u, const ScalingParams& params) {
  const int n = u.n();
  const double s = 1.0 / params.n_alpha;
  double e = 0.0;
  for (int x = 0; x < n; ++x) {
    const int xp = x + 1 == n ? 0 : x + 1;
    const double d = -1.0 / (s + u[xp]) + 1.0 / (s + u[x]);
    e += n * d * d;
  }
  return e;
}

std::vector<double> psi_field(const DensityProfile& u,
                              const ScalingParams& params) {
  const int n = u.n();
  const double s = 1.0 / params.n_alpha;
  std::vector<double> p(n);
  for (int x = 0; x < n; ++x) p[x] = -1.0 / (s + u[x]);
  std::vector<double> lap = discrete_laplacian(p, n);
  for (int x = 0; x < n; ++x) {
    const double su = s + u[x];
    lap[x] /= su * su;
  }
  return lap;
}

std::vector<double> f_field(const DensityProfile& u,
                            const ScalingParams& params) {
  const int n = u.n();
  const double s = 1.0 / params.n_alpha;
  std::vector<double> p(n);
  for (int x = 0; x < n; ++x) p[x] = -1.0 / (s + u[x]);
  std::vector<double> lap = discrete_laplacian(p, n);
  for (int x = 0; x < n; ++x) {
    const double phi_val =
        params.n_alpha * params.n_alpha * u[x] / (1.0 + params.n_alpha * u[x]);
    if (phi_val == 0.0)
      throw DivisionByZeroError("f_field: phi_n(u) = 0 at a site");
    lap[x] = params.n_alpha * lap[x] / phi_val;
  }
  return lap;
}

TimeWindow time_window(const DensityProfile& u0, const ScalingParams& params) {
  const int n = u0.n();
  const double s = 1.0 / params.n_alpha;
  std::vector<double> p(n);
  for (int x = 0; x < n; ++x) p[x] = -1.0 / (s + u0[x]);
  const std::vector<double> lap = discrete_laplacian(p, n);
  TimeWindow w{};
  w.psi_bar = 0.0;
  w.u_bar = 0.0;
  for (int x = 0; x < n; ++x) {
    const double su = s + u0[x];
    w.psi_bar = std::max(w.psi_bar, std::abs(lap[x]) * su * su);
    w.u_bar = std::max(w.u_bar, u0[x]);
  }
  w.T = w.psi_bar == 0.0
            ? std::numeric_limits<double>::infinity()
            : 1.0 / (4.0 * w.psi_bar * (s + w.u_bar));
  return w;
}

MolSolution reference_fde_solve(const std::function<double(double)>& u0,
                                int N_ref, double t_end,
                                const std::vector<double>& checkpoints,
                                const IntegratorOptions& opts) {
  std::vector<double> u(N_ref);
  for (int x = 0; x < N_ref; ++x)
    u[x] = u0(static_cast<double>(x) / N_ref);
  System sys{N_ref, 0.0, 1.0, true};
  return run_integration(sys, std::move(u), opts, t_end, checkpoints);
}

double sup_error(const MolSolution& sol_n, const MolSolution& reference) {
  if (reference.n % sol_n.n != 0)
    throw GridMismatchError("sup_error: reference grid not divisible by n");
  if (sol_n.times.size() != reference.times.size())
    throw GridMismatchError("sup_error: checkpoint mismatch");
  const int f = reference.n / sol_n.n;
  double m = 0.0;
  for (std::size_t i = 0; i < sol_n.times.size(); ++i) {
    if (std::abs(sol_n.times[i] - reference.times[i]) > 1e-12)
      throw GridMismatchError("sup_error: checkpoint times differ");
    for (int x = 0; x < sol_n.n; ++x)
      m = std::max(m, std::abs(sol_n.profiles[i][x] - reference.profiles[i][x * f]));
  }
  return m;
}

std::string MolSolution::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "time,site,value\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    for (int x = 0; x < n; ++x)
      os << times[i] << "," << x << "," << profiles[i][x] << "\n";
  return os.str();
}

std::string MolSolution::diagnostics_to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "time,mass,energy,min_u,max_u,sup_psi,sup_f\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& d = diagnostics[i];
    os << times[i] << "," << d.mass << "," << d.energy << "," << d.min_u << ","
       << d.max_u << "," << d.sup_psi << "," << d.sup_f << "\n";
  }
  return os.str();
}

std::string MolSolution::to_json_diagnostics() const {
  nlohmann::json j;
  j["n"] = n;
  j["limiting"] = limiting;
  j["times"] = times;
  j["rhs_evals"] = rhs_evals;
  nlohmann::json d = nlohmann::json::array();
  for (const auto& dg : diagnostics)
    d.push_back({{"mass", dg.mass},
                 {"energy", dg.energy},
                 {"min_u", dg.min_u},
                 {"max_u", dg.max_u},
                 {"sup_psi", dg.sup_psi},
                 {"sup_f", dg.sup_f}});
  j["diagnostics"] = d;
  return j.dump();
}

}  // namespace fdehydro::mol
