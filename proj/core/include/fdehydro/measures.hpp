#pragma once

#include <limits>
#include <utility>

#include "fdehydro/errors.hpp"
#include "fdehydro/lattice.hpp"

namespace fdehydro::ldp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Geometric law on {0,1,2,...} with pmf (1-theta) theta^k and mean
// theta/(1-theta). Parametrized by its mean.
struct GeometricLaw {
  double mean;
  double theta;

  explicit GeometricLaw(double mean_) : mean(mean_) {
    if (mean <= 0.0) throw DomainError("GeometricLaw: mean must be > 0");
    theta = mean / (1.0 + mean);
  }

  double pmf(std::int64_t k) const;
};

// Parameters for the rate-comparison bounds: a reference mean rho and the
// block extremes rho_minus <= rho <= rho_plus, with K_plus = (rho_plus/rho)^2.
struct RateFunctionParams {
  double rho;
  double rho_minus;
  double rho_plus;

  RateFunctionParams(double rho_, double rho_minus_, double rho_plus_)
      : rho(rho_), rho_minus(rho_minus_), rho_plus(rho_plus_) {
    if (!(0.0 < rho_minus && rho_minus <= rho && rho <= rho_plus))
      throw DomainError("RateFunctionParams: need 0 < rho- <= rho <= rho+");
  }
  double k_plus() const { return (rho_plus / rho) * (rho_plus / rho); }
};

// theta giving a geometric law of mean rho * n^alpha.
double theta_from_mean(double mean, double nalpha);

// phi(rho) = rho/(1+rho) and its rescalings phi_n(u) = n^a phi(n^a u),
// phi_n'(u) = (n^-a + u)^-2.
double phi(double rho);
double phi_n(double u, double nalpha);
double phi_n_prime(double u, double nalpha);

// Rate function of an exponential distribution of mean rho.
double rate_exponential(double rho, double a);

// Rate function of a geometric distribution of mean rho.
double rate_geometric(double rho, double a);

// Moment generating function of a geometric law of mean rho; +inf outside
// lambda < ln((1+rho)/rho).
double mgf_geometric(double rho, double lambda);

// Explicit Chernoff-type tail bounds for a sum of ell independent
// geometrics with means rho_i n^alpha, upper tail at level a >= rho+ and
// lower tail at level a <= rho-. Both return a probability bound in (0,1].
double chernoff_upper(const RateFunctionParams& params, double nalpha, int ell,
                      double a);
double chernoff_lower(const RateFunctionParams& params, double nalpha, int ell,
                      double a);

// Exponents of the above bounds (per-sample log scale), exposed for tests.
double chernoff_upper_exponent(double rho_plus, double nalpha, double a);
double chernoff_lower_exponent(double rho_minus, double nalpha, double a);

// Second-order Taylor remainder of phi_n: M_n(u,v) = phi_n(v) - phi_n(u)
// - phi_n'(u)(v-u), in closed form.
double m_n(double u, double v, double nalpha);
// The defining three-term formula, kept separate as an algebraic cross-check.
double m_n_defining(double u, double v, double nalpha);

// C = max{4/eps, 2/(eps0 eps^2)} and the bound |M_n(u,v)| <= C I_u(v) on
// u in [eps, 1/eps], v >= eps0.
double mn_bound_constant(double eps, double eps0);
bool verify_mn_bound(double u, double v, double nalpha, double C);

// (i) I_rho(z) <= ((z-rho)/rho)^2 for z > rho/2.
bool rate_comparison_quadratic(double rho, double z);
// (ii) I_rho(a) <= 16 K+ I_{rho+}(a) for a >= K+ rho, K+ = (rho+/rho)^2.
bool rate_comparison_scaled(double rho, double rho_plus, double a);

// Maximizer z* and upper bound for f(z) = kappa I_rho(z) - kappa~ I_rho~(z).
struct TiltedRateMax {
  double z_star;
  double bound;
};
TiltedRateMax tilted_rate_max(double rho, double rho_tilde, double kappa,
                              double kappa_tilde);

// Relative entropy H(mu1|mu2) between product-geometric measures with
// per-site means n^alpha * profile_i(x). Each site contributes
// rate_geometric(m2(x), m1(x)).
double relative_entropy_geometric_products(const DensityProfile& profile1,
                                           const DensityProfile& profile2,
                                           double nalpha);

}  // namespace fdehydro::ldp
