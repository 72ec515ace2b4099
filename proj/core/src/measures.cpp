#include "fdehydro/measures.hpp"

#include <algorithm>
#include <cmath>

namespace fdehydro::ldp {

double GeometricLaw::pmf(std::int64_t k) const {
  if (k < 0) return 0.0;
  return (1.0 - theta) * std::pow(theta, static_cast<double>(k));
}

double theta_from_mean(double mean, double nalpha) {
  if (mean <= 0.0) throw DomainError("theta_from_mean: mean must be > 0");
  const double m = mean * nalpha;
  return m / (1.0 + m);
}

double phi(double rho) { return rho / (1.0 + rho); }

double phi_n(double u, double nalpha) { return nalpha * phi(nalpha * u); }

double phi_n_prime(double u, double nalpha) {
  const double s = 1.0 / nalpha + u;
  return 1.0 / (s * s);
}

double rate_exponential(double rho, double a) {
  if (rho <= 0.0) throw DomainError("rate_exponential: rho must be > 0");
  if (a <= 0.0) throw DomainError("rate_exponential: a must be > 0");
  // a/rho - 1 - ln(a/rho), evaluated as r - log1p(r) for stability near a=rho.
  const double r = a / rho - 1.0;
  return r - std::log1p(r);
}

double rate_geometric(double rho, double a) {
  if (rho <= 0.0) throw DomainError("rate_geometric: rho must be > 0");
  if (a < 0.0) throw DomainError("rate_geometric: a must be >= 0");
  if (a == 0.0) return std::log1p(rho);
  // a ln(a(1+rho)/(rho(1+a))) - ln((1+a)/(1+rho))
  return a * (std::log(a / rho) + std::log1p(rho) - std::log1p(a)) -
         std::log1p(a) + std::log1p(rho);
}

double mgf_geometric(double rho, double lambda) {
  if (rho <= 0.0) throw DomainError("mgf_geometric: rho must be > 0");
  const double d = 1.0 - rho * std::expm1(lambda);
  if (d <= 0.0) return kInfinity;
  return 1.0 / d;
}

double chernoff_upper_exponent(double rho_plus, double nalpha, double a) {
  const double corr = (1.0 / rho_plus - 1.0 / a);
  return -rate_exponential(rho_plus, a) + (a / nalpha) * corr * corr;
}

double chernoff_lower_exponent(double rho_minus, double nalpha, double a) {
  const double corr = (1.0 / rho_minus - 1.0 / a);
  return -rate_exponential(rho_minus, a) + (a / nalpha) * corr * corr;
}

double chernoff_upper(const RateFunctionParams& params, double nalpha, int ell,
                      double a) {
  if (a < params.rho_plus) throw DomainError("chernoff_upper: need a >= rho+");
  const double b = std::exp(ell * chernoff_upper_exponent(params.rho_plus, nalpha, a));
  return std::min(b, 1.0);
}

double chernoff_lower(const RateFunctionParams& params, double nalpha, int ell,
                      double a) {
  if (a <= 0.0 || a > params.rho_minus)
    throw DomainError("chernoff_lower: need 0 < a <= rho-");
  const double b = std::exp(ell * chernoff_lower_exponent(params.rho_minus, nalpha, a));
  return std::min(b, 1.0);
}

double m_n(double u, double v, double nalpha) {
  const double s = 1.0 / nalpha;
  const double d = v - u;
  const double su = s + u;
  return -(d * d) / (su * su * (s + v));
}

double m_n_defining(double u, double v, double nalpha) {
  return phi_n(v, nalpha) - phi_n(u, nalpha) -
         phi_n_prime(u, nalpha) * (v - u);
}

double mn_bound_constant(double eps, double eps0) {
  if (eps <= 0.0 || eps0 <= 0.0)
    throw DomainError("mn_bound_constant: eps, eps0 must be > 0");
  return std::max(4.0 / eps, 2.0 / (eps0 * eps * eps));
}

bool verify_mn_bound(double u, double v, double nalpha, double C) {
  if (u == v) return true;
  return std::abs(m_n(u, v, nalpha)) <= C * rate_exponential(u, v);
}

bool rate_comparison_quadratic(double rho, double z) {
  if (!(z > rho / 2.0))
    throw DomainError("rate_comparison_quadratic: need z > rho/2");
  const double q = (z - rho) / rho;
  return rate_exponential(rho, z) <= q * q;
}

bool rate_comparison_scaled(double rho, double rho_plus, double a) {
  if (!(0.0 < rho && rho <= rho_plus))
    throw DomainError("rate_comparison_scaled: need 0 < rho <= rho+");
  const double k_plus = (rho_plus / rho) * (rho_plus / rho);
  if (!(a >= k_plus * rho))
    throw DomainError("rate_comparison_scaled: need a >= K+ rho");
  return rate_exponential(rho, a) <=
         16.0 * k_plus * rate_exponential(rho_plus, a);
}

TiltedRateMax tilted_rate_max(double rho, double rho_tilde, double kappa,
                              double kappa_tilde) {
  if (!(rho > 0.0 && rho_tilde > 0.0))
    throw DomainError("tilted_rate_max: rho, rho~ must be > 0");
  if (!(0.0 < kappa && kappa <= kappa_tilde && kappa_tilde <= 1.0))
    throw DomainError("tilted_rate_max: need 0 < kappa <= kappa~ <= 1");
  if (!(kappa_tilde * rho > kappa * rho_tilde))
    throw DomainError("tilted_rate_max: need kappa~ rho > kappa rho~");
  const double r = kappa / kappa_tilde;
  TiltedRateMax out;
  out.z_star = (1.0 - r) * rho * rho_tilde / (rho - r * rho_tilde);
  const double denom = kappa_tilde * rho - kappa * rho_tilde;
  const double diff = rho - rho_tilde;
  out.bound = kappa * kappa_tilde * (kappa_tilde - kappa / 2.0) *
              diff * diff / (denom * denom);
  return out;
}

double relative_entropy_geometric_products(const DensityProfile& profile1,
                                           const DensityProfile& profile2,
                                           double nalpha) {
  if (profile1.n() != profile2.n())
    throw SizeMismatchError("relative_entropy_geometric_products: size mismatch");
  double h = 0.0;
  for (int x = 0; x < profile1.n(); ++x) {
    const double m1 = nalpha * profile1[x];
    const double m2 = nalpha * profile2[x];
    if (m1 <= 0.0 || m2 <= 0.0)
      throw DomainError("relative_entropy_geometric_products: nonpositive mean");
    h += rate_geometric(m2, m1);
  }
  return h;
}

}  // namespace fdehydro::ldp
