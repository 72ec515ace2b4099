#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdehydro/errors.hpp"

namespace fdehydro::ens {

// Exact rational, reduced; large enough for the enumeration caps here.
struct Rational {
  std::int64_t num;
  std::int64_t den;

  Rational(std::int64_t n = 0, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  double to_double() const { return static_cast<double>(num) / den; }
};

// The finite box Lambda_ell = {1..ell} with open boundary and exactly k
// particles: state space Sigma_{k,ell} under its uniform measure.
struct CanonicalBox {
  int ell;
  std::int64_t k;
  std::vector<std::vector<std::int64_t>> states;  // lexicographic order
};

inline constexpr std::int64_t kDefaultStateCap = 200'000;

std::int64_t canonical_state_count(int ell, std::int64_t k);

// Deterministic lexicographic enumeration of Sigma_{k,ell}.
CanonicalBox enumerate_canonical(int ell, std::int64_t k,
                                 std::int64_t cap = kDefaultStateCap);

// E_{mu_{k,ell}}[g(eta(1))] by brute-force enumeration, exact in rationals.
// Equals k/(ell-1+k).
Rational canonical_expectation_g(int ell, std::int64_t k,
                                 std::int64_t cap = kDefaultStateCap);

// Generator L_ell as a dense symmetric matrix with zero row sums.
Eigen::MatrixXd build_generator(const CanonicalBox& box);

// Smallest strictly positive eigenvalue of -L_ell.
double spectral_gap(const CanonicalBox& box);

struct GapRow {
  int ell;
  std::int64_t k;
  std::int64_t states;
  double gap;
  double gap_scaled;  // gap * (ell+k)^2
};

// Sweep all feasible (ell,k) with ell >= 2, k >= 1, ell + k <= max_sum.
std::vector<GapRow> gap_sweep(int max_sum,
                              std::int64_t cap = kDefaultStateCap);

// max over the sweep of 1/(gap (ell+k)^2): empirical lower-envelope
// estimate of the universal constant in the spectral gap inequality.
double kappa0_estimate(int max_sum, std::int64_t cap = kDefaultStateCap);

std::string gap_table_csv(const std::vector<GapRow>& rows);

}  // namespace fdehydro::ens
