#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fdehydro/errors.hpp"

namespace fdehydro {

// Lattice size n and mass exponent alpha, with the derived powers that
// govern every rescaling: n_alpha = n^alpha and speedup = n^(2+2alpha).
struct ScalingParams {
  int n;
  double alpha;
  double n_alpha;
  double speedup;

  ScalingParams(int n_, double alpha_) : n(n_), alpha(alpha_) {
    if (n < 2) throw DomainError("ScalingParams: n must be >= 2");
    if (alpha < 0.0) throw DomainError("ScalingParams: alpha must be >= 0");
    n_alpha = std::exp(alpha * std::log(static_cast<double>(n)));
    speedup = std::exp((2.0 + 2.0 * alpha) * std::log(static_cast<double>(n)));
  }
};

using TorusIndex = int;

inline TorusIndex torus_wrap(int x, int n) {
  int r = x % n;
  return r < 0 ? r + n : r;
}

inline bool torus_neighbors(TorusIndex x, TorusIndex y, int n) {
  int d = torus_wrap(y - x, n);
  return d == 1 || d == n - 1;
}

inline int torus_distance(TorusIndex x, TorusIndex y, int n) {
  int d = torus_wrap(y - x, n);
  return d <= n - d ? d : n - d;
}

// Integer particle counts per torus site, with a cached total.
class Configuration {
 public:
  explicit Configuration(int n) : counts_(n, 0), total_(0) {}
  explicit Configuration(std::vector<std::int64_t> counts)
      : counts_(std::move(counts)) {
    total_ = 0;
    for (auto c : counts_) {
      if (c < 0) throw DomainError("Configuration: negative count");
      total_ += c;
    }
  }

  int n() const { return static_cast<int>(counts_.size()); }
  std::int64_t operator[](TorusIndex x) const { return counts_[x]; }
  std::int64_t total() const { return total_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  void add(TorusIndex x, std::int64_t delta) {
    if (counts_[x] + delta < 0)
      throw DomainError("Configuration: count would become negative");
    counts_[x] += delta;
    total_ += delta;
  }

  bool operator==(const Configuration& o) const { return counts_ == o.counts_; }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_;
};

// Real-valued non-negative field on the discrete torus.
struct DensityProfile {
  std::vector<double> values;

  DensityProfile() = default;
  explicit DensityProfile(int n, double v = 0.0) : values(n, v) {}
  explicit DensityProfile(std::vector<double> v) : values(std::move(v)) {}

  int n() const { return static_cast<int>(values.size()); }
  double operator[](int x) const { return values[x]; }
  double& operator[](int x) { return values[x]; }
};

// The move eta^{x,y}: one particle jumps from x to a neighboring site y.
Configuration jump_configuration(const Configuration& eta, TorusIndex x,
                                 TorusIndex y);

// Coordinatewise partial order eta1 <= eta2.
bool partial_order_leq(const Configuration& eta1, const Configuration& eta2);

// Serialization: CSV with one row per site, and a compact JSON record
// {n, alpha, data:[...]}.
std::string configuration_to_csv(const Configuration& eta);
std::string configuration_to_json(const Configuration& eta, double alpha);
Configuration configuration_from_json(const std::string& text);

std::string profile_to_csv(const DensityProfile& u);
std::string profile_to_json(const DensityProfile& u, double alpha);
DensityProfile profile_from_json(const std::string& text);

}  // namespace fdehydro
