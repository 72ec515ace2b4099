#pragma once

#include <cmath>
#include <cstdint>

namespace fdehydro {

// splitmix64, used to expand seeds and to derive substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable xoshiro256++ stream. Identical seed and call sequence give
// identical outputs on every platform. Substreams for replica k are
// derived with split(k); replicas are reproducible independently of
// thread scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  RngStream split(std::uint64_t stream) const {
    std::uint64_t sm = s_[0] ^ (0x9e3779b97f4a7c15ULL + stream * 0xd1342543de82ef95ULL);
    RngStream r(0);
    for (auto& w : r.s_) w = splitmix64(sm);
    return r;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in (0,1); never returns 0 or 1.
  double uniform01() {
    const std::uint64_t u = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(u) + 0.5) * 0x1p-53;
  }

  // Uniform integer in [0, k), k >= 1.
  std::uint64_t uniform_below(std::uint64_t k) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * k) >> 64);
  }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  // Geometric with pmf (1-theta) theta^k on {0,1,...}, mean m = theta/(1-theta),
  // drawn by inverse CDF so that draws are monotone in m for a shared uniform.
  std::int64_t geometric_mean(double m) { return geometric_mean(m, uniform01()); }

  static std::int64_t geometric_mean(double m, double u) {
    if (m <= 0.0) return 0;
    const double theta = m / (1.0 + m);
    // P(X >= j) = theta^j; invert the survival function.
    const double k = std::floor(std::log(u) / std::log(theta));
    return k < 0 ? 0 : static_cast<std::int64_t>(k);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace fdehydro
