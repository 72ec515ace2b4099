#include "fdehydro/ensemble.hpp"

#include <algorithm>
#include <sstream>

namespace fdehydro::ens {

std::int64_t canonical_state_count(int ell, std::int64_t k) {
  if (ell < 1 || k < 0)
    throw DomainError("canonical_state_count: need ell >= 1, k >= 0");
  // C(k+ell-1, ell-1)
  unsigned __int128 c = 1;
  for (int i = 1; i <= ell - 1; ++i) {
    c = c * static_cast<unsigned __int128>(k + i) / i;
    if (c > static_cast<unsigned __int128>(INT64_MAX))
      throw TooLargeError("canonical_state_count: overflow");
  }
  return static_cast<std::int64_t>(c);
}

CanonicalBox enumerate_canonical(int ell, std::int64_t k, std::int64_t cap) {
  const std::int64_t count = canonical_state_count(ell, k);
  if (count > cap)
    throw TooLargeError("enumerate_canonical: state space exceeds cap");
  CanonicalBox box;
  box.ell = ell;
  box.k = k;
  box.states.reserve(count);
  std::vector<std::int64_t> state(ell, 0);
  // lexicographic recursion over site values
  auto rec = [&](auto&& self, int pos, std::int64_t remaining) -> void {
    if (pos == ell - 1) {
      state[pos] = remaining;
      box.states.push_back(state);
      return;
    }
    for (std::int64_t v = 0; v <= remaining; ++v) {
      state[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, k);
  return box;
}

namespace {

std::size_t state_index(const CanonicalBox& box,
                        const std::vector<std::int64_t>& s) {
  const auto it = std::lower_bound(box.states.begin(), box.states.end(), s);
  return static_cast<std::size_t>(it - box.states.begin());
}

}  // namespace

Rational canonical_expectation_g(int ell, std::int64_t k, std::int64_t cap) {
  const auto box = enumerate_canonical(ell, k, cap);
  std::int64_t occupied = 0;
  for (const auto& s : box.states)
    if (s[0] > 0) ++occupied;
  return Rational(occupied, static_cast<std::int64_t>(box.states.size()));
}

Eigen::MatrixXd build_generator(const CanonicalBox& box) {
  const auto m = static_cast<Eigen::Index>(box.states.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  std::vector<std::int64_t> target;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& s = box.states[i];
    for (int x = 0; x + 1 < box.ell; ++x) {
      for (int d = 0; d < 2; ++d) {
        const int from = d == 0 ? x : x + 1;
        const int to = d == 0 ? x + 1 : x;
        if (s[from] == 0) continue;
        target = s;
        --target[from];
        ++target[to];
        const auto j = static_cast<Eigen::Index>(state_index(box, target));
        L(i, j) += 1.0;
        L(i, i) -= 1.0;
      }
    }
  }
  return L;
}

double spectral_gap(const CanonicalBox& box) {
  if (box.states.size() < 2)
    throw DegenerateError("spectral_gap: state space has fewer than 2 states");
  const Eigen::MatrixXd L = build_generator(box);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(-L);
  const auto& ev = solver.eigenvalues();
  // eigenvalues ascending; the kernel is one-dimensional on a connected box
  return ev[1];
}

std::vector<GapRow> gap_sweep(int max_sum, std::int64_t cap) {
  if (max_sum < 3) throw DomainError("gap_sweep: max_sum must be >= 3");
  std::vector<GapRow> rows;
  for (int ell = 2; ell < max_sum; ++ell) {
    for (std::int64_t k = 1; ell + k <= max_sum; ++k) {
      CanonicalBox box = enumerate_canonical(ell, k, cap);
      GapRow r;
      r.ell = ell;
      r.k = k;
      r.states = static_cast<std::int64_t>(box.states.size());
      r.gap = spectral_gap(box);
      const double s = static_cast<double>(ell) + static_cast<double>(k);
      r.gap_scaled = r.gap * s * s;
      rows.push_back(r);
    }
  }
  return rows;
}

double kappa0_estimate(int max_sum, std::int64_t cap) {
  const auto rows = gap_sweep(max_sum, cap);
  double kappa0 = 0.0;
  for (const auto& r : rows) kappa0 = std::max(kappa0, 1.0 / r.gap_scaled);
  return kappa0;
}

std::string gap_table_csv(const std::vector<GapRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "ell,k,states,gap,gap_scaled\n";
  for (const auto& r : rows)
    os << r.ell << "," << r.k << "," << r.states << "," << r.gap << ","
       << r.gap_scaled << "\n";
  return os.str();
}

}  // namespace fdehydro::ens
