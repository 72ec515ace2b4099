#include <doctest.h>

#include <cmath>

#include "fdehydro/ensemble.hpp"

using namespace fdehydro;
using namespace fdehydro::ens;

TEST_CASE("state counting and enumeration") {
  CHECK(canonical_state_count(2, 1) == 2);
  CHECK(canonical_state_count(3, 2) == 6);
  CHECK(canonical_state_count(1, 7) == 1);
  CHECK_THROWS_AS(canonical_state_count(0, 1), DomainError);

  auto box = enumerate_canonical(2, 1);
  REQUIRE(box.states.size() == 2);
  CHECK(box.states[0] == std::vector<std::int64_t>{0, 1});
  CHECK(box.states[1] == std::vector<std::int64_t>{1, 0});

  auto box32 = enumerate_canonical(3, 2);
  CHECK(box32.states.size() == 6);
  for (const auto& s : box32.states) {
    std::int64_t total = 0;
    for (auto v : s) total += v;
    CHECK(total == 2);
  }
  // lexicographically sorted
  for (std::size_t i = 1; i < box32.states.size(); ++i)
    CHECK(box32.states[i - 1] < box32.states[i]);

  auto single = enumerate_canonical(1, 7);
  CHECK(single.states == std::vector<std::vector<std::int64_t>>{{7}});

  CHECK_THROWS_AS(enumerate_canonical(10, 50, 1000), TooLargeError);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0, 5) == Rational(0, 1));
  CHECK(Rational(3, 4).to_double() == doctest::Approx(0.75));
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("equivalence of ensembles") {
  CHECK(canonical_expectation_g(2, 1) == Rational(1, 2));
  CHECK(canonical_expectation_g(3, 2) == Rational(1, 2));
  CHECK(canonical_expectation_g(4, 0) == Rational(0, 1));
  // exactly k/(ell-1+k) across a broad range
  for (int ell = 1; ell <= 6; ++ell)
    for (std::int64_t k = 0; k <= 10; ++k) {
      const Rational expected =
          k == 0 ? Rational(0, 1) : Rational(k, ell - 1 + k);
      CHECK(canonical_expectation_g(ell, k) == expected);
    }
}

TEST_CASE("generator structure") {
  auto box = enumerate_canonical(2, 1);
  auto L = build_generator(box);
  CHECK(L(0, 0) == doctest::Approx(-1.0));
  CHECK(L(0, 1) == doctest::Approx(1.0));
  CHECK(L(1, 0) == doctest::Approx(1.0));
  CHECK(L(1, 1) == doctest::Approx(-1.0));

  auto trivial = build_generator(enumerate_canonical(1, 3));
  CHECK(trivial.rows() == 1);
  CHECK(trivial(0, 0) == 0.0);

  const std::vector<std::pair<int, std::int64_t>> cells = {
      {3, 4}, {4, 3}, {2, 9}, {5, 2}};
  for (auto [ell, k] : cells) {
    auto b = enumerate_canonical(ell, k);
    REQUIRE(b.states.size() <= 500);
    auto G = build_generator(b);
    CHECK((G - G.transpose()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    for (Eigen::Index i = 0; i < G.rows(); ++i) {
      CHECK(G.row(i).sum() == doctest::Approx(0.0).epsilon(1e-12));
      for (Eigen::Index j = 0; j < G.cols(); ++j)
        if (i != j) CHECK((G(i, j) == 0.0 || G(i, j) == 1.0 || G(i, j) == 2.0));
    }
  }
}

TEST_CASE("spectral gap") {
  CHECK(spectral_gap(enumerate_canonical(2, 1)) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(spectral_gap(enumerate_canonical(2, 6)) > 0.0);
  CHECK_THROWS_AS(spectral_gap(enumerate_canonical(1, 4)), DegenerateError);
  // one-dimensional kernel: second eigenvalue strictly positive everywhere
  for (int ell = 2; ell <= 5; ++ell)
    for (std::int64_t k = 1; k <= 5; ++k)
      CHECK(spectral_gap(enumerate_canonical(ell, k)) > 1e-8);
}

TEST_CASE("gap sweep and kappa0") {
  auto rows = gap_sweep(8);
  bool found21 = false;
  for (const auto& r : rows) {
    CHECK(r.gap > 0.0);
    CHECK(r.gap_scaled == doctest::Approx(r.gap * (r.ell + r.k) * (r.ell + r.k)));
    if (r.ell == 2 && r.k == 1) {
      found21 = true;
      CHECK(r.gap == doctest::Approx(2.0).epsilon(1e-13));
      CHECK(r.gap_scaled == doctest::Approx(18.0).epsilon(1e-12));
    }
  }
  CHECK(found21);
  CHECK_THROWS_AS(gap_sweep(2), DomainError);

  CHECK(kappa0_estimate(3) >= 1.0 / 18.0 - 1e-12);
  CHECK(kappa0_estimate(6) >= kappa0_estimate(3) - 1e-15);
  CHECK(kappa0_estimate(8) >= kappa0_estimate(6) - 1e-15);
  CHECK(std::isfinite(kappa0_estimate(8)));

  const auto csv = gap_table_csv(rows);
  CHECK(csv.rfind("ell,k,states,gap,gap_scaled\n", 0) == 0);
  const auto pos = csv.find("\n2,1,2,");
  REQUIRE(pos != std::string::npos);
  const double gap21 = std::stod(csv.substr(pos + 7));
  CHECK(gap21 == doctest::Approx(2.0).epsilon(1e-12));
}
