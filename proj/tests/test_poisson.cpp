#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "weylchar/poisson.hpp"

using namespace weylchar;

namespace {

/// Direct summation with plain factorials; only valid for small t and few terms.
double naive_stirling_sum(double t, int terms) {
  double sum = 0.0;
  double prev = 1.0;  // t^0 / 0!
  for (int n = 1; n <= terms; ++n) {
    const double cur = prev * t / n;
    sum += std::abs(prev - cur);
    prev = cur;
  }
  return sum;
}

BlockUnitary random_stable_unitary(std::mt19937_64& rng, const StableAlgebra& a, int n) {
  std::uniform_real_distribution<double> angle(0.0, 1.0);
  BlockUnitary u;
  u.level = n;
  for (auto d : a.base.levels[a.level]) {
    std::vector<double> turns;
    for (std::int64_t k = 0; k < d * n; ++k) turns.push_back(angle(rng));
    u.blocks.push_back(DiagonalUnitary::from_doubles(turns));
  }
  return u;
}

}  // namespace

TEST_CASE("kernel examples") {
  CHECK(kernel({1.0}, {3}, {3}) == doctest::Approx(std::exp(-1.0)));
  CHECK(kernel({1.0, 2.0}, {2, 0}, {1, 5}) == 0.0);
  CHECK(kernel({1.0, 2.0}, {0, 0}, {1, 0}) == doctest::Approx(std::exp(-3.0)));
  CHECK_THROWS_AS(kernel({0.0}, {0}, {0}), PreconditionError);
}

TEST_CASE("kernel rows sum to one within the truncation tail") {
  for (int m = 1; m <= 3; ++m) {
    std::vector<double> a;
    for (int i = 0; i < m; ++i) a.push_back(0.5 + i);
    const int cut = 30;
    // Row sums factor over coordinates.
    double row = 1.0;
    double tail = 0.0;
    for (double ai : a) {
      double s = 0.0;
      for (long k = 0; k <= cut; ++k) s += kernel({ai}, {0}, {k});
      row *= s;
      tail += poisson_tail(ai, cut);
    }
    CHECK(std::abs(row - 1.0) <= tail + 1e-14);
  }
}

TEST_CASE("Poisson mass and tail") {
  CHECK(poisson_mass(2.0, 3) == doctest::Approx(std::exp(-2.0) * 8 / 6));
  CHECK(poisson_mass(0.0, 0) == 1.0);
  CHECK(poisson_mass(5.0, -1) == 0.0);
  double head = 0.0;
  for (long k = 0; k <= 7; ++k) head += poisson_mass(3.0, k);
  CHECK(poisson_tail(3.0, 7) == doctest::Approx(1.0 - head).epsilon(1e-10));
  // lgamma keeps very large factorials finite.
  CHECK(std::isfinite(log_power_over_factorial(500.0, 600)));
  CHECK(poisson_mass(500.0, 500) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi * 500)).epsilon(1e-3));
}

TEST_CASE("k-step semigroup") {
  CHECK(kstep_semigroup_check({1.0}, 2, 40).value < 1e-12);
  CHECK(kstep_semigroup_check({1.0}, 1, 40).value == 0.0);
  const auto r = kstep_semigroup_check({0.5, 0.5}, 3, 25);
  CHECK(r.value < 1e-10);
  CHECK(r.passed);
  CHECK(kstep_semigroup_check({0.3, 1.2, 0.7}, 2, 10).passed);
  CHECK_THROWS_AS(kstep_semigroup_check({1.0}, 0, 10), PreconditionError);
  CHECK_THROWS_AS(kstep_semigroup_check({1.0, 1.0, 1.0}, 2, 100), BudgetExceeded);
}

TEST_CASE("total variation bound") {
  CHECK(tv_bound(4.0, 1) == doctest::Approx(std::exp(-4.0) * 64.0 / 3.0));
  CHECK(tv_bound(4.0, 1) == doctest::Approx(0.3907).epsilon(1e-3));
  CHECK(tv_bound(1.0, 100) < 0.09);
  CHECK(tv_bound(1.0, 100) == doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * 100))).epsilon(0.01));
  CHECK_THROWS_AS(tv_bound(1.0, 0), PreconditionError);
  CHECK_THROWS_AS(tv_bound(0.0, 1), PreconditionError);
  for (double a : {0.1, 0.5, 1.0, 2.5}) {
    const int k0 = static_cast<int>(std::ceil(1.0 / a));
    double prev = tv_bound(a, k0);
    for (int k = k0 + 1; k <= 200; ++k) {
      const double cur = tv_bound(a, k);
      CHECK(cur <= prev + 1e-15);
      prev = cur;
    }
    for (int k = 1; k <= 50; ++k) {
      const double t = a * k;
      CHECK(std::abs(tv_bound(a, k) - tv_bound_series(a, k, static_cast<int>(t + 12 * std::sqrt(t) + 60))) < 1e-12);
    }
  }
}

TEST_CASE("Stirling identity") {
  const auto four = stirling_identity(Rational(4));
  REQUIRE(four.closed_exact.has_value());
  CHECK(*four.closed_exact == Rational(61, 3));
  CHECK(four.scaled_closed == doctest::Approx(0.3724).epsilon(1e-3));
  CHECK(std::abs(naive_stirling_sum(4.0, 200) - 61.0 / 3.0) < 1e-12);
  CHECK(*stirling_identity(Rational(1)).closed_exact == 1);
  CHECK(*stirling_identity(Rational(1, 2)).closed_exact == 1);

  for (const char* text : {"1/2", "1", "4", "10", "100"}) {
    CAPTURE(text);
    const auto s = stirling_identity(parse_rational(text));
    CHECK(std::abs(s.scaled_partial - s.scaled_closed) < 1e-10);
    CHECK(std::abs(s.partial_sum - s.closed) <= 1e-10 * s.closed);
    CHECK(s.scaled_tail < 1e-12);
  }

  // e^{-t} t^[t]/[t]! ~ 1/sqrt(2 pi t); the closed form carries a factor 2.
  const auto hundred = stirling_identity(Rational(100));
  const double single = (hundred.scaled_closed + std::exp(-100.0)) / 2;
  CHECK(single == doctest::Approx(hundred.stirling_asymptotic).epsilon(0.1));
  CHECK(hundred.scaled_closed == doctest::Approx(2 * hundred.stirling_asymptotic).epsilon(0.1));
  CHECK_THROWS_AS(stirling_identity(Rational(0)), PreconditionError);
}

TEST_CASE("chi_tau_tauprime") {
  CHECK(chi_tau_tauprime({Complex(0, 0)}, {}) == Complex(1, 0));
  const double s = 0.3;
  CHECK(std::abs(chi_tau_tauprime({Complex(-2 * s, 0)}, {}) - std::exp(-2 * s)) < 1e-15);
  const Complex v(-0.4, 0.7), w(-0.1, -0.2);
  CHECK(std::abs(chi_tau_tauprime({v}, {w})) == doctest::Approx(std::exp(v.real() + w.real())));
  CHECK(std::abs(chi_tau_tauprime({v}, {w})) <= 1.0);
  CHECK_THROWS_AS(chi_tau_tauprime({Complex(0.1, 0)}, {}), PreconditionError);
}

TEST_CASE("stable algebra bookkeeping") {
  const auto a = make_stable("effros-shen", 3);
  const auto id = a.identity(2);
  REQUIRE(id.blocks.size() == 2);
  CHECK(id.blocks[0].d() == 2 * a.base.levels[3][0]);
  const auto tau = a.normalized_traces(id, 2);
  CHECK(std::abs(tau[0] - 1.0) < 1e-14);
  const auto padded = a.pad(id, 2, 5);
  CHECK(padded.blocks[1].d() == 5 * a.base.levels[3][1]);
  CHECK_THROWS_AS(a.normalized_traces(id, 3), PreconditionError);
}

TEST_CASE("Poisson series examples") {
  const auto car = make_stable("car", 1);
  const auto id = car.identity(2);
  const auto one = poisson_series_check(car, {1.0}, {0.0}, 2, id, 60);
  CHECK(std::abs(one.closed - 1.0) < 1e-15);
  CHECK(std::abs(one.series - 1.0) < 1e-12);

  BlockUnitary u = car.identity(2);
  u.blocks[0] = DiagonalUnitary(std::vector<Rational>{Rational(1, 4), Rational(1, 4), 0, 0});
  CHECK(std::abs(car.normalized_traces(u, 2)[0] - Complex(0.5, 0.5)) < 1e-15);
  const auto r = poisson_series_check(car, {1.0}, {0.0}, 2, u, 60);
  CHECK(std::abs(r.closed - std::exp(2.0 * (Complex(0.5, 0.5) - 1.0))) < 1e-14);
  CHECK(std::abs(r.series - r.closed) < 1e-10);
  CHECK(r.check.passed);

  const auto both = poisson_series_check(car, {0.7}, {0.7}, 2, u, 60);
  const double expected = std::exp(2 * 2 * 0.7 * (0.5 - 1.0));
  CHECK(std::abs(both.closed) == doctest::Approx(expected));
  CHECK(both.check.passed);
}

TEST_CASE("Poisson series on 20 random unitaries at levels n <= 4") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> rate(0.1, 2.0);
  for (const char* name : {"car", "effros-shen", "uhf:3"}) {
    const auto a = make_stable(name, 2);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + trial % 4;
      const auto u = random_stable_unitary(rng, a, n);
      const auto r = poisson_series_check(a, {rate(rng)}, {rate(rng)}, n, u, 80);
      CAPTURE(name);
      CHECK(r.check.passed);
      CHECK(std::abs(r.closed) <= 1.0 + 1e-15);
    }
  }
}

TEST_CASE("binomial re-expansion") {
  std::mt19937_64 rng(17);
  for (const char* name : {"car", "effros-shen:2"}) {
    const auto a = make_stable(name, 2);
    for (int trial = 0; trial < 6; ++trial) {
      const int n = 1 + trial % 3;
      const int m = n + 1 + trial % 2;
      const auto u = random_stable_unitary(rng, a, n);
      for (const auto& r : binomial_reexpansion_check(a, {1.0}, n, m, u, 60)) {
        CAPTURE(name);
        CAPTURE(r.name);
        CHECK(r.passed);
      }
    }
  }
  const auto a = make_stable("car", 1);
  const auto reports = binomial_reexpansion_check(a, {1.0}, 1, 2, a.identity(1), 40);
  for (const auto& r : reports) {
    if (r.name == "constant_harmonic") CHECK(r.value <= poisson_tail(1.0, 20) + 1e-12);
    if (r.name == "level_consistency") CHECK(r.value < 1e-10);
  }
  CHECK_THROWS_AS(binomial_reexpansion_check(a, {1.0}, 2, 2, a.identity(2), 40), PreconditionError);
}
