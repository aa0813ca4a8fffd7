#include <doctest.h>

#include <random>

#include "weylchar/symfunc.hpp"

using namespace weylchar;

namespace {

using Table = std::map<Partition, Rational>;

/// Expansions of s_(2), s_(1,1) and the five shapes of size 4 in power sums, read off the printed table.
std::map<Partition, Table> printed_table() {
  const Partition p4{4}, p31{3, 1}, p22{2, 2}, p211{2, 1, 1}, p1111{1, 1, 1, 1};
  return {
      {Partition{2}, {{Partition{2}, Rational(1, 2)}, {Partition{1, 1}, Rational(1, 2)}}},
      {Partition{1, 1}, {{Partition{2}, Rational(-1, 2)}, {Partition{1, 1}, Rational(1, 2)}}},
      {Partition{4},
       {{p4, Rational(1, 4)}, {p31, Rational(1, 3)}, {p22, Rational(1, 8)}, {p211, Rational(1, 4)},
        {p1111, Rational(1, 24)}}},
      {Partition{1, 1, 1, 1},
       {{p4, Rational(-1, 4)}, {p31, Rational(1, 3)}, {p22, Rational(1, 8)}, {p211, Rational(-1, 4)},
        {p1111, Rational(1, 24)}}},
      {Partition{3, 1},
       {{p4, Rational(-1, 4)}, {p22, Rational(-1, 8)}, {p211, Rational(1, 4)}, {p1111, Rational(1, 8)}}},
      {Partition{2, 1, 1},
       {{p4, Rational(1, 4)}, {p22, Rational(-1, 8)}, {p211, Rational(-1, 4)}, {p1111, Rational(1, 8)}}},
      {Partition{2, 2}, {{p31, Rational(-1, 3)}, {p22, Rational(1, 4)}, {p1111, Rational(1, 12)}}},
  };
}

Table nonzero(const PowerSumExpansion& e) {
  Table out;
  for (const auto& [rho, c] : e.coefficients) {
    if (c != 0) out[rho] = c;
  }
  return out;
}

std::vector<Rational> random_rationals(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Rational> x;
  for (int i = 0; i < n; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    x.push_back(q);
  }
  return x;
}

/// c^nu_{alpha,beta} as the multiplicity of chi^alpha x chi^beta in chi^nu restricted to S_a x S_b.
Rational lr_by_characters(const Partition& nu, const Partition& alpha, const Partition& beta) {
  Rational total = 0;
  for (const auto& r1 : partitions_of(alpha.size())) {
    for (const auto& r2 : partitions_of(beta.size())) {
      std::vector<int> merged(r1.parts());
      merged.insert(merged.end(), r2.parts().begin(), r2.parts().end());
      std::sort(merged.rbegin(), merged.rend());
      const Partition rho(merged);
      total += Rational(sym_group_character(nu, rho) * sym_group_character(alpha, r1) *
                        sym_group_character(beta, r2)) /
               Rational(centralizer_order(r1) * centralizer_order(r2));
    }
  }
  return total;
}

}  // namespace

TEST_CASE("schur_to_power_sums reproduces the printed table") {
  for (const auto& [lambda, expected] : printed_table()) {
    CAPTURE(lambda.to_string());
    CHECK(nonzero(schur_to_power_sums(lambda)) == expected);
  }
  CHECK(nonzero(schur_to_power_sums(Partition{1})) == Table{{Partition{1}, Rational(1)}});
}

TEST_CASE("traceless specializations of the table") {
  // Tr B = 0 kills every p_rho containing a part 1.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto b = random_rationals(rng, 5);
    Rational mean = 0;
    for (const auto& x : b) mean += x;
    mean /= 5;
    for (auto& x : b) x -= mean;
    const Rational t2 = power_sum(b, 2);
    const Rational t4 = power_sum(b, 4);
    CHECK(schur_eval_exact(Partition{2}, b) == t2 / 2);
    CHECK(schur_eval_exact(Partition{1, 1}, b) == -t2 / 2);
    CHECK(schur_eval_exact(Partition{4}, b) == t4 / 4 + t2 * t2 / 8);
    CHECK(schur_eval_exact(Partition{1, 1, 1, 1}, b) == -t4 / 4 + t2 * t2 / 8);
    CHECK(schur_eval_exact(Partition{3, 1}, b) == -t4 / 4 - t2 * t2 / 8);
    CHECK(schur_eval_exact(Partition{2, 1, 1}, b) == t4 / 4 - t2 * t2 / 8);
    CHECK(schur_eval_exact(Partition{2, 2}, b) == t2 * t2 / 4);
  }
}

TEST_CASE("schur_dim closed forms for d in [1,12]") {
  for (long d = 1; d <= 12; ++d) {
    CAPTURE(d);
    CHECK(schur_dim(Partition{2}, d) == d * (d + 1) / 2);
    if (d >= 2) CHECK(schur_dim(Partition{1, 1}, d) == d * (d - 1) / 2);
    CHECK(schur_dim(Partition{4}, d) == d * (d + 1) * (d + 2) * (d + 3) / 24);
    if (d >= 4) CHECK(schur_dim(Partition{1, 1, 1, 1}, d) == d * (d - 1) * (d - 2) * (d - 3) / 24);
    if (d >= 2) CHECK(schur_dim(Partition{3, 1}, d) == (d - 1) * d * (d + 1) * (d + 2) / 8);
    if (d >= 3) CHECK(schur_dim(Partition{2, 1, 1}, d) == (d - 2) * (d - 1) * d * (d + 1) / 8);
    if (d >= 2) CHECK(schur_dim(Partition{2, 2}, d) == (d - 1) * d * d * (d + 1) / 12);
    CHECK(schur_dim(Partition{}, d) == 1);
  }
  CHECK(schur_dim(Partition{2, 2}, 3) == 6);
  CHECK_THROWS_AS(schur_dim(Partition{1, 1, 1}, 2), PreconditionError);
}

TEST_CASE("weyl_dim") {
  for (int d = 2; d <= 9; ++d) {
    CHECK(weyl_dim(signature_from_pair(Partition{1}, Partition{1}, d)) == d * d - 1);
    CHECK(weyl_dim(Signature::zero(d)) == 1);
  }
  CHECK(weyl_dim(Signature{1, 0}) == 2);
  const Signature sig{3, 1, 1, -2};
  for (int a = -4; a <= 4; ++a) CHECK(weyl_dim(sig.shifted(a)) == weyl_dim(sig));
}

TEST_CASE("schur_eval_exact examples") {
  const std::vector<Rational> x{Rational(2, 3), Rational(-5, 7)};
  CHECK(schur_eval_exact(Partition{1}, x) == x[0] + x[1]);
  CHECK(schur_eval_exact(Partition{2, 2}, std::vector<Rational>{1, 1, 1}) == 6);
  CHECK(schur_eval_exact(Partition{2}, std::vector<Rational>{2, 3}) == 19);
}

TEST_CASE("bialternant and tableau summation agree") {
  std::mt19937_64 rng(3);
  for (int n = 0; n <= 6; ++n) {
    for (const auto& lambda : partitions_of(n, 4)) {
      auto x = random_rationals(rng, 4);
      x = {x[0], x[0] + 1, x[0] + 2, x[0] - Rational(1, 3)};
      CHECK(schur_bialternant(lambda, x) == schur_tableau_sum(lambda, x));
      const std::vector<GaussianRational> z{GaussianRational(0, 1), GaussianRational(1), GaussianRational(-1),
                                            GaussianRational(Rational(1, 2), Rational(1, 3))};
      CHECK(schur_bialternant(lambda, z) == schur_tableau_sum(lambda, z));
    }
  }
}

TEST_CASE("power-sum expansion evaluates to the Schur polynomial") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    for (const auto& lambda : partitions_of(n)) {
      const auto e = schur_to_power_sums(lambda);
      for (int d = 1; d <= 6; ++d) {
        const std::vector<Rational> ones(static_cast<std::size_t>(d), Rational(1));
        if (lambda.length() <= d) {
          CHECK(e.evaluate(ones) == Rational(schur_dim(lambda, d)));
        } else {
          CHECK(e.evaluate(ones) == 0);
        }
      }
      const auto x = random_rationals(rng, 3);
      CHECK(e.evaluate(x) == schur_tableau_sum(lambda, x));
    }
  }
}

TEST_CASE("power-sum expansion keys cover every partition of n") {
  const auto e = schur_to_power_sums(Partition{3, 2, 1});
  CHECK(e.coefficients.size() == partitions_of(6).size());
  CHECK(e.coefficient(Partition{1, 1, 1, 1, 1, 1}) == leading_coeff(Partition{3, 2, 1}));
  CHECK_THROWS_AS(schur_to_power_sums(Partition{13}), BudgetExceeded);
}

TEST_CASE("leading coefficient") {
  CHECK(leading_coeff(Partition{2}) == Rational(1, 2));
  CHECK(leading_coeff(Partition{1, 1, 1, 1}) == Rational(1, 24));
  CHECK(leading_coeff(Partition{3, 1}) == Rational(1, 8));
  for (int n = 1; n <= 8; ++n) {
    for (const auto& lambda : partitions_of(n)) {
      CHECK(leading_coeff(lambda) * Rational(factorial(n)) == Rational(sym_group_dim(lambda)));
    }
  }
}

TEST_CASE("symmetric group dimensions") {
  CHECK(sym_group_dim(Partition{2, 2}) == 2);
  CHECK(sym_group_dim(Partition{3, 1}) == 3);
  CHECK(sym_group_dim(Partition{2, 1, 1}) == 3);
  CHECK(sym_group_dim(Partition{7}) == 1);
  for (int n = 1; n <= 8; ++n) {
    BigInt sum = 0;
    for (const auto& lambda : partitions_of(n)) sum += sym_group_dim(lambda) * sym_group_dim(lambda);
    CHECK(sum == factorial(n));
  }
}

TEST_CASE("Murnaghan-Nakayama characters satisfy both orthogonality relations") {
  for (int n = 1; n <= 7; ++n) {
    const auto parts = partitions_of(n);
    for (const auto& rho : parts) {
      for (const auto& sigma : parts) {
        BigInt s = 0;
        for (const auto& lambda : parts) s += sym_group_character(lambda, rho) * sym_group_character(lambda, sigma);
        CHECK(s == (rho == sigma ? centralizer_order(rho) : BigInt(0)));
      }
    }
    for (const auto& lambda : parts) {
      CHECK(sym_group_character(lambda, Partition(std::vector<int>(n, 1))) == sym_group_dim(lambda));
    }
  }
  CHECK(sym_group_character(Partition{2, 2}, Partition{3, 1}) == -1);
  CHECK(sym_group_character(Partition{3, 1}, Partition{4}) == -1);
}

TEST_CASE("Littlewood-Richardson examples") {
  CHECK(lr_coefficient(Partition{1}, Partition{1}, Partition{}) == 1);
  CHECK(lr_coefficient(Partition{2, 1}, Partition{1}, Partition{1, 1}) == 1);
  CHECK(lr_coefficient(Partition{2, 2}, Partition{2}, Partition{1}) == 0);
  CHECK(lr_coefficient(Partition{3, 2, 1}, Partition{2, 1}, Partition{2, 1}) == 2);
}

TEST_CASE("LR coefficients match the symmetric group restriction multiplicity") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& nu : partitions_of(n)) {
      for (int a = 0; a <= n; ++a) {
        for (const auto& alpha : partitions_of(a)) {
          for (const auto& beta : partitions_of(n - a)) {
            const BigInt c = lr_coefficient(nu, alpha, beta);
            CHECK(Rational(c) == lr_by_characters(nu, alpha, beta));
            CHECK(c == lr_coefficient(nu, beta, alpha));
          }
        }
      }
    }
  }
}

TEST_CASE("LR coefficients are dimension consistent") {
  for (int n = 0; n <= 5; ++n) {
    for (int d1 = 1; d1 <= 3; ++d1) {
      for (int d2 = 1; d2 <= 3; ++d2) {
        for (const auto& nu : partitions_of(n, d1 + d2)) {
          BigInt total = 0;
          for (const auto& alpha : subpartitions(nu, d1)) {
            for (const auto& beta : partitions_of(n - alpha.size(), d2)) {
              total += lr_coefficient(nu, alpha, beta) * schur_dim(alpha, d1) * schur_dim(beta, d2);
            }
          }
          CHECK(total == schur_dim(nu, d1 + d2));
        }
      }
    }
  }
}
