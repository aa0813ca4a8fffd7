// Symmetric functions: Schur polynomials, power sums, symmetric group
// characters and Littlewood-Richardson coefficients. Everything here is exact.
#pragma once

#include <map>
#include <vector>

#include "weylchar/combinatorics.hpp"
#include "weylchar/errors.hpp"
#include "weylchar/numeric.hpp"

namespace weylchar {

/// Weyl dimension formula: prod_{i<j} (L_i - L_j + j - i) / (j - i).
BigInt weyl_dim(const Signature& sig);

/// s_lambda(1_d). Throws PreconditionError if l(lambda) > d.
BigInt schur_dim(const Partition& lambda, int d);

/// Hook length formula.
BigInt sym_group_dim(const Partition& lambda);

/// p_1^n coefficient of s_lambda from the closed product; equals sym_group_dim / n!.
Rational leading_coeff(const Partition& lambda);

/// z_rho = prod_i i^{m_i} m_i!
BigInt centralizer_order(const Partition& rho);

/// Irreducible character chi^lambda evaluated on cycle type rho (Murnaghan-Nakayama).
BigInt sym_group_character(const Partition& lambda, const Partition& rho);

/// s_lambda = sum_rho coeff(rho) p_rho.
struct PowerSumExpansion {
  Partition shape;
  std::map<Partition, Rational> coefficients;

  Rational coefficient(const Partition& rho) const;

  /// Evaluates sum_rho coeff(rho) prod_i p_{rho_i}(x).
  template <typename T>
  T evaluate(const std::vector<T>& x) const;
};

struct PowerSumOptions {
  int max_size = 12;
};

/// Exact expansion via MN character values divided by centralizer orders.
PowerSumExpansion schur_to_power_sums(const Partition& lambda, const PowerSumOptions& options = {});

/// Power sum p_k(x).
template <typename T>
T power_sum(const std::vector<T>& x, int k) {
  T s(0);
  for (const auto& xi : x) s += ipow<T>(xi, k);
  return s;
}

template <typename T>
T PowerSumExpansion::evaluate(const std::vector<T>& x) const {
  std::map<int, T> cache;
  auto p = [&](int k) -> const T& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, power_sum(x, k)).first;
    return it->second;
  };
  T total(0);
  for (const auto& [rho, c] : coefficients) {
    if (c == 0) continue;
    T term = from_rational<T>(c);
    for (int part : rho.parts()) term *= p(part);
    total += term;
  }
  return total;
}

/// Bialternant det(x_i^{lambda_j + n - j}) / Vandermonde. Requires pairwise distinct x.
template <typename T>
T schur_bialternant(const Partition& lambda, const std::vector<T>& x);

/// Tableau (GT weight) summation sum_w mult(w) x^w. Works for repeated arguments.
template <typename T>
T schur_tableau_sum(const Partition& lambda, const std::vector<T>& x);

/// Dispatches to the bialternant when arguments are pairwise distinct, tableau sum otherwise.
template <typename T>
T schur_eval_exact(const Partition& lambda, const std::vector<T>& x);

/// c^nu_{alpha,beta} by enumerating LR skew tableaux of shape nu/alpha and content beta.
BigInt lr_coefficient(const Partition& nu, const Partition& alpha, const Partition& beta);

// ---------------------------------------------------------------- template bodies

template <typename T>
T schur_bialternant(const Partition& lambda, const std::vector<T>& x) {
  const int n = static_cast<int>(x.size());
  if (lambda.length() > n) return T(0);
  if (n == 0) return T(1);
  std::vector<std::vector<T>> m(n, std::vector<T>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = ipow<T>(x[i], lambda[j] + n - 1 - j);
  }
  T vandermonde(1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) vandermonde *= (x[i] - x[j]);
  }
  if (is_exact_zero(vandermonde)) {
    throw PreconditionError("bialternant needs pairwise distinct arguments");
  }
  return field_determinant(std::move(m)) / vandermonde;
}

template <typename T>
T schur_tableau_sum(const Partition& lambda, const std::vector<T>& x) {
  const int n = static_cast<int>(x.size());
  if (lambda.length() > n) return T(0);
  if (n == 0) return T(1);
  EnumerationBudget budget;
  budget.max_d = std::max(budget.max_d, n);
  const auto weights = weight_multiplicities(Signature(lambda.padded(n)), budget);
  T total(0);
  for (const auto& [w, mult] : weights) {
    T term = from_rational<T>(Rational(mult));
    for (int i = 0; i < n; ++i) term *= ipow<T>(x[i], w[i]);
    total += term;
  }
  return total;
}

template <typename T>
T schur_eval_exact(const Partition& lambda, const std::vector<T>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) return schur_tableau_sum(lambda, x);
    }
  }
  return schur_bialternant(lambda, x);
}

}  // namespace weylchar
