// Characters chi_{tau,tau'} of stable AF algebras B (x) K, their Poisson
// expansions, the product-Poisson Markov kernel and the tail estimates.
//
// Double precision throughout; every report carries the truncation it used and
// an explicit bound on the neglected mass.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylchar/afalgebra.hpp"
#include "weylchar/numeric.hpp"

namespace weylchar {

struct PoissonReport {
  std::string name;
  double value = 0.0;  // observed deviation
  double bound = 0.0;  // allowed deviation
  int truncation = 0;
  bool passed = false;
};

/// log(t^k / k!) with lgamma, valid far beyond 170!.
double log_power_over_factorial(double t, long k);

/// e^{-t} t^k / k!.
double poisson_mass(double t, long k);

/// P(X > k) for X ~ Poisson(t).
double poisson_tail(double t, long k);

/// p_a(x, y) = prod_i e^{-a_i} a_i^{y_i - x_i} / (y_i - x_i)!, zero unless y >= x.
double kernel(const std::vector<double>& a, const std::vector<long>& x, const std::vector<long>& y);

/// Compares the k-fold convolution of p_a with p_{ka} on the grid [0, truncation]^m starting from 0.
/// Increments are nonnegative, so the grid values of the convolution are exact sums.
PoissonReport kstep_semigroup_check(const std::vector<double>& a, int k, int truncation, double tolerance = 1e-10);

/// e^{-t}(1 + sum_{l>=1} |t^l/l! - t^{l-1}/(l-1)!|) = 2 e^{-t} t^[t] / [t]!  with t = k a_i.
double tv_bound(double a_i, int k);

/// The same quantity by direct summation of the series, for cross-checking.
double tv_bound_series(double a_i, int k, int terms);

struct StirlingResult {
  Rational t;
  std::optional<Rational> closed_exact;  // -1 + 2 t^[t] / [t]!
  double closed = 0.0;
  double partial_sum = 0.0;
  int terms = 0;
  /// Neglected tail of the partial sum, which telescopes to t^N / N! once N > t.
  double tail = 0.0;
  double scaled_closed = 0.0;   // e^{-t} closed
  double scaled_partial = 0.0;  // e^{-t} partial_sum
  double scaled_tail = 0.0;
  double stirling_asymptotic = 0.0;  // 1 / sqrt(2 pi t) approximates e^{-t} t^[t] / [t]!
};

/// Sums sum_{n=1}^N |t^{n-1}/(n-1)! - t^n/n!| in scaled form. terms = 0 picks N from t.
StirlingResult stirling_identity(const Rational& t, int terms = 0);

/// exp(sum tau_vals + sum tauprime_vals); each value must have nonpositive real part.
Complex chi_tau_tauprime(const std::vector<Complex>& tau_vals, const std::vector<Complex>& tauprime_vals);

/// G_n = U(B_L (x) M_n) for a fixed level L of a unital AF algebra B. Block i has size n d_{L,i};
/// tau_{i,n} is the i-th extreme trace of B tensored with the normalized trace of M_n.
struct StableAlgebra {
  BratteliDiagram base;
  int level = 0;
  std::vector<TraceWeights> traces;

  BlockUnitary identity(int n) const;
  /// tau_{i,n}(u) for each extreme trace.
  std::vector<Complex> normalized_traces(const BlockUnitary& u, int n) const;
  /// Phi_{n,m}(u) = u + (1_m - 1_n): each block padded with eigenvalue 1.
  BlockUnitary pad(const BlockUnitary& u, int n, int m) const;
};

/// Base diagram truncated at `level` with its preset trace.
StableAlgebra make_stable(const std::string& preset, int level);

struct SeriesReport {
  Complex closed;
  Complex series;
  PoissonReport check;
};

/// chi_{tau,tau'}(Phi_{n,inf}(u)) for tau = sum a_i tau_i (x) Tr and tau' = sum b_j tau_j (x) Tr:
/// the closed exponential against the box-truncated double series sum a_n(x) b_n(y) prod tau^x conj(tau)^y.
SeriesReport poisson_series_check(const StableAlgebra& algebra, const std::vector<double>& a,
                                  const std::vector<double>& b, int n, const BlockUnitary& u, int truncation);

/// Identities under Phi_{n,m}: padded traces, the binomial-to-Poisson kernel identity, harmonicity
/// of constant and coordinate functions, and equality of the character at levels n and m.
std::vector<PoissonReport> binomial_reexpansion_check(const StableAlgebra& algebra, const std::vector<double>& a,
                                                      int n, int m, const BlockUnitary& u, int truncation);

}  // namespace weylchar
