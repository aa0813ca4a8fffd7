// Moment distributions of characters along one-parameter subgroups e^{itF},
// HCIZ partition sums and their closed forms, and Haar Monte Carlo.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "weylchar/combinatorics.hpp"
#include "weylchar/errors.hpp"
#include "weylchar/numeric.hpp"

namespace weylchar {

/// Eigenvalues of a diagonal Hermitian matrix.
struct HermitianSpectrum {
  std::vector<Rational> eigenvalues;

  int d() const { return static_cast<int>(eigenvalues.size()); }
  Rational trace() const;
  /// Tr(B^k).
  Rational trace_power(int k) const;
  static HermitianSpectrum from_signature(const Signature& sig);
  friend bool operator==(const HermitianSpectrum&, const HermitianSpectrum&) = default;
};

HermitianSpectrum operator+(const HermitianSpectrum& a, const HermitianSpectrum& b);

/// F = sum_{i<r/2} E_ii - sum_{r/2<=i<r} E_ii, placed from index `offset` inside a d x d matrix.
struct TraceZeroSigned {
  int r = 2;
  int d = 2;
  int offset = 0;

  /// Throws PreconditionError unless r is even, r >= 2 and offset + r <= d.
  void validate() const;
  /// Diagonal entries +1, -1, 0.
  std::vector<int> coefficients() const;
  HermitianSpectrum spectrum() const;
};

struct WeightDistribution {
  std::map<long, Rational> probs;

  Rational total() const;
  bool is_symmetric() const;
  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// rho_d = ((d-1)/2, (d-3)/2, ..., -(d-1)/2).
HermitianSpectrum rho(int d);

/// B - Tr(B)/d.
HermitianSpectrum center(const HermitianSpectrum& b);

/// M(k) = (number of weights with F-pairing k, with multiplicity) / dim.
WeightDistribution weight_distribution(const Signature& sig, const TraceZeroSigned& f,
                                       const EnumerationBudget& budget = {});

/// sum_k k^p M(k).
Rational moment(const WeightDistribution& dist, int p);

/// <k^4> / <k^2>^2, empty when <k^2> = 0.
std::optional<Rational> moment_ratio(const WeightDistribution& dist);

/// sum_{lambda |- n, l(lambda) <= d} dim Pi_lambda s_lambda(A) s_lambda(B) / s_lambda(1_d).
Rational hciz_partition_sum(const HermitianSpectrum& a, const HermitianSpectrum& b, int n);

/// J(B, r, n) = hciz_partition_sum(F, B, n).
Rational J_series(const HermitianSpectrum& b, const TraceZeroSigned& f, int n);

/// Closed forms for n = 2 and n = 4. Requires Tr B = 0, and d >= 4 when n = 4.
Rational J_closed(const HermitianSpectrum& b, const TraceZeroSigned& f, int n);

/// r Tr(2 L rho_d + L^2) / (d^2 - 1) with L the centered signature.
Rational moment2_closed(const Signature& sig, const TraceZeroSigned& f);

/// J(rho_d + L, r, 4) - 6 m2 J(rho_d, r, 2) - J(rho_d, r, 4). Requires d >= 4.
Rational moment4_closed(const Signature& sig, const TraceZeroSigned& f);

struct EstimateReport {
  Rational m2;
  Rational m4;
  Rational c1;
  Rational c2;
  Rational bound;  // c1 m2^2 + c2 m2
  bool holds = false;
};

/// m4 <= C1 m2^2 + C2 m2 with
///   C1 = 3(d^2-1)(d^4-6d^2+18) / (d^2(d^2-4)(d^2-9)),  C2 = 2(d^4-2d^2-3) / ((d^2-4)(d^2-9)).
/// Requires 3r >= 2d and d >= 4. Moments come from the closed forms.
EstimateReport estimate_check(const Signature& sig, const TraceZeroSigned& f);

/// Distribution of the sum of independent variables.
WeightDistribution convolve(const WeightDistribution& a, const WeightDistribution& b);

struct AdditivityReport {
  WeightDistribution convolution;
  Rational m2_direct;
  Rational m2_sum;       // sum_i m2_i
  Rational m4_direct;
  Rational m4_identity;  // sum_i m4_i + 6 sum_{i<j} m2_i m2_j
  bool symmetric_inputs = false;
  bool holds = false;
};

/// Convolves the distributions and checks the second and fourth moment identities.
AdditivityReport product_moment_identity(const std::vector<WeightDistribution>& dists);

// ---------------------------------------------------------------- Monte Carlo

/// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal made positive.
Eigen::MatrixXcd sample_haar_unitary(int d, std::mt19937_64& rng);

/// Seed for chunk `index`, derived with splitmix64 so chunks are independent of scheduling.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index);

enum class HcizMode { Power, Exponential };

struct MonteCarloResult {
  Complex estimate;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

struct MonteCarloOptions {
  long samples = 100'000;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks hardware concurrency. Results do not depend on this.
  unsigned threads = 0;
};

/// Mean of Tr(U A U* B)^n (Power) or exp(i Tr(U A U* B)) (Exponential) over Haar U.
MonteCarloResult hciz_monte_carlo(const HermitianSpectrum& a, const HermitianSpectrum& b, int n, HcizMode mode,
                                  const MonteCarloOptions& options = {});

/// Mean of an arbitrary complex statistic of Haar unitaries, with the same chunked seeding.
MonteCarloResult haar_average(int d, const std::function<Complex(const Eigen::MatrixXcd&)>& statistic,
                              const MonteCarloOptions& options = {});

/// prod_{i<d} i! / i^{d(d-1)/2} * det(e^{i a_i b_j}) / (Delta(A) Delta(B)). Needs distinct eigenvalues.
Complex hciz_determinant(const HermitianSpectrum& a, const HermitianSpectrum& b);

}  // namespace weylchar
