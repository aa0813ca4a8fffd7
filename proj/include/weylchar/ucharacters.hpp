// Irreducible characters of U(d) on diagonal unitaries, and decompositions of
// tensor products and block restrictions.
#pragma once

#include <optional>
#include <vector>

#include "weylchar/combinatorics.hpp"
#include "weylchar/errors.hpp"
#include "weylchar/numeric.hpp"

namespace weylchar {

/// diag(e^{2 pi i theta_1}, ..., e^{2 pi i theta_d}) with angles theta in turns.
/// Angles are stored as exact rationals; a double converts to its exact binary value.
class DiagonalUnitary {
 public:
  DiagonalUnitary() = default;
  explicit DiagonalUnitary(std::vector<Rational> turns);
  static DiagonalUnitary from_doubles(const std::vector<double>& turns);
  static DiagonalUnitary identity(int d);

  int d() const { return static_cast<int>(turns_.size()); }
  const std::vector<Rational>& turns() const { return turns_; }

  /// Eigenvalues; quarter turns map to exactly 1, i, -1, -i.
  std::vector<Complex> eigenvalues() const;
  /// Exact eigenvalues in Q(i) when every angle is a multiple of 1/4.
  std::optional<std::vector<GaussianRational>> exact_eigenvalues() const;

  Complex trace() const;
  /// Smallest |x_i - x_j| over i < j (infinity for d <= 1).
  double min_gap() const;

  /// Concatenates spectra (block diagonal sum).
  DiagonalUnitary direct_sum(const DiagonalUnitary& other) const;

 private:
  std::vector<Rational> turns_;
};

Complex unit_complex(const Rational& turns);

enum class CharMethod {
  Auto,           // bialternant, GT summation near confluence, determinant for d > 8
  Bialternant,    // Weyl character formula
  WeightSum,      // sum over GT weights
  Determinantal,  // mixed Jacobi-Trudi determinant in complete symmetric functions of x and 1/x
};

struct CharOptions {
  CharMethod method = CharMethod::Auto;
  double gap_threshold = 1e-8;
  EnumerationBudget budget{};
};

/// Tr pi_Lambda(U).
Complex char_eval(const Signature& sig, const DiagonalUnitary& u, const CharOptions& options = {});

/// Tr pi_Lambda(U) / dim pi_Lambda.
Complex normalized_char(const Signature& sig, const DiagonalUnitary& u, const CharOptions& options = {});

/// Exact trace when every eigenvalue is a quarter-turn root of unity.
GaussianRational char_eval_exact(const Signature& sig, const std::vector<GaussianRational>& x,
                                 const EnumerationBudget& budget = {});

/// Mixed character s_{mu-bar;lambda}(x) via the l(lambda)+l(mu) square determinant.
Complex mixed_character_determinant(const Partition& lambda, const Partition& mu,
                                    const std::vector<Complex>& x);

struct DecompositionBudget {
  /// Largest dimension of the representation being decomposed.
  BigInt max_dim = 50'000'000;
};

struct BlockComponent {
  Signature left;
  Signature right;
  BigInt multiplicity;
};

struct BlockDecomposition {
  int d1 = 0;
  int d2 = 0;
  std::vector<BlockComponent> components;  // lexicographic in (left, right)
};

struct TensorComponent {
  Signature sig;
  BigInt multiplicity;
};

/// Restriction of pi_Lambda from U(d1+d2) to U(d1) x U(d2).
BlockDecomposition restrict_to_blocks(const Signature& sig, int d1, int d2,
                                      const DecompositionBudget& budget = {});

/// pi_Lambda1 (x) pi_Lambda2 on U(d), lexicographic by signature.
std::vector<TensorComponent> tensor_decompose(const Signature& a, const Signature& b,
                                              const DecompositionBudget& budget = {});

struct BranchingReport {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<std::string> violations;
};

/// |lambda3| <= |lambda1|+|lambda2|, |mu3| <= |mu1|+|mu2| and equal differences, per component.
BranchingReport check_branching_inequalities(const Signature& a, const Signature& b,
                                             const std::vector<TensorComponent>& components);

/// |lambda1|+|lambda2| <= |lambda|, |mu1|+|mu2| <= |mu| and equal differences, per component.
BranchingReport check_branching_inequalities(const Signature& sig, const BlockDecomposition& decomposition);

/// |chi_{mu-bar;lambda}(U) - (Tr U/d)^{|lambda|} conj(Tr U/d)^{|mu|}|.
double rational_approx_defect(const Partition& lambda, const Partition& mu, const DiagonalUnitary& u,
                              const CharOptions& options = {});

}  // namespace weylchar
