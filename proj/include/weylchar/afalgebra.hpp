// Bratteli diagrams of AF algebras truncated at finite depth: traces, K0
// homomorphisms, det_phi, limit characters and ergodic sequences.
//
// Level n has blocks A_{n,i} = M_{d_{n,i}}(C). The multiplicity matrix M_n has
// N_{n+1} rows and N_n columns; the embedding is unital, so d_{n+1} = M_n d_n.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylchar/combinatorics.hpp"
#include "weylchar/errors.hpp"
#include "weylchar/numeric.hpp"
#include "weylchar/ucharacters.hpp"

namespace weylchar {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

enum class DiagramKind { Custom, Car, Uhf, EffrosShen, Gicar };

struct BratteliDiagram {
  std::string name;
  std::vector<IntVector> levels;
  std::vector<IntMatrix> multiplicities;  // multiplicities[n] maps level n to level n+1
  DiagramKind kind = DiagramKind::Custom;
  /// Repeating parameters: UHF factors or continued-fraction terms.
  std::vector<int> parameters;
  bool simple = true;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  int blocks(int n) const { return static_cast<int>(levels.at(n).size()); }
};

/// Presets: "car", "gicar-excluded", "effros-shen" (golden mean), "effros-shen:<a1,a2,...>"
/// (periodic continued fraction terms), "uhf:<k1,k2,...>" (cycled). Throws PreconditionError
/// on unknown names.
BratteliDiagram make_preset(const std::string& name, int depth);

struct DiagramReport {
  bool valid = true;
  std::vector<std::string> errors;
  /// m_n = min_i d_{n,i}.
  std::vector<std::int64_t> min_block;
  bool min_block_nondecreasing = true;
  /// For each level, the smallest k with M_{n+k-1}...M_n entrywise positive; -1 if not reached.
  std::vector<int> primitivity_lag;
};

/// Checks d_{n+1} = M_n d_n, shapes, nonnegativity and absence of zero rows.
DiagramReport validate_diagram(const BratteliDiagram& diagram);

/// c0 + c1 * theta with exact coefficients.
struct ThetaLinear {
  Rational c0;
  Rational c1;

  double value(double theta) const { return to_double(c0) + to_double(c1) * theta; }
  bool is_zero() const { return c0 == 0 && c1 == 0; }
  ThetaLinear& operator+=(const ThetaLinear& o);
  friend ThetaLinear operator+(ThetaLinear a, const ThetaLinear& b) { return a += b; }
  friend ThetaLinear operator-(const ThetaLinear& a, const ThetaLinear& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  friend ThetaLinear operator*(const Rational& k, const ThetaLinear& a) { return {k * a.c0, k * a.c1}; }
  friend bool operator==(const ThetaLinear&, const ThetaLinear&) = default;
};

enum class TraceMethod { Auto, Preset, Backward };

struct TraceOptions {
  TraceMethod method = TraceMethod::Auto;
  /// Pascal diagram parameter: t_{n,k} = s^k (1-s)^{n-k}.
  Rational pascal_parameter{1, 2};
  /// Backward substitution fails when levels 0..depth/2 move more than this between depth and depth-1.
  double tolerance = 1e-6;
};

/// Value of a trace on a minimal projection of each block, per level.
struct TraceWeights {
  std::vector<std::vector<ThetaLinear>> levels;
  double theta = 0.0;
  std::string method;
  /// max over n of || t_n - M_n^T t_{n+1} ||_1 (exact zero for consistent weights).
  double compatibility_residual = 0.0;
  /// Change between depth N and N-1 truncations (backward substitution only).
  double convergence_residual = 0.0;

  double value(int n, int i) const { return levels.at(n).at(i).value(theta); }
  /// sum_i t_{n,i} d_{n,i}, which is 1 for normalized weights.
  ThetaLinear normalization(const BratteliDiagram& diagram, int n) const;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TraceWeights trace_weights(const BratteliDiagram& diagram, const TraceOptions& options = {});

/// Irrational parameter of an Effros-Shen diagram; 0 for other kinds.
double effros_shen_theta(const std::vector<int>& terms);

struct K0Hom {
  std::vector<std::vector<BigInt>> levels;  // phi_n, one value per block

  /// phi_n = M_n^T phi_{n+1} for every stored level.
  bool is_compatible(const BratteliDiagram& diagram) const;
  static K0Hom zero(const BratteliDiagram& diagram);
};

/// Finds integer phi at the deepest level with (M_{N-1} ... M_n)^T phi_N = target and pushes it
/// down. Throws PreconditionError when no integer solution exists (the CAR obstruction).
K0Hom lift_k0hom(const BratteliDiagram& diagram, int level, const std::vector<BigInt>& target);

/// Integer solution of A x = b by Smith normal form, if one exists.
std::optional<std::vector<BigInt>> solve_integer_system(const std::vector<std::vector<BigInt>>& a,
                                                        const std::vector<BigInt>& b);

struct BlockUnitary {
  int level = 0;
  std::vector<DiagonalUnitary> blocks;
};

BlockUnitary identity_unitary(const BratteliDiagram& diagram, int level);

/// Image at level m: block j concatenates M_{j,i} copies of each block i, i ascending.
BlockUnitary embed(const BlockUnitary& u, const BratteliDiagram& diagram, int m);

/// Blockwise product of diagonal unitaries (angles add).
BlockUnitary multiply(const BlockUnitary& u, const BlockUnitary& v);

/// Angle of det_phi u in turns, reduced to [0, 1).
Rational det_phi_turns(const BlockUnitary& u, const K0Hom& phi);
Complex det_phi(const BlockUnitary& u, const K0Hom& phi);

/// sum_i t_{n,i} Tr(u_i).
Complex trace_of(const BlockUnitary& u, const TraceWeights& weights);

struct LimitCharacterSpec {
  std::optional<K0Hom> phi;
  std::vector<std::pair<TraceWeights, int>> pos_traces;
  std::vector<std::pair<TraceWeights, int>> neg_traces;
};

/// det_phi(u) prod_i tau_i(u)^{p_i} prod_j conj(tau'_j(u))^{q_j}.
Complex eval_limit_character(const LimitCharacterSpec& character, const BlockUnitary& u);

struct ErgodicPoint {
  int level = 0;
  std::int64_t d = 0;
  Complex value;
  double error = 0.0;  // |value - limit|
};

struct ErgodicResult {
  std::vector<ErgodicPoint> points;
  Complex limit;
  /// Least-squares slope of -log error against log d over points with nonzero error.
  std::optional<double> rate_exponent;
};

struct ErgodicOptions {
  int block = 0;
  CharOptions char_options{};
};

/// chi_n = normalized character of {mu-bar; lambda} on the designated block of embed(u) at
/// levels n = u.level..n_max (levels with l(lambda)+l(mu) > d_n are skipped), compared with the
/// limit character tau^{|lambda|} conj(tau)^{|mu|} for the diagram's preset trace.
ErgodicResult ergodic_sequence(const Partition& lambda, const Partition& mu, const BratteliDiagram& diagram,
                               const BlockUnitary& u, int n_max, const ErgodicOptions& options = {});

/// ||1 - e_n||_2^2 = sum_{lambda |- p, mu |- q} (s_lambda(1_d) s_mu(1_d) - dim pi_{mu-bar;lambda})
///                   f^lambda f^mu / d^{p+q},  d = 2^n.
Rational schur_weyl_defect(int n, int p, int q);

}  // namespace weylchar
