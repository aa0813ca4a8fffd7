#include "weylchar/ucharacters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "weylchar/symfunc.hpp"

namespace weylchar {

namespace {

Rational fractional_part(const Rational& q) {
  BigInt floor_q;
  mpz_fdiv_q(floor_q.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(floor_q);
}

void require_length(const Signature& sig, const DiagonalUnitary& u) {
  if (sig.d() != u.d()) {
    throw PreconditionError("signature has length " + std::to_string(sig.d()) + " but the unitary has size " +
                            std::to_string(u.d()));
  }
}

int minimum_entry(const Signature& sig) { return sig[static_cast<std::size_t>(sig.d() - 1)]; }

/// Partition obtained by adding max(0, -min entry) to every entry.
std::pair<Partition, int> polynomial_shift(const Signature& sig) {
  const int a = std::max(0, -minimum_entry(sig));
  return {Partition(sig.shifted(a).entries()), a};
}

Signature padded_signature(const Partition& p, int d, int shift) {
  return Signature(p.padded(d)).shifted(shift);
}

}  // namespace

// ---------------------------------------------------------------- DiagonalUnitary

DiagonalUnitary::DiagonalUnitary(std::vector<Rational> turns) : turns_(std::move(turns)) {
  for (auto& t : turns_) t.canonicalize();
}

DiagonalUnitary DiagonalUnitary::from_doubles(const std::vector<double>& turns) {
  std::vector<Rational> exact;
  exact.reserve(turns.size());
  for (double t : turns) exact.emplace_back(t);
  return DiagonalUnitary(std::move(exact));
}

DiagonalUnitary DiagonalUnitary::identity(int d) {
  return DiagonalUnitary(std::vector<Rational>(static_cast<std::size_t>(d), Rational(0)));
}

Complex unit_complex(const Rational& turns) {
  const Rational frac = fractional_part(turns);
  const Rational quarters = frac * 4;
  if (quarters.get_den() == 1) {
    switch (quarters.get_num().get_si()) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * to_double(frac);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Complex> DiagonalUnitary::eigenvalues() const {
  std::vector<Complex> out;
  out.reserve(turns_.size());
  for (const auto& t : turns_) out.push_back(unit_complex(t));
  return out;
}

std::optional<std::vector<GaussianRational>> DiagonalUnitary::exact_eigenvalues() const {
  std::vector<GaussianRational> out;
  out.reserve(turns_.size());
  for (const auto& t : turns_) {
    const Rational quarters = fractional_part(t) * 4;
    if (quarters.get_den() != 1) return std::nullopt;
    switch (quarters.get_num().get_si()) {
      case 0: out.emplace_back(Rational(1), Rational(0)); break;
      case 1: out.emplace_back(Rational(0), Rational(1)); break;
      case 2: out.emplace_back(Rational(-1), Rational(0)); break;
      default: out.emplace_back(Rational(0), Rational(-1)); break;
    }
  }
  return out;
}

Complex DiagonalUnitary::trace() const {
  Complex s{};
  for (const auto& z : eigenvalues()) s += z;
  return s;
}

double DiagonalUnitary::min_gap() const {
  const auto x = eigenvalues();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) gap = std::min(gap, std::abs(x[i] - x[j]));
  }
  return gap;
}

DiagonalUnitary DiagonalUnitary::direct_sum(const DiagonalUnitary& other) const {
  std::vector<Rational> out(turns_);
  out.insert(out.end(), other.turns_.begin(), other.turns_.end());
  return DiagonalUnitary(std::move(out));
}

// ---------------------------------------------------------------- character evaluation

namespace {

Complex char_bialternant(const Signature& sig, const DiagonalUnitary& u) {
  const int d = u.d();
  const auto& theta = u.turns();
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = unit_complex(theta[i] * (sig[j] + d - 1 - j));
  }
  const auto x = u.eigenvalues();
  Complex vandermonde(1.0, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) vandermonde *= x[i] - x[j];
  }
  if (vandermonde == Complex{}) throw PreconditionError("bialternant needs distinct eigenvalues");
  return m.partialPivLu().determinant() / vandermonde;
}

Complex char_weight_sum(const Signature& sig, const DiagonalUnitary& u, const EnumerationBudget& budget) {
  const auto& theta = u.turns();
  Complex total{};
  for (const auto& [w, mult] : weight_multiplicities(sig, budget)) {
    Rational phase = 0;
    for (std::size_t i = 0; i < w.size(); ++i) phase += theta[i] * w[i];
    total += to_double(mult) * unit_complex(phase);
  }
  return total;
}

/// h_0..h_max of the given variables.
std::vector<Complex> complete_homogeneous(const std::vector<Complex>& x, int max_degree) {
  std::vector<Complex> h(static_cast<std::size_t>(max_degree) + 1, Complex{});
  h[0] = 1.0;
  for (const auto& xi : x) {
    for (int k = 1; k <= max_degree; ++k) h[k] += xi * h[k - 1];
  }
  return h;
}

Complex char_determinantal(const Signature& sig, const DiagonalUnitary& u) {
  auto decomposition = std::get<ShiftDecomposition>(shift_decompose(sig, sig.d()));
  Rational phase = 0;
  for (const auto& t : u.turns()) phase += t;
  const Complex twist = unit_complex(phase * decomposition.shift);
  return twist * mixed_character_determinant(decomposition.lambda, decomposition.mu, u.eigenvalues());
}

}  // namespace

Complex mixed_character_determinant(const Partition& lambda, const Partition& mu, const std::vector<Complex>& x) {
  const int ll = lambda.length();
  const int lm = mu.length();
  const int n = ll + lm;
  if (n > static_cast<int>(x.size())) {
    throw PreconditionError("l(lambda) + l(mu) exceeds the number of variables");
  }
  if (n == 0) return 1.0;
  std::vector<Complex> xbar;
  xbar.reserve(x.size());
  for (const auto& xi : x) xbar.push_back(std::conj(xi) / std::norm(xi));
  const int max_degree = std::max(lambda[0], mu[0]) + n;
  const auto h = complete_homogeneous(x, max_degree);
  const auto hbar = complete_homogeneous(xbar, max_degree);
  auto pick = [&](const std::vector<Complex>& table, int k) { return k < 0 ? Complex{} : table[k]; };

  Eigen::MatrixXcd m(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i <= lm) {
        m(i - 1, j - 1) = pick(hbar, mu[lm - i] + i - j);
      } else {
        m(i - 1, j - 1) = pick(h, lambda[i - lm - 1] - i + j);
      }
    }
  }
  return m.partialPivLu().determinant();
}

Complex char_eval(const Signature& sig, const DiagonalUnitary& u, const CharOptions& options) {
  require_length(sig, u);
  switch (options.method) {
    case CharMethod::Bialternant: return char_bialternant(sig, u);
    case CharMethod::WeightSum: return char_weight_sum(sig, u, options.budget);
    case CharMethod::Determinantal: return char_determinantal(sig, u);
    case CharMethod::Auto: break;
  }
  if (u.d() > options.budget.max_d) return char_determinantal(sig, u);
  if (u.min_gap() < options.gap_threshold) return char_weight_sum(sig, u, options.budget);
  return char_bialternant(sig, u);
}

Complex normalized_char(const Signature& sig, const DiagonalUnitary& u, const CharOptions& options) {
  return char_eval(sig, u, options) / to_double(weyl_dim(sig));
}

GaussianRational char_eval_exact(const Signature& sig, const std::vector<GaussianRational>& x,
                                 const EnumerationBudget& budget) {
  if (static_cast<int>(x.size()) != sig.d()) throw PreconditionError("argument length must equal d");
  GaussianRational total;
  for (const auto& [w, mult] : weight_multiplicities(sig, budget)) {
    GaussianRational term{Rational(mult)};
    for (std::size_t i = 0; i < w.size(); ++i) term *= ipow<GaussianRational>(x[i], w[i]);
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------- decompositions

BlockDecomposition restrict_to_blocks(const Signature& sig, int d1, int d2, const DecompositionBudget& budget) {
  if (d1 < 1 || d2 < 1 || d1 + d2 != sig.d()) {
    throw PreconditionError("block sizes must be positive and sum to d = " + std::to_string(sig.d()));
  }
  if (weyl_dim(sig) > budget.max_dim) {
    throw BudgetExceeded("restriction limited to dim <= " + budget.max_dim.get_str());
  }
  const auto [nu, a] = polynomial_shift(sig);
  std::map<std::pair<Signature, Signature>, BigInt> found;
  for (const Partition& alpha : subpartitions(nu, d1)) {
    for (const Partition& beta : partitions_of(nu.size() - alpha.size(), d2, nu[0])) {
      BigInt c = lr_coefficient(nu, alpha, beta);
      if (c == 0) continue;
      found[{padded_signature(alpha, d1, -a), padded_signature(beta, d2, -a)}] += c;
    }
  }
  BlockDecomposition out{d1, d2, {}};
  for (auto& [key, mult] : found) out.components.push_back({key.first, key.second, mult});
  return out;
}

std::vector<TensorComponent> tensor_decompose(const Signature& a, const Signature& b,
                                              const DecompositionBudget& budget) {
  if (a.d() != b.d()) throw PreconditionError("tensor factors must have the same d");
  if (weyl_dim(a) * weyl_dim(b) > budget.max_dim) {
    throw BudgetExceeded("tensor product limited to dim <= " + budget.max_dim.get_str());
  }
  const int d = a.d();
  const auto [nu1, s1] = polynomial_shift(a);
  const auto [nu2, s2] = polynomial_shift(b);
  std::vector<TensorComponent> out;
  for (const Partition& nu : partitions_of(nu1.size() + nu2.size(), d, nu1[0] + nu2[0])) {
    if (!nu.contains(nu1) || !nu.contains(nu2)) continue;
    BigInt c = lr_coefficient(nu, nu1, nu2);
    if (c == 0) continue;
    out.push_back({padded_signature(nu, d, -(s1 + s2)), c});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.sig < y.sig; });
  return out;
}

namespace {

struct Sizes {
  long lambda = 0;
  long mu = 0;
};

Sizes pair_sizes(const Signature& sig) {
  const auto pair = signature_to_pair(sig);
  return {pair.lambda.size(), pair.mu.size()};
}

void record(BranchingReport& report, bool ok, const std::string& what) {
  ++report.checked;
  if (!ok) {
    report.holds = false;
    report.violations.push_back(what);
  }
}

}  // namespace

BranchingReport check_branching_inequalities(const Signature& a, const Signature& b,
                                             const std::vector<TensorComponent>& components) {
  BranchingReport report;
  const Sizes s1 = pair_sizes(a);
  const Sizes s2 = pair_sizes(b);
  for (const auto& c : components) {
    const Sizes s3 = pair_sizes(c.sig);
    const bool ok = s3.lambda <= s1.lambda + s2.lambda && s3.mu <= s1.mu + s2.mu &&
                    s3.lambda - s3.mu == s1.lambda + s2.lambda - s1.mu - s2.mu;
    record(report, ok, c.sig.to_string() + " in " + a.to_string() + " x " + b.to_string());
  }
  return report;
}

BranchingReport check_branching_inequalities(const Signature& sig, const BlockDecomposition& decomposition) {
  BranchingReport report;
  const Sizes s = pair_sizes(sig);
  for (const auto& c : decomposition.components) {
    const Sizes s1 = pair_sizes(c.left);
    const Sizes s2 = pair_sizes(c.right);
    const bool ok = s1.lambda + s2.lambda <= s.lambda && s1.mu + s2.mu <= s.mu &&
                    s1.lambda + s2.lambda - s1.mu - s2.mu == s.lambda - s.mu;
    record(report, ok, c.left.to_string() + " x " + c.right.to_string() + " in " + sig.to_string());
  }
  return report;
}

double rational_approx_defect(const Partition& lambda, const Partition& mu, const DiagonalUnitary& u,
                              const CharOptions& options) {
  const int d = u.d();
  const Signature sig = signature_from_pair(lambda, mu, d);
  const Complex chi = normalized_char(sig, u, options);
  const Complex t = u.trace() / static_cast<double>(d);
  const Complex target = std::pow(t, lambda.size()) * std::pow(std::conj(t), mu.size());
  return std::abs(chi - target);
}

}  // namespace weylchar
