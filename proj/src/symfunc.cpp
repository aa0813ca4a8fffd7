#include "weylchar/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace weylchar {

BigInt weyl_dim(const Signature& sig) {
  const int d = sig.d();
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= sig[i] - sig[j] + (j - i);
      den *= j - i;
    }
  }
  return num / den;
}

BigInt schur_dim(const Partition& lambda, int d) {
  if (lambda.length() > d) {
    throw PreconditionError("schur_dim: l(lambda) = " + std::to_string(lambda.length()) +
                            " exceeds d = " + std::to_string(d));
  }
  return weyl_dim(Signature(lambda.padded(d)));
}

BigInt sym_group_dim(const Partition& lambda) {
  const Partition conj = lambda.conjugate();
  BigInt hooks = 1;
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda[i]; ++j) {
      hooks *= (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
    }
  }
  return factorial(static_cast<unsigned>(lambda.size())) / hooks;
}

Rational leading_coeff(const Partition& lambda) {
  const int l = lambda.length();
  Rational c = 1;
  for (int i = 1; i <= l; ++i) {
    for (int j = i + 1; j <= l; ++j) {
      c *= Rational(lambda[i - 1] - lambda[j - 1] + j - i, j - i);
    }
  }
  for (int i = 1; i <= l; ++i) {
    c *= Rational(factorial(static_cast<unsigned>(l - i)),
                  factorial(static_cast<unsigned>(l + lambda[i - 1] - i)));
  }
  c.canonicalize();
  return c;
}

BigInt centralizer_order(const Partition& rho) {
  std::map<int, unsigned> mult;
  for (int part : rho.parts()) ++mult[part];
  BigInt z = 1;
  for (const auto& [part, m] : mult) {
    BigInt pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(part), m);
    z *= pk * factorial(m);
  }
  return z;
}

namespace {

/// MN recursion on beta-sets, memoized on (shape, remaining cycle type) for one call tree.
class MurnaghanNakayama {
 public:
  BigInt character(const Partition& lambda, const Partition& rho) {
    if (lambda.size() != rho.size()) return 0;
    if (rho.empty()) return 1;
    auto key = std::make_pair(lambda, rho);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int k = rho[0];
    const Partition rest(std::vector<int>(rho.parts().begin() + 1, rho.parts().end()));

    const int len = lambda.length();
    std::vector<int> beta(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);
    const std::set<int> beads(beta.begin(), beta.end());

    BigInt total = 0;
    for (int i = 0; i < len; ++i) {
      const int target = beta[i] - k;
      if (target < 0 || beads.count(target)) continue;
      int between = 0;
      for (int b : beta) {
        if (b > target && b < beta[i]) ++between;
      }
      std::vector<int> moved(beta);
      moved[i] = target;
      std::sort(moved.begin(), moved.end(), std::greater<>());
      std::vector<int> parts(static_cast<std::size_t>(len));
      for (int j = 0; j < len; ++j) parts[j] = moved[j] - (len - 1 - j);
      BigInt value = character(Partition(std::move(parts)), rest);
      if (between % 2) {
        total -= value;
      } else {
        total += value;
      }
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  std::map<std::pair<Partition, Partition>, BigInt> memo_;
};

}  // namespace

BigInt sym_group_character(const Partition& lambda, const Partition& rho) {
  MurnaghanNakayama mn;
  return mn.character(lambda, rho);
}

Rational PowerSumExpansion::coefficient(const Partition& rho) const {
  auto it = coefficients.find(rho);
  return it == coefficients.end() ? Rational(0) : it->second;
}

PowerSumExpansion schur_to_power_sums(const Partition& lambda, const PowerSumOptions& options) {
  const int n = lambda.size();
  if (n > options.max_size) {
    throw BudgetExceeded("power-sum expansion limited to |lambda| <= " + std::to_string(options.max_size));
  }
  PowerSumExpansion out{lambda, {}};
  MurnaghanNakayama mn;
  for (const Partition& rho : partitions_of(n)) {
    Rational c(mn.character(lambda, rho), centralizer_order(rho));
    c.canonicalize();
    out.coefficients.emplace(rho, std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------- Littlewood-Richardson

namespace {

class LRFiller {
 public:
  LRFiller(const Partition& nu, const Partition& alpha, const Partition& beta)
      : nu_(nu), alpha_(alpha), beta_(beta) {
    for (int r = 0; r < nu.length(); ++r) {
      for (int c = nu[r] - 1; c >= alpha[r]; --c) cells_.emplace_back(r, c);
    }
    filling_.resize(static_cast<std::size_t>(nu.length()));
    for (int r = 0; r < nu.length(); ++r) filling_[r].assign(static_cast<std::size_t>(nu[r]), 0);
    counts_.assign(static_cast<std::size_t>(beta.length()) + 1, 0);
  }

  BigInt count() {
    result_ = 0;
    place(0);
    return result_;
  }

 private:
  void place(std::size_t idx) {
    if (idx == cells_.size()) {
      ++result_;
      return;
    }
    const auto [r, c] = cells_[idx];
    int hi = beta_.length();
    // rows weakly increase left to right, and we fill right to left
    if (c + 1 < nu_[r]) hi = std::min(hi, filling_[r][c + 1]);
    int lo = 1;
    // columns strictly increase downward; cells inside alpha impose nothing
    if (r > 0 && c >= alpha_[r - 1]) lo = filling_[r - 1][c] + 1;
    for (int v = lo; v <= hi; ++v) {
      if (counts_[v] >= beta_[v - 1]) continue;
      if (v > 1 && counts_[v] + 1 > counts_[v - 1]) continue;
      ++counts_[v];
      filling_[r][c] = v;
      place(idx + 1);
      --counts_[v];
    }
    filling_[r][c] = 0;
  }

  const Partition& nu_;
  const Partition& alpha_;
  const Partition& beta_;
  std::vector<std::pair<int, int>> cells_;
  std::vector<std::vector<int>> filling_;
  std::vector<int> counts_;
  BigInt result_;
};

}  // namespace

BigInt lr_coefficient(const Partition& nu, const Partition& alpha, const Partition& beta) {
  if (alpha.size() + beta.size() != nu.size()) return 0;
  if (!nu.contains(alpha) || !nu.contains(beta)) return 0;
  if (beta.empty()) return alpha == nu ? 1 : 0;
  LRFiller filler(nu, alpha, beta);
  return filler.count();
}

}  // namespace weylchar
