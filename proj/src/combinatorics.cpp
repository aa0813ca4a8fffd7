#include "weylchar/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "weylchar/errors.hpp"

namespace weylchar {

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

long row_sum(const std::vector<int>& row) { return std::accumulate(row.begin(), row.end(), 0L); }

void check_budget(const Signature& top, const EnumerationBudget& budget) {
  if (top.d() > budget.max_d) {
    throw BudgetExceeded("GT enumeration limited to d <= " + std::to_string(budget.max_d) +
                         ", got d = " + std::to_string(top.d()));
  }
}

/// Every row of length k-1 interlacing the given row of length k.
template <typename Fn>
void for_each_row_below(const std::vector<int>& row, Fn&& fn) {
  const std::size_t k = row.size();
  if (k <= 1) {
    fn(std::vector<int>{});
    return;
  }
  std::vector<int> below(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) below[i] = row[i + 1];
  while (true) {
    fn(below);
    // odometer over below[i] in [row[i+1], row[i]]
    std::size_t i = 0;
    while (i + 1 < k) {
      if (below[i] < row[i]) {
        ++below[i];
        break;
      }
      below[i] = row[i + 1];
      ++i;
    }
    if (i + 1 == k) return;
  }
}

}  // namespace

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("partition has a negative part: " + join(parts_));
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("partition parts must be weakly decreasing: " + join(parts_));
    }
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> out(parts_.empty() ? 0 : parts_.front(), 0);
  for (int p : parts_) {
    for (int j = 0; j < p; ++j) ++out[j];
  }
  return Partition(std::move(out));
}

bool Partition::contains(const Partition& other) const {
  if (other.length() > length()) return false;
  for (std::size_t i = 0; i < other.parts_.size(); ++i) {
    if (other.parts_[i] > parts_[i]) return false;
  }
  return true;
}

std::vector<int> Partition::padded(int length) const {
  std::vector<int> out(parts_);
  if (static_cast<int>(out.size()) < length) out.resize(length, 0);
  return out;
}

std::string Partition::to_string() const { return "(" + join(parts_) + ")"; }

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("signature must have length d >= 1");
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i] > entries_[i - 1]) {
      throw std::invalid_argument("signature entries must be weakly decreasing: " + join(entries_));
    }
  }
}

Signature Signature::zero(int d) { return Signature(std::vector<int>(static_cast<std::size_t>(d), 0)); }

long Signature::total() const { return row_sum(entries_); }

Signature Signature::shifted(int a) const {
  std::vector<int> out(entries_);
  for (int& x : out) x += a;
  return Signature(std::move(out));
}

Signature Signature::dual() const {
  std::vector<int> out(entries_.rbegin(), entries_.rend());
  for (int& x : out) x = -x;
  return Signature(std::move(out));
}

std::string Signature::to_string() const { return "(" + join(entries_) + ")"; }

Signature signature_from_pair(const Partition& lambda, const Partition& mu, int d) {
  if (d < 1) throw PreconditionError("signature length d must be positive");
  if (lambda.length() + mu.length() > d) {
    throw PreconditionError("l(lambda) + l(mu) = " + std::to_string(lambda.length() + mu.length()) +
                            " exceeds d = " + std::to_string(d));
  }
  std::vector<int> entries(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < lambda.length(); ++i) entries[i] = lambda[i];
  for (int j = 0; j < mu.length(); ++j) entries[d - 1 - j] = -mu[j];
  return Signature(std::move(entries));
}

PartitionPair signature_to_pair(const Signature& sig) {
  std::vector<int> pos;
  std::vector<int> neg;
  for (int x : sig.entries()) {
    if (x > 0) pos.push_back(x);
  }
  for (auto it = sig.entries().rbegin(); it != sig.entries().rend(); ++it) {
    if (*it < 0) neg.push_back(-*it);
  }
  return {Partition(std::move(pos)), Partition(std::move(neg))};
}

int shift_level(const Signature& sig) {
  const int d = sig.d();
  int level = 0;
  for (int j = 1; 2 * j <= d + 1; ++j) {
    if (sig[j - 1] > sig[d - j]) level = j;
  }
  return level;
}

ShiftResult shift_decompose(const Signature& sig, std::optional<int> max_level) {
  const int d = sig.d();
  const int bound = max_level.value_or(d / 4);
  const int level = shift_level(sig);
  if (level > bound) return NoConstantMiddle{level, bound};
  // level <= d/2 < d, so index `level` is in range.
  const int a = sig[level];
  auto [lambda, mu] = signature_to_pair(sig.shifted(-a));
  return ShiftDecomposition{a, std::move(lambda), std::move(mu), level};
}

// ---------------------------------------------------------------- GT patterns

bool GTPattern::is_valid() const {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != k + 1) return false;
  }
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const auto& upper = rows[k + 1];
    const auto& lower = rows[k];
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (!(upper[i] >= lower[i] && lower[i] >= upper[i + 1])) return false;
    }
  }
  return true;
}

void for_each_gt_pattern(const Signature& top, const std::function<void(const GTPattern&)>& visit,
                         const EnumerationBudget& budget) {
  check_budget(top, budget);
  const int d = top.d();
  GTPattern pattern;
  pattern.rows.resize(static_cast<std::size_t>(d));
  pattern.rows[d - 1] = top.entries();
  BigInt visited = 0;

  std::function<void(int)> descend = [&](int k) {
    // rows[k] is filled; fill rows[k-1]
    if (k == 0) {
      if (++visited > budget.max_patterns) {
        throw BudgetExceeded("GT enumeration exceeded " + budget.max_patterns.get_str() + " patterns");
      }
      visit(pattern);
      return;
    }
    for_each_row_below(pattern.rows[k], [&](const std::vector<int>& below) {
      pattern.rows[k - 1] = below;
      descend(k - 1);
    });
  };
  descend(d - 1);
}

std::vector<GTPattern> enumerate_gt_patterns(const Signature& top, const EnumerationBudget& budget) {
  std::vector<GTPattern> out;
  for_each_gt_pattern(top, [&](const GTPattern& p) { out.push_back(p); }, budget);
  return out;
}

std::vector<int> gt_weight(const GTPattern& pattern) {
  std::vector<int> w(pattern.rows.size());
  long previous = 0;
  for (std::size_t k = 0; k < pattern.rows.size(); ++k) {
    long s = row_sum(pattern.rows[k]);
    w[k] = static_cast<int>(s - previous);
    previous = s;
  }
  return w;
}

namespace {

/// Generic row-by-row DP. State payload P is accumulated from the top row down;
/// `extend(payload, k, w_k)` incorporates weight component k (1-based).
template <typename Payload, typename Extend>
std::map<Payload, BigInt> gt_row_dp(const Signature& top, const EnumerationBudget& budget,
                                    Payload initial, Extend&& extend) {
  check_budget(top, budget);
  using State = std::pair<std::vector<int>, Payload>;
  std::map<State, BigInt> states;
  states.emplace(State{top.entries(), std::move(initial)}, BigInt(1));
  for (int k = top.d(); k >= 1; --k) {
    std::map<State, BigInt> next;
    for (const auto& [state, count] : states) {
      const long upper = row_sum(state.first);
      for_each_row_below(state.first, [&](const std::vector<int>& below) {
        const int w = static_cast<int>(upper - row_sum(below));
        next[State{below, extend(state.second, k, w)}] += count;
      });
      if (next.size() > budget.max_patterns) {
        throw BudgetExceeded("GT weight DP exceeded " + budget.max_patterns.get_str() + " states");
      }
    }
    states = std::move(next);
  }
  std::map<Payload, BigInt> out;
  for (auto& [state, count] : states) out[state.second] += count;
  return out;
}

}  // namespace

WeightMultiplicities weight_multiplicities(const Signature& top, const EnumerationBudget& budget) {
  const int d = top.d();
  return gt_row_dp(top, budget, std::vector<int>(static_cast<std::size_t>(d), 0),
                   [](std::vector<int> w, int k, int wk) {
                     w[k - 1] = wk;
                     return w;
                   });
}

std::map<long, BigInt> linear_weight_counts(const Signature& top, std::span<const int> coeffs,
                                            const EnumerationBudget& budget) {
  if (static_cast<int>(coeffs.size()) != top.d()) {
    throw PreconditionError("coefficient vector length must equal d");
  }
  return gt_row_dp(top, budget, 0L,
                   [&](long acc, int k, int wk) { return acc + static_cast<long>(coeffs[k - 1]) * wk; });
}

// ---------------------------------------------------------------- enumeration helpers

std::vector<Partition> partitions_of(int n, int max_length, int max_part) {
  std::vector<Partition> out;
  if (n < 0) return out;
  if (max_length < 0) max_length = n;
  if (max_part < 0) max_part = n;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (static_cast<int>(current.size()) == max_length) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(n, max_part);
  return out;
}

std::vector<Partition> subpartitions(const Partition& shape, int max_length) {
  const int len = max_length < 0 ? shape.length() : std::min(shape.length(), max_length);
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int row, int cap) {
    if (row == len) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(cap, shape[row]); p >= 0; --p) {
      current.push_back(p);
      rec(row + 1, p);
      current.pop_back();
    }
  };
  rec(0, shape.empty() ? 0 : shape[0]);
  // Zero-padded duplicates collapse after normalization.
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace weylchar
