// Partitions, signatures and Gelfand-Tsetlin patterns.
//
// A Partition is a Young diagram with trailing zeros stripped. A Signature is a
// highest weight of U(d): a weakly decreasing integer d-tuple whose length is
// semantic. {mu-bar; lambda} below denotes the signature
// (lambda_1, ..., lambda_p, 0, ..., 0, -mu_q, ..., -mu_1).
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "weylchar/numeric.hpp"

namespace weylchar {

class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument on negative or increasing parts.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  /// Part i (0-based), zero past the end.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition conjugate() const;
  bool contains(const Partition& other) const;
  /// Parts padded with zeros to the given length.
  std::vector<int> padded(int length) const;
  std::string to_string() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

class Signature {
 public:
  /// Throws std::invalid_argument when empty or not weakly decreasing.
  explicit Signature(std::vector<int> entries);
  Signature(std::initializer_list<int> entries) : Signature(std::vector<int>(entries)) {}

  static Signature zero(int d);

  const std::vector<int>& entries() const { return entries_; }
  int d() const { return static_cast<int>(entries_.size()); }
  int operator[](std::size_t i) const { return entries_[i]; }
  long total() const;
  Signature shifted(int a) const;
  /// Negate and reverse: the highest weight of the contragredient.
  Signature dual() const;
  std::string to_string() const;

  friend auto operator<=>(const Signature&, const Signature&) = default;

 private:
  std::vector<int> entries_;
};

struct PartitionPair {
  Partition lambda;
  Partition mu;
  friend bool operator==(const PartitionPair&, const PartitionPair&) = default;
};

/// {mu-bar; lambda} of length d. Throws PreconditionError if l(lambda)+l(mu) > d.
Signature signature_from_pair(const Partition& lambda, const Partition& mu, int d);
PartitionPair signature_to_pair(const Signature& sig);

/// Lambda = a * 1_d + {mu-bar; lambda} with the middle run of length d - 2*level constant.
struct ShiftDecomposition {
  int shift = 0;
  Partition lambda;
  Partition mu;
  int level = 0;  // max(l(lambda), l(mu))
};

/// The middle run exists but the level exceeds the requested bound.
struct NoConstantMiddle {
  int level = 0;
  int max_level = 0;
};

using ShiftResult = std::variant<ShiftDecomposition, NoConstantMiddle>;

/// level = max{j : Lambda_j > Lambda_{d+1-j}} (0 when constant).
int shift_level(const Signature& sig);

/// max_level defaults to floor(d/4).
ShiftResult shift_decompose(const Signature& sig, std::optional<int> max_level = std::nullopt);

/// Rows from bottom (length 1) to top (the signature, length d).
struct GTPattern {
  std::vector<std::vector<int>> rows;

  int d() const { return static_cast<int>(rows.size()); }
  const std::vector<int>& top() const { return rows.back(); }
  bool is_valid() const;
};

struct EnumerationBudget {
  int max_d = 8;
  /// Upper bound on the number of patterns (equivalently the Weyl dimension).
  BigInt max_patterns = 5'000'000;
};

/// Calls visit for every GT pattern with the given top row. Depth first.
void for_each_gt_pattern(const Signature& top, const std::function<void(const GTPattern&)>& visit,
                         const EnumerationBudget& budget = {});

std::vector<GTPattern> enumerate_gt_patterns(const Signature& top,
                                             const EnumerationBudget& budget = {});

/// w_k = sum(row k) - sum(row k-1).
std::vector<int> gt_weight(const GTPattern& pattern);

using WeightMultiplicities = std::map<std::vector<int>, BigInt>;

/// Weight multiplicities of pi_Lambda, computed row by row with identical rows merged.
WeightMultiplicities weight_multiplicities(const Signature& top, const EnumerationBudget& budget = {});

/// Distribution of sum_k coeffs[k] * w_k over all patterns, as counts.
std::map<long, BigInt> linear_weight_counts(const Signature& top, std::span<const int> coeffs,
                                            const EnumerationBudget& budget = {});

/// Partitions of n with at most max_length parts, each at most max_part. Reverse lexicographic.
std::vector<Partition> partitions_of(int n, int max_length = -1, int max_part = -1);

/// Partitions contained in the given shape (including the empty one).
std::vector<Partition> subpartitions(const Partition& shape, int max_length = -1);

}  // namespace weylchar
