#pragma once

// Exact weighted representation counts
//   rho(n) = sum over ordered prime tuples with p_1^k + ... + p_s^k = n of prod log p_i,
// each p_i in (x - y, x + y], and the exact even moments of f.

#include <span>
#include <vector>

#include "wglab/arith.hpp"

namespace wglab {

struct RepresentationRecord {
  u64 n = 0;
  double rho = 0.0;
  u64 tuple_count = 0;
};

inline constexpr u64 kNaiveEnumerationBound = 100'000'000;
inline constexpr u64 kMitmIndexCap = u64{1} << 31;

/// Full s-fold enumeration over ordered tuples. Throws Errc::too_large if
/// (window prime count)^s exceeds 10^8.
RepresentationRecord rho_naive(u64 n, const ProblemContext& ctx);
RepresentationRecord rho_naive(u64 n, const PrimeWindow& window, int k, int s);

/// All ordered t-fold sums of p^k over the window, merged by value: each key
/// carries the weight W(v) = sum of prod log p_i (compensated) and the tuple
/// count. Sorted by key.
class SumIndex {
 public:
  struct Entry {
    u128 key = 0;
    double weight = 0.0;
    u64 count = 0;
  };

  SumIndex(const PrimeWindow& window, int k, int t, u64 cap = kMitmIndexCap);

  std::span<const Entry> entries() const noexcept { return entries_; }
  const Entry* find(u128 key) const noexcept;
  int folds() const noexcept { return t_; }

 private:
  int t_;
  std::vector<Entry> entries_;
};

/// Meet-in-the-middle evaluator: s = s1 + s2 with s1 = ceil(s/2). The
/// s1-index is built once and joined against the s2-fold sums for each n.
class MitmCounter {
 public:
  MitmCounter(const PrimeWindow& window, int k, int s, u64 cap = kMitmIndexCap);
  MitmCounter(const ProblemContext& ctx, u64 cap = kMitmIndexCap);

  RepresentationRecord count(u64 n) const;
  /// Queries run in parallel; output order follows n_list.
  std::vector<RepresentationRecord> count_all(std::span<const u64> n_list) const;

  u128 min_sum() const noexcept { return min_sum_; }
  u128 max_sum() const noexcept { return max_sum_; }

 private:
  int s_;
  SumIndex left_;
  SumIndex right_;
  u128 min_sum_ = 0;
  u128 max_sum_ = 0;
};

std::vector<RepresentationRecord> rho_mitm(std::span<const u64> n_list, const ProblemContext& ctx);

struct MomentValue {
  int t = 1;
  double value = 0.0;
  u64 distinct_sums = 0;
};

/// int_0^1 |f(alpha)|^(2t) d alpha = sum_v W(v)^2 over the t-fold sums.
MomentValue moment(int t, const ProblemContext& ctx);
MomentValue moment(int t, const PrimeWindow& window, int k);

}  // namespace wglab
