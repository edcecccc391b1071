#pragma once

// Weighted exponential sums sum_n w_n e(alpha n^k) over the short window,
// grid scans of |f| over arc regions, and the large-value dichotomy report.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "wglab/arcs.hpp"
#include "wglab/arith.hpp"
#include "wglab/phase.hpp"

namespace wglab {

enum class SequenceKind { prime_log, integer_log, unit };
std::string_view kind_name(SequenceKind kind) noexcept;
SequenceKind parse_kind(std::string_view name);

struct WeightedSequence {
  std::vector<u64> support;
  std::vector<double> weights;
  SequenceKind kind = SequenceKind::unit;

  double total_weight() const noexcept;
};

/// prime_log: primes in (x - y, x + y] weighted by log p.
/// integer_log: every integer there weighted by log n. unit: weight 1.
/// Throws Errc::empty_window when the support is empty.
WeightedSequence build_sequence(const ProblemContext& ctx, SequenceKind kind);
WeightedSequence build_sequence(double lo_exclusive, double hi_inclusive, SequenceKind kind);

/// sum_n w_n e(alpha n^k). Throws Errc::precision_overflow if some n^k does
/// not fit in 128 bits.
Complex eval_sum(const WeightedSequence& seq, int k, double alpha);

struct SupScanReport {
  Region region = Region::full;
  std::size_t grid_size = 0;
  std::size_t points_in_region = 0;
  double sup_abs = 0.0;
  double argmax_alpha = 0.0;
  std::optional<std::pair<i64, u64>> nearest_rational;  // (a, q)
};

/// max |eval_sum| over the grid j / grid_size restricted to region; ties keep
/// the smallest j (values within 1e-12 relative are ties). Throws
/// Errc::empty_region if no grid point qualifies.
SupScanReport sup_scan(const WeightedSequence& seq, int k, const ArcDecomposition& arcs,
                       Region region, std::size_t grid_size);

/// Evaluates |eval_sum| on every grid point j / grid_size (all regions).
std::vector<double> abs_profile(const WeightedSequence& seq, int k, std::size_t grid_size);

struct DichotomyReport {
  double rho = 0.0;
  double alpha = 0.0;
  double bound_k1 = 0.0;  // y^(1 - rho)
  double bound_k3 = 0.0;  // w_k(q) y / (1 + y x^(k-1) |alpha - a/q|), +inf without approx
  double observed = 0.0;  // |sum_{x < n <= x + y} e(alpha n^k)|
  std::optional<RationalPoint> approx;
};

/// t_k = 2 for k = 2 and k^2 - k + 1 for k >= 3.
int dichotomy_tk(int k);

/// Requires 0 < rho <= 1/t_k and 1/(2 - t_k rho) <= theta <= 1.
DichotomyReport dichotomy_report(const ProblemContext& ctx, double rho, double alpha);

}  // namespace wglab
