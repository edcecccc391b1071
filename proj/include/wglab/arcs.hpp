#pragma once

// Farey dissection of the circle into major and minor arcs, Dirichlet
// rational approximation, and the prime-power weight w_k(q).

#include <string_view>
#include <vector>

#include "wglab/arith.hpp"

namespace wglab {

/// w_k on prime powers p^(ku+v), 1 <= v <= k: k p^(-u-1/2) if v = 1, else
/// p^(-u-1). Extended multiplicatively; w_k(1) = 1.
double w_k(int k, u64 q);

/// alpha = a/q + beta with gcd(a, q) = 1 and 0 <= a <= q.
struct RationalPoint {
  i64 a = 0;
  u64 q = 1;
  double beta = 0.0;
};

/// Smallest-denominator rational a/q with q <= qbound and
/// |q alpha - a| <= 1/qbound. Walks the continued-fraction convergents of
/// the exact binary value of alpha, so a solution always exists.
RationalPoint dirichlet_approx(double alpha, double qbound);

enum class Region { major, minor, full };
std::string_view region_name(Region r) noexcept;
Region parse_region(std::string_view name);

struct ArcParams {
  double A = 1.0;
  double P = 1.0;
  double Q = 2.0;
  ProblemContext ctx;

  /// P = (log x)^A, Q = x y^(k-1) / P.
  static ArcParams from_context(const ProblemContext& ctx, double A);
  /// Explicit (P, Q), for diagnostics detached from a context.
  static ArcParams explicit_pq(double P, double Q);
};

struct Classification {
  Region region = Region::minor;
  RationalPoint point;
};

/// Major iff some a/q with q <= P, gcd(a, q) = 1 has |q alpha - a| <= 1/Q.
/// point is dirichlet_approx(alpha, Q).
Classification classify(double alpha, const ArcParams& params);

struct MajorInterval {
  u64 q = 1;
  u64 a = 0;
  double center = 0.0;
  double half_width = 0.0;
};

/// The major arcs I(q, a), q <= P, sorted by center. The arc at 0 is glued
/// with the one at 1 and stored once as (q, a) = (1, 0).
struct ArcDecomposition {
  ArcParams params;
  std::vector<MajorInterval> major_intervals;

  /// Throws Errc::overlap_detected if two arcs share interior points.
  static ArcDecomposition build(const ArcParams& params);
  /// Membership by explicit interval scan (circular distance).
  bool contains(double alpha) const;
};

/// Lebesgue measure of the union of major arcs: sum_{q <= P} phi(q) 2/(qQ).
double major_measure(const ArcParams& params);

}  // namespace wglab
