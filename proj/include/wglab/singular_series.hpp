#pragma once

// Complete Gauss sums S(q, a), the coefficients
//   A(q, n) = phi(q)^-s sum_{(a,q)=1} S(q, a)^s e(-an/q),
// and the truncated singular series sum_{q <= Q0} A(q, n).

#include <optional>
#include <utility>
#include <vector>

#include "wglab/arith.hpp"
#include "wglab/phase.hpp"

namespace wglab {

struct GaussSumValue {
  u64 q = 1;
  i64 a = 1;
  int k = 2;
  Complex value;
};

/// Direct sum over the reduced residues b mod q of e(a b^k / q).
/// Throws Errc::not_coprime if gcd(a, q) > 1.
GaussSumValue gauss_sum(u64 q, i64 a, int k);

/// S(q, a) for every a in [0, q), from the distribution of b^k mod q.
/// Entries with gcd(a, q) > 1 carry the same formula but are not Gauss sums
/// in the sense above.
std::vector<Complex> gauss_sums_all(u64 q, int k);

/// A(q, n) evaluated directly. Throws Errc::imaginary_residue if the
/// imaginary part exceeds 1e-8.
double a_coefficient(u64 q, u64 n, int k, int s);

inline constexpr double kImaginaryTolerance = 1e-8;

struct SeriesTruncation {
  u64 n = 0;
  int s = 0;
  int k = 0;
  u64 Q0 = 0;
  double value = 0.0;
  double imag_residue = 0.0;
  /// (q, A(q, n)) for q <= Q0 with |A(q, n)| > 1e-12, q ascending.
  std::vector<std::pair<u64, double>> partials;
  /// Heuristic tail: sampled sum of |A(q, n)| over Q0 < q <= 2 Q0.
  std::optional<double> tail_heuristic;

  /// Re-sum of the partials with q <= q_max.
  double value_at(u64 q_max) const;
};

/// Multiplicative evaluator. A(p^j, n) is computed directly for prime powers
/// p^j <= max_q from n-independent tables built at construction; composite q
/// are synthesized from A(q1 q2, n) = A(q1, n) A(q2, n). Immutable after
/// construction, so one instance serves concurrent evaluations.
class SingularSeries {
 public:
  SingularSeries(int k, int s, u64 max_q);

  int k() const noexcept { return k_; }
  int s() const noexcept { return s_; }
  u64 max_q() const noexcept { return max_q_; }

  /// Complex A(q, n) for every q in [0, q_max]; index 0 is unused.
  std::vector<Complex> coefficients(u64 n, u64 q_max) const;

  /// Throws Errc::imaginary_residue if the accumulated imaginary part
  /// exceeds 1e-8.
  SeriesTruncation truncate(u64 n, u64 Q0, bool with_tail = false) const;

 private:
  struct PrimePowerTable {
    u64 q = 0;
    std::vector<u64> residues;     // reduced a
    std::vector<Complex> weights;  // S(q, a)^s / phi(q)^s
    std::vector<Complex> roots;    // e(-r/q), r in [0, q)
  };

  Complex prime_power_coefficient(const PrimePowerTable& t, u64 n) const;

  int k_;
  int s_;
  u64 max_q_;
  std::vector<u64> spf_;               // smallest prime factor
  std::vector<u64> prime_power_part_;  // full power of spf dividing q
  std::vector<std::size_t> table_of_;  // q -> index into tables_ for prime powers
  std::vector<PrimePowerTable> tables_;
};

/// Sigma(n) truncated at Q0, with the heuristic tail estimate.
SeriesTruncation truncated_sigma(u64 n, const ProblemContext& ctx, u64 Q0);
SeriesTruncation truncated_sigma(u64 n, int k, int s, u64 Q0);

}  // namespace wglab
