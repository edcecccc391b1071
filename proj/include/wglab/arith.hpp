#pragma once

// Integer utilities: interval sieve, factorization, totient, and the
// congruence layer (tau, eta, R(k), admissibility).

#include <cstdint>
#include <span>
#include <vector>

namespace wglab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kIntegerCeiling = u64{1} << 48;
inline constexpr u64 kTrialDivisionBound = 1'000'000;

/// Primes p with lo < p <= hi, ascending. Segmented sieve over cache-sized
/// blocks; base primes up to sqrt(hi) come from a shared, grow-only table.
std::vector<u64> sieve_interval(u64 lo, u64 hi, u64 ceiling = kIntegerCeiling);

struct PrimePower {
  u64 p = 0;
  int e = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

/// Trial division by primes up to 10^6, then a deterministic Miller-Rabin
/// test on the cofactor. A composite cofactor with no factor below 10^6 is
/// reported as Errc::factorization_failed.
Factorization factorize(u64 q, u64 ceiling = kIntegerCeiling);

u64 euler_phi(u64 q);
u64 euler_phi(const Factorization& f);

bool is_prime(u64 n) noexcept;
u64 mulmod(u64 a, u64 b, u64 m) noexcept;
u64 powmod(u64 base, u64 exp, u64 m) noexcept;
/// Inverse of a modulo m; requires gcd(a, m) = 1 and m >= 1.
u64 inverse_mod(u64 a, u64 m);

struct TauEta {
  int tau = 0;
  int eta = 0;
  friend bool operator==(const TauEta&, const TauEta&) = default;
};

/// tau = largest t with p^t | k; eta = tau + 2 if p = 2 and tau > 0, else tau + 1.
TauEta tau_eta(int k, u64 p);

/// R(k) = prod over primes p with (p - 1) | k of p^eta(k, p).
u64 modulus_R(int k);

/// The tuple (k, s, theta, N) with x = (N/s)^(1/k) and y = x^theta.
struct ProblemContext {
  int k = 2;
  int s = 2;
  double theta = 1.0;
  u64 N = 0;
  double x = 0.0;
  double y = 0.0;

  static ProblemContext from_n(int k, int s, double theta, u64 N);
  /// N = round(s x^k).
  static ProblemContext from_x(int k, int s, double theta, double x);
  /// theta = log y / log x; used for explicitly sized windows.
  static ProblemContext from_xy(int k, int s, double x, double y);
};

/// n = s (mod R(k)), and 9 does not divide n when (k, s) = (3, 7).
bool is_admissible(u64 n, const ProblemContext& ctx);
bool is_admissible(u64 n, int k, int s);

/// The primes in (x - y, x + y] with weights log p.
struct PrimeWindow {
  double x = 0.0;
  double y = 0.0;
  std::vector<u64> primes;
  std::vector<double> weights;

  static PrimeWindow build(double x, double y);
  static PrimeWindow build(const ProblemContext& ctx) { return build(ctx.x, ctx.y); }
  std::size_t size() const noexcept { return primes.size(); }
};

/// Integer endpoints of the half-open real window (x - y, x + y]:
/// the integers n with lo < n <= hi.
struct IntegerRange {
  i64 lo = 0;
  i64 hi = 0;
};
IntegerRange window_bounds(double x, double y);

/// Exact n^k, or 0 if it does not fit in 128 bits.
u128 checked_power(u64 n, int k) noexcept;

}  // namespace wglab
