#include "wglab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

#include "wglab/error.hpp"

namespace wglab {

namespace {

u64 isqrt(u64 n) noexcept {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> simple_sieve(u64 limit) {
  std::vector<std::uint8_t> composite(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

// Grow-only table of small primes. Each snapshot handed out is immutable, so
// readers never observe a table being rebuilt.
class BasePrimes {
 public:
  std::shared_ptr<const std::vector<std::uint32_t>> upto(u64 limit) {
    std::lock_guard lock(mu_);
    if (!table_ || limit > limit_) {
      u64 target = std::max<u64>(limit, std::max<u64>(2 * limit_, 1 << 16));
      table_ = std::make_shared<const std::vector<std::uint32_t>>(simple_sieve(target));
      limit_ = target;
    }
    return table_;
  }

 private:
  std::mutex mu_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
  u64 limit_ = 0;
};

BasePrimes& base_primes() {
  static BasePrimes instance;
  return instance;
}

constexpr u64 kSegmentOdds = u64{1} << 15;

}  // namespace

std::vector<u64> sieve_interval(u64 lo, u64 hi, u64 ceiling) {
  if (lo >= hi) {
    throw Error(Errc::empty_range, "sieve_interval(" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + ")");
  }
  if (hi > ceiling) {
    throw Error(Errc::range_too_large,
                "upper end " + std::to_string(hi) + " exceeds ceiling " + std::to_string(ceiling));
  }
  const u64 root = isqrt(hi);
  const auto base = base_primes().upto(std::max<u64>(root, 2));

  std::vector<u64> out;
  if (lo < 2 && hi >= 2) out.push_back(2);

  u64 start = std::max<u64>(lo + 1, 3);
  if (start % 2 == 0) ++start;
  std::vector<std::uint8_t> composite;
  // Segments cover odd numbers only; seg_lo stays odd.
  for (u64 seg_lo = start; seg_lo <= hi; seg_lo += 2 * kSegmentOdds) {
    const u64 seg_hi = std::min(hi, seg_lo + 2 * kSegmentOdds - 1);
    const u64 count = (seg_hi - seg_lo) / 2 + 1;
    composite.assign(count, 0);
    for (std::uint32_t p32 : *base) {
      const u64 p = p32;
      if (p == 2) continue;
      if (p * p > seg_hi) break;
      u64 first = std::max(p * p, (seg_lo + p - 1) / p * p);
      if (first % 2 == 0) first += p;
      for (u64 m = first; m <= seg_hi; m += 2 * p) composite[(m - seg_lo) / 2] = 1;
    }
    for (u64 i = 0; i < count; ++i) {
      if (!composite[i]) out.push_back(seg_lo + 2 * i);
    }
  }
  return out;
}

u64 mulmod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  // These bases are deterministic for all n < 2^64.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 quotient = old_r / r;
    old_r -= quotient * r;
    std::swap(old_r, r);
    old_s -= quotient * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw Error(Errc::not_coprime,
                "inverse_mod: gcd(" + std::to_string(a) + ", " + std::to_string(m) + ") != 1");
  }
  const i64 mm = static_cast<i64>(m);
  return static_cast<u64>(((old_s % mm) + mm) % mm);
}

Factorization factorize(u64 q, u64 ceiling) {
  if (q == 0 || q > ceiling) {
    throw Error(Errc::range_too_large, "factorize(" + std::to_string(q) + ")");
  }
  Factorization result;
  const u64 bound = std::min(kTrialDivisionBound, isqrt(q));
  const auto base = base_primes().upto(std::max<u64>(bound, 2));
  for (std::uint32_t p32 : *base) {
    const u64 p = p32;
    if (p > bound || p * p > q) break;
    if (q % p != 0) continue;
    int e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    result.push_back({p, e});
  }
  if (q > 1) {
    // No factor below min(10^6, sqrt) remains, so q is prime when q < 10^12.
    const bool prime = q < kTrialDivisionBound * kTrialDivisionBound || is_prime(q);
    if (!prime) {
      throw Error(Errc::factorization_failed,
                  "composite cofactor " + std::to_string(q) + " beyond trial-division bound");
    }
    result.push_back({q, 1});
  }
  return result;
}

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& [p, e] : f) {
    phi *= p - 1;
    for (int i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

u64 euler_phi(u64 q) { return euler_phi(factorize(q)); }

TauEta tau_eta(int k, u64 p) {
  if (k < 2) throw Error(Errc::parameter_domain, "tau_eta requires k >= 2");
  int tau = 0;
  auto rem = static_cast<u64>(k);
  while (rem % p == 0) {
    rem /= p;
    ++tau;
  }
  const int eta = (p == 2 && tau > 0) ? tau + 2 : tau + 1;
  return {tau, eta};
}

u64 modulus_R(int k) {
  if (k < 2) throw Error(Errc::parameter_domain, "modulus_R requires k >= 2");
  u64 R = 1;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    const u64 p = static_cast<u64>(d) + 1;
    if (!is_prime(p)) continue;
    const int eta = tau_eta(k, p).eta;
    for (int i = 0; i < eta; ++i) R *= p;
  }
  return R;
}

u128 checked_power(u64 n, int k) noexcept {
  u128 result = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && result > std::numeric_limits<u128>::max() / n) return 0;
    result *= n;
  }
  return result;
}

namespace {

void check_ks(int k, int s) {
  if (k < 2) throw Error(Errc::parameter_domain, "k must be >= 2");
  if (s < 2) throw Error(Errc::parameter_domain, "s must be >= 2");
}

// s * x^k as an integer if it fits in 64 bits, else 0.
u64 n_from_x(int k, int s, double x) {
  const double value = static_cast<double>(s) * std::pow(x, k);
  if (!(value < 0x1p63)) return 0;
  return static_cast<u64>(std::llround(value));
}

}  // namespace

ProblemContext ProblemContext::from_n(int k, int s, double theta, u64 N) {
  check_ks(k, s);
  if (N == 0) throw Error(Errc::parameter_domain, "N must be positive");
  if (!(theta > 0.0 && theta <= 1.0)) throw Error(Errc::parameter_domain, "theta must lie in (0, 1]");
  ProblemContext ctx;
  ctx.k = k;
  ctx.s = s;
  ctx.theta = theta;
  ctx.N = N;
  ctx.x = std::pow(static_cast<double>(N) / s, 1.0 / k);
  // Snap to an exact integer root so that s x^k reproduces N.
  const auto r = static_cast<u64>(std::llround(ctx.x));
  const u128 rk = checked_power(r, k);
  if (rk != 0 && rk * static_cast<u128>(s) == N) ctx.x = static_cast<double>(r);
  ctx.y = std::pow(ctx.x, theta);
  return ctx;
}

ProblemContext ProblemContext::from_x(int k, int s, double theta, double x) {
  check_ks(k, s);
  if (!(x > 1.0)) throw Error(Errc::parameter_domain, "x must exceed 1");
  if (!(theta > 0.0 && theta <= 1.0)) throw Error(Errc::parameter_domain, "theta must lie in (0, 1]");
  ProblemContext ctx;
  ctx.k = k;
  ctx.s = s;
  ctx.theta = theta;
  ctx.x = x;
  ctx.y = std::pow(x, theta);
  ctx.N = n_from_x(k, s, x);
  return ctx;
}

ProblemContext ProblemContext::from_xy(int k, int s, double x, double y) {
  check_ks(k, s);
  if (!(x > 1.0)) throw Error(Errc::parameter_domain, "x must exceed 1");
  if (!(y > 0.0 && y <= x)) throw Error(Errc::parameter_domain, "y must lie in (0, x]");
  ProblemContext ctx;
  ctx.k = k;
  ctx.s = s;
  ctx.x = x;
  ctx.y = y;
  ctx.theta = std::log(y) / std::log(x);
  ctx.N = n_from_x(k, s, x);
  return ctx;
}

bool is_admissible(u64 n, int k, int s) {
  const u64 R = modulus_R(k);
  if (n % R != static_cast<u64>(s) % R) return false;
  if (k == 3 && s == 7 && n % 9 == 0) return false;
  return true;
}

bool is_admissible(u64 n, const ProblemContext& ctx) { return is_admissible(n, ctx.k, ctx.s); }

IntegerRange window_bounds(double x, double y) {
  const double lo = std::floor(x - y);
  const double hi = std::floor(x + y);
  return {static_cast<i64>(std::max(lo, 0.0)), static_cast<i64>(std::max(hi, 0.0))};
}

PrimeWindow PrimeWindow::build(double x, double y) {
  PrimeWindow w;
  w.x = x;
  w.y = y;
  const auto [lo, hi] = window_bounds(x, y);
  if (hi > lo) w.primes = sieve_interval(static_cast<u64>(lo), static_cast<u64>(hi));
  w.weights.reserve(w.primes.size());
  for (u64 p : w.primes) w.weights.push_back(std::log(static_cast<double>(p)));
  return w;
}

}  // namespace wglab
