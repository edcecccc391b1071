#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "wglab/arith.hpp"
#include "wglab/error.hpp"

using namespace wglab;

namespace {

bool slow_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::io_error;
}

}  // namespace

TEST_SUITE("arith") {

TEST_CASE("sieve examples") {
  CHECK(sieve_interval(10, 30) == std::vector<u64>{11, 13, 17, 19, 23, 29});
  CHECK(sieve_interval(2, 3) == std::vector<u64>{3});
  CHECK(sieve_interval(24, 28).empty());
  CHECK(sieve_interval(0, 2) == std::vector<u64>{2});
  CHECK(code_of([] { sieve_interval(5, 5); }) == Errc::empty_range);
  CHECK(code_of([] { sieve_interval(1, (u64{1} << 48) + 1); }) == Errc::range_too_large);
  CHECK(code_of([] { sieve_interval(1, 100, 50); }) == Errc::range_too_large);
}

TEST_CASE("sieve agrees with trial division") {
  for (u64 lo : {u64{0}, u64{1}, u64{90}, u64{65'000}, u64{1'000'000'000}}) {
    const u64 hi = lo + 3000;
    std::vector<u64> want;
    for (u64 n = lo + 1; n <= hi; ++n) {
      if (slow_prime(n)) want.push_back(n);
    }
    CHECK(sieve_interval(lo, hi) == want);
  }
}

TEST_CASE("sieve segmentation invariance") {
  const u64 M = 300'000;
  const auto whole = sieve_interval(0, M);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<u64> cuts{0, M};
    for (int i = 0; i < 6; ++i) cuts.push_back(1 + rng() % (M - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<u64> joined;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const auto part = sieve_interval(cuts[i], cuts[i + 1]);
      joined.insert(joined.end(), part.begin(), part.end());
    }
    CHECK(joined == whole);
  }
}

TEST_CASE("factorize examples") {
  CHECK(factorize(1).empty());
  CHECK(factorize(360) == Factorization{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(97) == Factorization{{97, 1}});
  // Cofactor above the trial-division bound that is itself prime.
  CHECK(factorize(2 * 1'000'003ULL) == Factorization{{2, 1}, {1'000'003, 1}});
  CHECK(code_of([] { factorize(1'000'003ULL * 1'000'033ULL); }) == Errc::factorization_failed);
}

TEST_CASE("factorization reconstructs and phi is multiplicative") {
  for (u64 q = 1; q <= 100'000; ++q) {
    const auto f = factorize(q);
    u64 prod = 1, phi = 1;
    for (const auto& [p, e] : f) {
      CHECK(slow_prime(p));
      u64 pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      prod *= pe;
      phi *= pe / p * (p - 1);
    }
    REQUIRE(prod == q);
    REQUIRE(euler_phi(q) == phi);
  }
  for (u64 q = 1; q <= 1000; ++q) {
    u64 count = 0;
    for (u64 b = 1; b <= q; ++b) count += std::gcd(b, q) == 1;
    REQUIRE(euler_phi(q) == count);
  }
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(97) == 96);
}

TEST_CASE("modular helpers") {
  CHECK(inverse_mod(3, 7) == 5);
  CHECK(inverse_mod(5, 1) == 0);
  CHECK(code_of([] { inverse_mod(4, 6); }) == Errc::not_coprime);
  CHECK(powmod(2, 10, 1000) == 24);
  CHECK(is_prime(2'147'483'647ULL));
  CHECK_FALSE(is_prime(3'215'031'751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("tau and eta") {
  CHECK(tau_eta(2, 2) == TauEta{1, 3});
  CHECK(tau_eta(3, 2) == TauEta{0, 1});
  CHECK(tau_eta(4, 3) == TauEta{0, 1});
  CHECK(tau_eta(4, 2) == TauEta{2, 4});
  for (int k = 3; k <= 99; k += 2) CHECK(tau_eta(k, 2) == TauEta{0, 1});
}

TEST_CASE("modulus R") {
  CHECK(modulus_R(2) == 24);
  CHECK(modulus_R(3) == 2);
  CHECK(modulus_R(4) == 240);
  for (int k = 2; k <= 50; ++k) CHECK(modulus_R(k) % 2 == 0);
}

TEST_CASE("admissibility") {
  CHECK(is_admissible(29, 2, 5));
  CHECK_FALSE(is_admissible(30, 2, 5));
  CHECK_FALSE(is_admissible(27, 3, 7));
  CHECK(is_admissible(25, 3, 7));
  CHECK(is_admissible(27, 3, 5));
}

TEST_CASE("problem context") {
  const auto ctx = ProblemContext::from_x(2, 5, 0.8, 400);
  CHECK(ctx.N == 800'000);
  CHECK(ctx.y == doctest::Approx(std::pow(400.0, 0.8)));
  const auto back = ProblemContext::from_n(2, 5, 0.8, 800'000);
  CHECK(back.x == 400.0);
  const auto xy = ProblemContext::from_xy(2, 2, 10, 4);
  CHECK(xy.N == 200);
  CHECK(xy.y == doctest::Approx(4.0));
  CHECK(code_of([] { ProblemContext::from_x(1, 5, 0.8, 400); }) == Errc::parameter_domain);
  CHECK(code_of([] { ProblemContext::from_x(2, 5, 1.5, 400); }) == Errc::parameter_domain);
}

TEST_CASE("prime window") {
  const auto w = PrimeWindow::build(10, 4);
  CHECK(w.primes == std::vector<u64>{7, 11, 13});
  CHECK(w.weights[0] == std::log(7.0));
  CHECK(w.weights[2] == std::log(13.0));
  // Half-open: 6 is excluded and 14 included.
  const auto b = window_bounds(10, 4);
  CHECK(b.lo == 6);
  CHECK(b.hi == 14);
  CHECK(PrimeWindow::build(10, 0.5).primes.empty());
}

TEST_CASE("checked power") {
  CHECK(checked_power(10, 3) == 1000);
  CHECK(checked_power(u64{1} << 32, 4) == 0);
  CHECK(checked_power((u64{1} << 32) - 1, 4) != 0);
}

}
