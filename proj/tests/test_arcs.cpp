#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "wglab/arcs.hpp"
#include "wglab/error.hpp"

using namespace wglab;

TEST_SUITE("arcs") {

TEST_CASE("w_k examples") {
  CHECK(w_k(2, 1) == 1.0);
  CHECK(w_k(2, 2) == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(w_k(2, 4) == doctest::Approx(0.5));
  CHECK(w_k(3, 8) == doctest::Approx(0.5));
  // 2^3 = 2^(2*1 + 1) for k = 2: u = 1, v = 1.
  CHECK(w_k(2, 8) == doctest::Approx(2.0 * std::pow(2.0, -1.5)));
}

TEST_CASE("w_k is multiplicative on coprime pairs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const u64 a = 1 + rng() % 10'000, b = 1 + rng() % 10'000;
    if (std::gcd(a, b) != 1) continue;
    for (int k : {2, 3, 4}) CHECK(w_k(k, a * b) == doctest::Approx(w_k(k, a) * w_k(k, b)).epsilon(1e-12));
  }
}

TEST_CASE("dirichlet examples") {
  auto r = dirichlet_approx(0.0, 50);
  CHECK(r.a == 0);
  CHECK(r.q == 1);
  CHECK(r.beta == 0.0);
  r = dirichlet_approx(0.5, 10);
  CHECK(r.a == 1);
  CHECK(r.q == 2);
  CHECK(r.beta == 0.0);
  r = dirichlet_approx(0.14159265, 100);
  CHECK(r.a == 1);
  CHECK(r.q == 7);
  CHECK(std::abs(7 * 0.14159265 - 1) == doctest::Approx(0.00885145).epsilon(1e-6));
  // Near 1 the approximation is 1/1.
  r = dirichlet_approx(0.9999, 100);
  CHECK(r.q == 1);
  CHECK(r.a == 1);
}

TEST_CASE("dirichlet property on random alpha") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 20'000; ++i) {
    const double alpha = U(rng);
    const double Q = 1.0 + std::exp(U(rng) * 20.0);
    const auto r = dirichlet_approx(alpha, Q);
    REQUIRE(static_cast<double>(r.q) <= Q);
    REQUIRE(std::gcd(static_cast<u64>(r.a), r.q) == 1);
    REQUIRE(std::abs(std::fma(static_cast<double>(r.q), alpha, -static_cast<double>(r.a))) <= 1.0 / Q * (1 + 1e-12));
  }
}

TEST_CASE("classify examples") {
  const auto params = ArcParams::explicit_pq(10, 10'000);
  CHECK(classify(0.0, params).region == Region::major);
  CHECK(classify(0.0, params).point.q == 1);
  CHECK(classify(0.5 + 2.0 / params.Q, params).region == Region::minor);
  CHECK(classify(1.0 / 11.0, params).region == Region::minor);
  CHECK(classify(1.0 / 7.0, params).region == Region::major);
}

TEST_CASE("classify matches interval enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (auto [P, Q] : {std::pair{3.0, 50.0}, std::pair{10.0, 1e4}, std::pair{50.0, 1e5}}) {
    const auto params = ArcParams::explicit_pq(P, Q);
    const auto arcs = ArcDecomposition::build(params);
    for (int i = 0; i < 10'000; ++i) {
      const double alpha = U(rng);
      REQUIRE((classify(alpha, params).region == Region::major) == arcs.contains(alpha));
    }
  }
}

TEST_CASE("arcs are disjoint when Q > P^2") {
  for (int P = 1; P <= 50; ++P) {
    const auto arcs = ArcDecomposition::build(ArcParams::explicit_pq(P, P * P + 1.0));
    for (std::size_t i = 0; i + 1 < arcs.major_intervals.size(); ++i) {
      const auto& a = arcs.major_intervals[i];
      const auto& b = arcs.major_intervals[i + 1];
      REQUIRE(a.center + a.half_width <= b.center - b.half_width);
    }
  }
}

TEST_CASE("overlap is detected") {
  try {
    ArcDecomposition::build(ArcParams::explicit_pq(10, 12));
    FAIL("expected overlap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::overlap_detected);
  }
}

TEST_CASE("major measure") {
  CHECK(major_measure(ArcParams::explicit_pq(1, 40)) == doctest::Approx(2.0 / 40));
  CHECK(major_measure(ArcParams::explicit_pq(2, 100)) == doctest::Approx(0.03));
  CHECK(major_measure(ArcParams::explicit_pq(3, 10)) == doctest::Approx(0.43333333333333335));
}

TEST_CASE("params from context") {
  const auto ctx = ProblemContext::from_x(2, 5, 0.8, 400);
  const auto p = ArcParams::from_context(ctx, 1.0);
  CHECK(p.P == doctest::Approx(std::log(400.0)));
  CHECK(p.Q == doctest::Approx(400.0 * ctx.y / std::log(400.0)));
  CHECK(parse_region("minor") == Region::minor);
  CHECK(region_name(Region::major) == "major");
}

}
