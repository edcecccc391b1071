#include "wglab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wglab/error.hpp"

namespace wglab {

double w_k(int k, u64 q) {
  if (k < 2) throw Error(Errc::parameter_domain, "w_k requires k >= 2");
  if (q == 0) throw Error(Errc::parameter_domain, "w_k requires q >= 1");
  double w = 1.0;
  for (const auto& [p, e] : factorize(q)) {
    const int u = (e - 1) / k;
    const int v = e - k * u;
    const auto pd = static_cast<double>(p);
    w *= (v == 1) ? k * std::pow(pd, -u - 0.5) : std::pow(pd, -u - 1.0);
  }
  return w;
}

namespace {

u128 abs_diff(u128 a, u128 b) { return a > b ? a - b : b - a; }

}  // namespace

RationalPoint dirichlet_approx(double alpha, double qbound) {
  if (!(qbound >= 1.0)) throw Error(Errc::parameter_domain, "dirichlet_approx requires Qbound >= 1");
  if (!std::isfinite(alpha)) throw Error(Errc::parameter_domain, "alpha must be finite");
  alpha -= std::floor(alpha);
  if (alpha == 0.0 || alpha * qbound <= 1.0) return {0, 1, alpha};

  // alpha = m / 2^shift exactly.
  int exponent = 0;
  const double mant = std::frexp(alpha, &exponent);
  u128 m = static_cast<u128>(std::ldexp(mant, 53));
  int shift = 53 - exponent;
  while (shift > 0 && (m & 1) == 0) {
    m >>= 1;
    --shift;
  }
  if (shift > 120) return {0, 1, alpha};  // alpha < 2^-67 was handled above for any sane qbound
  const u128 denom = u128{1} << shift;

  // Convergents h/kq of m/denom.
  u128 h_prev = 1, h_prev2 = 0;
  u128 k_prev = 0, k_prev2 = 1;
  u128 num = m, den = denom;
  const auto bound = static_cast<long double>(qbound);
  while (den != 0) {
    const u128 a = num / den;
    const u128 h = a * h_prev + h_prev2;
    const u128 kq = a * k_prev + k_prev2;
    if (static_cast<long double>(kq) > bound) break;
    const u128 err = abs_diff(kq * m, h * denom);
    if (static_cast<long double>(err) * bound <= static_cast<long double>(denom)) {
      RationalPoint pt;
      pt.a = static_cast<i64>(h);
      pt.q = static_cast<u64>(kq);
      pt.beta = alpha - static_cast<double>(pt.a) / static_cast<double>(pt.q);
      return pt;
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = kq;
    const u128 r = num - a * den;
    num = den;
    den = r;
  }
  // Unreachable by Dirichlet's theorem; the last admissible convergent is
  // returned defensively for pathological rounding of qbound.
  RationalPoint pt;
  pt.a = static_cast<i64>(h_prev);
  pt.q = static_cast<u64>(k_prev == 0 ? 1 : k_prev);
  pt.beta = alpha - static_cast<double>(pt.a) / static_cast<double>(pt.q);
  return pt;
}

std::string_view region_name(Region r) noexcept {
  switch (r) {
    case Region::major: return "major";
    case Region::minor: return "minor";
    case Region::full: return "full";
  }
  return "full";
}

Region parse_region(std::string_view name) {
  if (name == "major") return Region::major;
  if (name == "minor") return Region::minor;
  if (name == "full") return Region::full;
  throw Error(Errc::parameter_domain, "unknown region '" + std::string(name) + "'");
}

ArcParams ArcParams::from_context(const ProblemContext& ctx, double A) {
  if (!(A > 0.0)) throw Error(Errc::parameter_domain, "A must be positive");
  ArcParams params;
  params.A = A;
  params.ctx = ctx;
  params.P = std::pow(std::log(ctx.x), A);
  params.Q = ctx.x * std::pow(ctx.y, ctx.k - 1) / params.P;
  if (!(params.P >= 1.0)) throw Error(Errc::parameter_domain, "P = (log x)^A must be >= 1");
  if (!(params.Q > params.P)) throw Error(Errc::parameter_domain, "Q must exceed P");
  return params;
}

ArcParams ArcParams::explicit_pq(double P, double Q) {
  if (!(P >= 1.0)) throw Error(Errc::parameter_domain, "P must be >= 1");
  if (!(Q > P)) throw Error(Errc::parameter_domain, "Q must exceed P");
  ArcParams params;
  params.A = 0.0;
  params.P = P;
  params.Q = Q;
  return params;
}

Classification classify(double alpha, const ArcParams& params) {
  Classification c;
  c.point = dirichlet_approx(alpha, params.Q);
  c.region = static_cast<double>(c.point.q) <= params.P ? Region::major : Region::minor;
  return c;
}

namespace {

// Adjacent Farey fractions a/q < a'/q' of order P satisfy a'q - aq' = 1, so
// their arcs overlap iff q + q' > Q. The largest q + q' among neighbours is
// 2 floor(P) - 1 (1/P next to 1/(P-1)); for floor(P) = 1 the arc at 0 meets
// itself across the wrap when Q < 2.
void check_disjoint(const ArcParams& params) {
  const auto top = static_cast<u64>(std::floor(params.P));
  const double worst = top == 1 ? 2.0 : static_cast<double>(2 * top - 1);
  if (worst > params.Q) {
    throw Error(Errc::overlap_detected, "major arcs overlap for P = " + std::to_string(params.P) +
                                            ", Q = " + std::to_string(params.Q));
  }
}

constexpr u64 kMaxEnumeratedP = 5000;

}  // namespace

ArcDecomposition ArcDecomposition::build(const ArcParams& params) {
  const auto top = static_cast<u64>(std::floor(params.P));
  if (top > kMaxEnumeratedP) {
    throw Error(Errc::too_large, "enumerating major arcs needs P <= " + std::to_string(kMaxEnumeratedP));
  }
  ArcDecomposition d;
  d.params = params;
  d.major_intervals.push_back({1, 0, 0.0, 1.0 / params.Q});
  for (u64 q = 2; q <= top; ++q) {
    const double half = 1.0 / (static_cast<double>(q) * params.Q);
    for (u64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      d.major_intervals.push_back({q, a, static_cast<double>(a) / static_cast<double>(q), half});
    }
  }
  std::sort(d.major_intervals.begin(), d.major_intervals.end(),
            [](const MajorInterval& l, const MajorInterval& r) { return l.center < r.center; });
  const auto& iv = d.major_intervals;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i - 1].center + iv[i - 1].half_width > iv[i].center - iv[i].half_width) {
      throw Error(Errc::overlap_detected,
                  "arcs around " + std::to_string(iv[i - 1].a) + "/" + std::to_string(iv[i - 1].q) +
                      " and " + std::to_string(iv[i].a) + "/" + std::to_string(iv[i].q) + " overlap");
    }
  }
  const auto& last = iv.back();
  if (last.center + last.half_width > 1.0 - iv.front().half_width) {
    throw Error(Errc::overlap_detected, "arc at 0 overlaps its neighbour across the wrap-around");
  }
  return d;
}

bool ArcDecomposition::contains(double alpha) const {
  alpha -= std::floor(alpha);
  const auto& iv = major_intervals;
  auto it = std::lower_bound(iv.begin(), iv.end(), alpha,
                             [](const MajorInterval& m, double v) { return m.center < v; });
  const double inv_q = 1.0 / params.Q;
  auto near = [alpha, inv_q](const MajorInterval& m) {
    double dist = std::abs(alpha - m.center);
    dist = std::min(dist, 1.0 - dist);
    return dist * static_cast<double>(m.q) <= inv_q;
  };
  if (it != iv.end() && near(*it)) return true;
  if (it != iv.begin() && near(*std::prev(it))) return true;
  return near(iv.front());
}

double major_measure(const ArcParams& params) {
  check_disjoint(params);
  const auto top = static_cast<u64>(std::floor(params.P));
  double total = 0.0;
  for (u64 q = 1; q <= top; ++q) {
    total += static_cast<double>(euler_phi(q)) * 2.0 / (static_cast<double>(q) * params.Q);
  }
  return total;
}

}  // namespace wglab
