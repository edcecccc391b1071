#include "wglab/singular_series.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "wglab/error.hpp"

namespace wglab {

namespace {

Complex ipow(Complex z, int e) {
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1) result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

// e(r / q) for r in [0, q).
std::vector<Complex> root_table(u64 q, double sign) {
  std::vector<Complex> roots(q);
  for (u64 r = 0; r < q; ++r) {
    roots[r] = unit_phase(sign * static_cast<double>(r) / static_cast<double>(q));
  }
  return roots;
}

void check_k(int k) {
  if (k < 2) throw Error(Errc::parameter_domain, "k must be >= 2");
}

void check_residue(double im, u64 q, u64 n) {
  if (std::abs(im) > kImaginaryTolerance) {
    throw Error(Errc::imaginary_residue, "Im A(" + std::to_string(q) + ", " + std::to_string(n) +
                                             ") = " + std::to_string(im));
  }
}

}  // namespace

GaussSumValue gauss_sum(u64 q, i64 a, int k) {
  check_k(k);
  if (q == 0) throw Error(Errc::parameter_domain, "q must be >= 1");
  const i64 qi = static_cast<i64>(q);
  const u64 ar = static_cast<u64>(((a % qi) + qi) % qi);
  if (std::gcd(ar, q) != 1 && q != 1) {
    throw Error(Errc::not_coprime, "gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") != 1");
  }
  double re = 0.0, im = 0.0;
  for (u64 b = 1; b <= q; ++b) {
    if (std::gcd(b, q) != 1) continue;
    const u64 r = mulmod(ar, powmod(b, static_cast<u64>(k), q), q);
    const Complex z = unit_phase(static_cast<double>(r) / static_cast<double>(q));
    re += z.real();
    im += z.imag();
  }
  return {q, a, k, {re, im}};
}

std::vector<Complex> gauss_sums_all(u64 q, int k) {
  check_k(k);
  if (q == 0) throw Error(Errc::parameter_domain, "q must be >= 1");
  std::vector<u64> count(q, 0);
  for (u64 b = 1; b <= q; ++b) {
    if (std::gcd(b, q) == 1) ++count[powmod(b, static_cast<u64>(k), q)];
  }
  std::vector<u64> support;
  for (u64 r = 0; r < q; ++r) {
    if (count[r] != 0) support.push_back(r);
  }
  const auto roots = root_table(q, 1.0);
  std::vector<Complex> out(q);
  for (u64 a = 0; a < q; ++a) {
    double re = 0.0, im = 0.0;
    for (u64 r : support) {
      const Complex z = roots[mulmod(a, r, q)];
      re += static_cast<double>(count[r]) * z.real();
      im += static_cast<double>(count[r]) * z.imag();
    }
    out[a] = {re, im};
  }
  return out;
}

double a_coefficient(u64 q, u64 n, int k, int s) {
  if (s < 1) throw Error(Errc::parameter_domain, "s must be >= 1");
  if (q == 1) return 1.0;
  const auto sums = gauss_sums_all(q, k);
  const double phi = static_cast<double>(euler_phi(q));
  const u64 nr = n % q;
  Complex total{0.0, 0.0};
  for (u64 a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const u64 r = mulmod(a, nr, q);
    total += ipow(sums[a] / phi, s) * unit_phase(-static_cast<double>(r) / static_cast<double>(q));
  }
  check_residue(total.imag(), q, n);
  return total.real();
}

double SeriesTruncation::value_at(u64 q_max) const {
  double total = 0.0;
  for (const auto& [q, a] : partials) {
    if (q > q_max) break;
    total += a;
  }
  return total;
}

SingularSeries::SingularSeries(int k, int s, u64 max_q) : k_(k), s_(s), max_q_(max_q) {
  check_k(k);
  if (s < 1) throw Error(Errc::parameter_domain, "s must be >= 1");
  if (max_q < 1) throw Error(Errc::parameter_domain, "max_q must be >= 1");
  spf_.assign(max_q + 1, 0);
  for (u64 i = 2; i <= max_q; ++i) {
    if (spf_[i] != 0) continue;
    for (u64 j = i; j <= max_q; j += i) {
      if (spf_[j] == 0) spf_[j] = i;
    }
  }
  prime_power_part_.assign(max_q + 1, 1);
  table_of_.assign(max_q + 1, SIZE_MAX);
  for (u64 q = 2; q <= max_q; ++q) {
    const u64 p = spf_[q];
    u64 part = 1, rest = q;
    while (rest % p == 0) {
      rest /= p;
      part *= p;
    }
    prime_power_part_[q] = part;
    if (rest != 1) continue;

    PrimePowerTable t;
    t.q = q;
    const auto sums = gauss_sums_all(q, k);
    const double phi = static_cast<double>(q / p * (p - 1));
    for (u64 a = 1; a < q; ++a) {
      if (a % p == 0) continue;
      t.residues.push_back(a);
      t.weights.push_back(ipow(sums[a] / phi, s));
    }
    t.roots = root_table(q, -1.0);
    table_of_[q] = tables_.size();
    tables_.push_back(std::move(t));
  }
}

Complex SingularSeries::prime_power_coefficient(const PrimePowerTable& t, u64 n) const {
  const u64 nr = n % t.q;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < t.residues.size(); ++i) {
    const Complex z = t.weights[i] * t.roots[mulmod(t.residues[i], nr, t.q)];
    re += z.real();
    im += z.imag();
  }
  return {re, im};
}

std::vector<Complex> SingularSeries::coefficients(u64 n, u64 q_max) const {
  if (q_max > max_q_) {
    throw Error(Errc::parameter_domain, "q_max " + std::to_string(q_max) + " exceeds evaluator bound " +
                                            std::to_string(max_q_));
  }
  std::vector<Complex> a(q_max + 1, Complex{0.0, 0.0});
  if (q_max >= 1) a[1] = {1.0, 0.0};
  for (u64 q = 2; q <= q_max; ++q) {
    const u64 part = prime_power_part_[q];
    if (part == q) {
      a[q] = prime_power_coefficient(tables_[table_of_[q]], n);
    } else {
      a[q] = a[part] * a[q / part];
    }
  }
  return a;
}

SeriesTruncation SingularSeries::truncate(u64 n, u64 Q0, bool with_tail) const {
  if (Q0 < 1) throw Error(Errc::parameter_domain, "Q0 must be >= 1");
  const u64 top = with_tail ? 2 * Q0 : Q0;
  const auto a = coefficients(n, top);

  SeriesTruncation t;
  t.n = n;
  t.s = s_;
  t.k = k_;
  t.Q0 = Q0;
  double im = 0.0;
  for (u64 q = 1; q <= Q0; ++q) {
    im += a[q].imag();
    if (std::abs(a[q].real()) > 1e-12) t.partials.emplace_back(q, a[q].real());
  }
  check_residue(im, Q0, n);
  t.value = t.value_at(Q0);
  t.imag_residue = std::abs(im);
  if (with_tail) {
    // Every fourth q in (Q0, 2 Q0], scaled by the stride.
    constexpr u64 kStride = 4;
    double tail = 0.0;
    for (u64 q = Q0 + 1; q <= 2 * Q0; q += kStride) tail += std::abs(a[q]);
    t.tail_heuristic = tail * static_cast<double>(kStride);
  }
  return t;
}

SeriesTruncation truncated_sigma(u64 n, int k, int s, u64 Q0) {
  const SingularSeries series(k, s, 2 * Q0);
  return series.truncate(n, Q0, true);
}

SeriesTruncation truncated_sigma(u64 n, const ProblemContext& ctx, u64 Q0) {
  return truncated_sigma(n, ctx.k, ctx.s, Q0);
}

}  // namespace wglab
