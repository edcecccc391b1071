// Acceptance gate: one line per criterion, "criterion N: PASS|FAIL ...".
// Usage: wglab_acceptance [--only N] [--report-dir DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wglab/arcs.hpp"
#include "wglab/experiment.hpp"
#include "wglab/parallel.hpp"
#include "wglab/report.hpp"
#include "wglab/representations.hpp"
#include "wglab/singular_integral.hpp"
#include "wglab/singular_series.hpp"

using namespace wglab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// 1. moment(1) is sum (log p)^2 on random windows.
Outcome c01() {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> X(100.0, 1e5), T(0.5, 0.95);
  double worst = 0.0, slowest = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int k = 2 + i % 3;
    const double x = X(rng), theta = T(rng);
    const auto t0 = std::chrono::steady_clock::now();
    const auto window = PrimeWindow::build(x, std::pow(x, theta));
    double want = 0.0;
    for (double w : window.weights) want += w * w;
    const double got = moment(1, window, k).value;
    slowest = std::max(slowest, seconds_since(t0));
    worst = std::max(worst, rel_err(got, want));
  }
  return {worst <= 1e-12 && slowest < 1.0, fmt("max rel err %.3g, slowest window %.3fs", worst, slowest)};
}

// 2. meet-in-the-middle equals naive enumeration.
Outcome c02() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t instances = 0, queries = 0, count_mismatch = 0;
  for (double x : {10.0, 20.0, 30.0, 50.0, 100.0, 200.0}) {
    for (double y : {1.5, 3.0, 5.0, 8.0, 12.0, 20.0, 30.0}) {
      if (y > x / 2) continue;
      const auto window = PrimeWindow::build(x, y);
      if (window.size() == 0 || window.size() > 12) continue;
      for (int k : {2, 3}) {
        for (int s : {2, 3, 4}) {
          ++instances;
          // Every attainable sum (strided when there are many) and its right neighbour.
          const SumIndex all(window, k, s);
          std::vector<u64> ns;
          const std::size_t stride = std::max<std::size_t>(1, all.entries().size() / 150);
          for (std::size_t i = 0; i < all.entries().size(); i += stride) {
            const auto v = static_cast<u64>(all.entries()[i].key);
            ns.push_back(v);
            ns.push_back(v + 1);
          }
          const MitmCounter mitm(window, k, s);
          const auto fast = mitm.count_all(ns);
          for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto slow = rho_naive(ns[i], window, k, s);
            ++queries;
            if (slow.tuple_count != fast[i].tuple_count) ++count_mismatch;
            worst = std::max(worst, rel_err(fast[i].rho, slow.rho));
          }
        }
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && count_mismatch == 0 && t < 10.0,
          fmt("%zu instances, %zu queries, max rel err %.3g, count mismatches %zu, %.2fs", instances, queries, worst,
              count_mismatch, t)};
}

// 3. S(q1 q2, a) = S(q1, a q2bar) S(q2, a q1bar).
Outcome c03() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t checks = 0;
  for (int k : {2, 3, 4}) {
    std::vector<std::vector<Complex>> small(41);
    for (u64 q = 1; q <= 40; ++q) small[q] = gauss_sums_all(q, k);
    for (u64 q1 = 1; q1 <= 40; ++q1) {
      for (u64 q2 = q1; q2 <= 40; ++q2) {
        if (std::gcd(q1, q2) != 1) continue;
        const u64 q = q1 * q2;
        const auto big = gauss_sums_all(q, k);
        const u64 inv2 = inverse_mod(q2 % q1, q1), inv1 = inverse_mod(q1 % q2, q2);
        for (u64 a = 1; a <= q; ++a) {
          if (std::gcd(a, q) != 1) continue;
          const Complex lhs = big[a % q];
          const Complex rhs = small[q1][a * inv2 % q1] * small[q2][a * inv1 % q2];
          worst = std::max(worst, std::abs(lhs - rhs));
          ++checks;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 30.0, fmt("%zu (q1, q2, a, k) checks, max abs err %.3g, %.2fs", checks, worst, t)};
}

// 4. |S(p, a)| <= (gcd(k, p - 1) - 1) sqrt(p) + 1.
Outcome c04() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto primes = sieve_interval(1, 2000);
  std::size_t checks = 0, violations = 0;
  double tightest = 0.0;
  for (int k : {2, 3, 4, 5}) {
    for (u64 p : primes) {
      const auto sums = gauss_sums_all(p, k);
      const double bound = static_cast<double>(std::gcd(static_cast<u64>(k), p - 1) - 1) * std::sqrt(p) + 1.0;
      for (u64 a = 1; a < p; ++a) {
        const double v = std::abs(sums[a]);
        ++checks;
        if (v > bound + 1e-9) ++violations;
        tightest = std::max(tightest, v / bound);
      }
    }
  }
  const double t = seconds_since(t0);
  return {violations == 0 && t < 60.0,
          fmt("%zu checks, %zu violations, max |S|/bound %.6f, %.2fs", checks, violations, tightest, t)};
}

Json c05_report() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<u64> J(1, 50'000);
  const SingularSeries series(2, 5, 400);
  Json samples = Json::array();
  std::size_t in_range = 0, stable = 0, both = 0;
  std::vector<double> values;
  for (int i = 0; i < 100; ++i) {
    const u64 n = 24 * J(rng) + 5;
    const auto t = series.truncate(n, 400);
    const double s400 = t.value, s200 = t.value_at(200);
    const bool range_ok = s400 >= 0.05 && s400 <= 20.0;
    const bool stable_ok = std::abs(s400 - s200) <= 0.05 * std::abs(s400);
    in_range += range_ok;
    stable += stable_ok;
    both += range_ok && stable_ok;
    values.push_back(s400);
    samples.push_back({{"n", n}, {"sigma_400", number(s400)}, {"sigma_200", number(s200)}, {"ok", range_ok && stable_ok}});
  }
  const auto summary = summarize_ratios(values);
  Json j;
  j["k"] = 2;
  j["s"] = 5;
  j["samples"] = 100;
  j["passing"] = both;
  j["in_range"] = in_range;
  j["stable"] = stable;
  j["sigma_400"] = to_json(summary);
  j["per_n"] = std::move(samples);
  return j;
}

// 5. Sigma(n, 400) in [0.05, 20] and stable against Sigma(n, 200) on >= 95 of 100.
Outcome c05() {
  const auto t0 = std::chrono::steady_clock::now();
  const Json j = c05_report();
  const double t = seconds_since(t0);
  const std::size_t passing = j["passing"];
  return {passing >= 95 && t < 120.0,
          fmt("%zu/100 pass (in range %zu, stable %zu), Sigma(n,400) min %.4g median %.4g max %.4g, %.2fs", passing,
              static_cast<std::size_t>(j["in_range"]), static_cast<std::size_t>(j["stable"]),
              j["sigma_400"]["min"].get<double>(), j["sigma_400"]["median"].get<double>(),
              j["sigma_400"]["max"].get<double>(), t)};
}

double c_m(int k, i64 m) { return std::pow(static_cast<double>(m), -1.0 + 1.0 / k) / k; }

double nested(const std::vector<double>& c, i64 lo, i64 hi, int s, i64 n) {
  if (s == 1) return (n >= lo && n <= hi) ? c[n - lo] : 0.0;
  double total = 0.0;
  for (i64 m = lo; m <= hi && n - m >= (s - 1) * lo; ++m) {
    if (n - m > (s - 1) * hi) continue;
    total += c[m - lo] * nested(c, lo, hi, s - 1, n - m);
  }
  return total;
}

// 6. J(n) equals the nested enumeration; J(n) / (y^(s-1) x^(1-k)) in [0.1, 10].
Outcome c06() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t instances = 0, points = 0;
  for (int k : {2, 3}) {
    for (int s : {2, 3, 4}) {
      for (double x : {3.0, 5.0, 10.0, 20.0, 40.0}) {
        for (double y : {0.5, 1.0, 2.0, 4.0}) {
          const auto w = WeightSeq::build(k, x, y);
          if (w.size() == 0 || std::pow(static_cast<double>(w.size()), s) > 1e6) continue;
          ++instances;
          std::vector<double> c;
          for (i64 m = w.lo; m <= w.hi; ++m) c.push_back(c_m(k, m));
          const SingularIntegral J(w, s);
          for (i64 n = s * w.lo - 1; n <= s * w.hi + 1; ++n) {
            const double want = nested(c, w.lo, w.hi, s, n);
            const double got = J.at(static_cast<u64>(n));
            worst = std::max(worst, want == 0.0 ? std::abs(got) : rel_err(got, want));
            ++points;
          }
        }
      }
    }
  }
  const auto ctx = ProblemContext::from_x(2, 5, 0.8, 1000);
  const SingularIntegral J(ctx);
  const double scale = std::pow(ctx.y, 4) / ctx.x;
  double lo_ratio = INFINITY, hi_ratio = 0.0;
  for (i64 d = -120; d <= 120; d += 24) {
    const double r = J.at(static_cast<u64>(static_cast<i64>(ctx.N) + d)) / scale;
    lo_ratio = std::min(lo_ratio, r);
    hi_ratio = std::max(hi_ratio, r);
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && lo_ratio >= 0.1 && hi_ratio <= 10.0,
          fmt("%zu instances, %zu points, max rel err %.3g; central J/scale in [%.4g, %.4g], %.2fs", instances, points,
              worst, lo_ratio, hi_ratio, t)};
}

// 7. |I(beta)| (1 + |beta| y x^(k-1)) <= 4y on a log grid.
Outcome c07() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int k : {2, 3}) {
    const auto ctx = ProblemContext::from_x(k, 5, 0.75, 1e4);
    const double top = std::pow(ctx.x, 1 - k), bottom = top * 1e-8;
    for (int i = 0; i < 200; ++i) {
      const double beta = bottom * std::pow(top / bottom, i / 199.0);
      const double v = std::abs(oscillatory_I(beta, ctx)) * (1 + beta * ctx.y * std::pow(ctx.x, k - 1));
      worst = std::max(worst, v / (4 * ctx.y));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1.0 && t < 10.0, fmt("max envelope / 4y = %.4f, %.2fs", worst, t)};
}

// 8. Dirichlet approximation and classify against explicit intervals.
Outcome c08() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::size_t bad_dirichlet = 0, bad_classify = 0;
  for (int i = 0; i < 100'000; ++i) {
    const double alpha = U(rng);
    const double Q = std::exp(U(rng) * std::log(1e12));
    const auto r = dirichlet_approx(alpha, Q);
    const double err = std::abs(std::fma(static_cast<double>(r.q), alpha, -static_cast<double>(r.a)));
    if (static_cast<double>(r.q) > Q || err > 1.0 / Q) ++bad_dirichlet;
  }
  for (auto [P, Q] : {std::pair{10.0, 1e4}, std::pair{50.0, 1e5}}) {
    const auto params = ArcParams::explicit_pq(P, Q);
    const auto arcs = ArcDecomposition::build(params);
    for (int i = 0; i < 10'000; ++i) {
      const double alpha = U(rng);
      if ((classify(alpha, params).region == Region::major) != arcs.contains(alpha)) ++bad_classify;
    }
  }
  const double t = seconds_since(t0);
  return {bad_dirichlet == 0 && bad_classify == 0 && t < 30.0,
          fmt("dirichlet failures %zu/100000, classify mismatches %zu/20000, %.2fs", bad_dirichlet, bad_classify, t)};
}

// 9. Full-circle quadrature reproduces rho(n) on the tiny window.
Outcome c09() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ctx = ProblemContext::from_xy(2, 2, 10, 4);
  const auto params = ArcParams::from_context(ctx, 1.0);
  const auto window = PrimeWindow::build(ctx);
  const SumIndex sums(window, 2, 2);
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& e : sums.entries()) {
    const auto n = static_cast<u64>(e.key);
    const double exact = rho_naive(n, ctx).rho;
    if (exact <= 0.0) continue;
    const auto q = major_arc_rho_numeric(n, ctx, params, 8192, ArcSet::full_circle);
    worst = std::max(worst, rel_err(q.value, exact));
    ++count;
  }
  const double t = seconds_since(t0);
  return {count > 0 && worst <= 0.01 && t < 10.0,
          fmt("%zu targets, max rel err %.3g, %.2fs", count, worst, t)};
}

Json c10_report(ExceptionalReport* keep = nullptr) {
  const auto ctx = ProblemContext::from_x(2, 5, 0.8, 400);
  auto report = exceptional_scan(ctx, 400);
  Json j = to_json(report);
  Json detail = Json::array();
  for (const auto& r : report.per_n) detail.push_back(to_json(r));
  j["per_n"] = std::move(detail);
  if (keep != nullptr) *keep = std::move(report);
  return j;
}

// 10. Desk-scale exceptional-set experiment.
Outcome c10() {
  const auto t0 = std::chrono::steady_clock::now();
  ExceptionalReport r;
  c10_report(&r);
  const double t = seconds_since(t0);
  const double frac = r.exceptional_fraction();
  const bool median_ok = r.ratios.median >= 0.5 && r.ratios.median <= 2.0;
  const bool frac_ok = frac <= 0.2;
  return {median_ok && frac_ok && t <= 300.0,
          fmt("scanned %zu, median rho/(S J) %.4f [%s], exceptional %zu (%.1f%%) [%s], one-sided %zu, threshold "
              "%.6g, %.2fs",
              r.scanned, r.ratios.median, median_ok ? "ok" : "out", r.exceptional, 100 * frac,
              frac_ok ? "ok" : "over 20%", r.exceptional_one_sided, r.threshold, t)};
}

// R(k) straight from the definition, without the library's helpers.
u64 r_by_definition(int k) {
  u64 R = 1;
  for (u64 p = 2; p <= static_cast<u64>(k) + 1; ++p) {
    bool prime = true;
    for (u64 d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime || k % (p - 1) != 0) continue;
    int tau = 0;
    for (int m = k; m % static_cast<int>(p) == 0; m /= static_cast<int>(p)) ++tau;
    const int eta = (p == 2 && tau > 0) ? tau + 2 : tau + 1;
    for (int i = 0; i < eta; ++i) R *= p;
  }
  return R;
}

// 11. R(k) and the 9 | N clause.
Outcome c11() {
  const u64 want[] = {24, 2, 240};
  bool ok = true;
  std::string detail;
  for (int k = 2; k <= 4; ++k) {
    const u64 got = modulus_R(k), def = r_by_definition(k);
    ok = ok && got == want[k - 2] && def == want[k - 2];
    detail += fmt("R(%d)=%llu ", k, static_cast<unsigned long long>(got));
  }
  std::size_t clause_errors = 0;
  for (u64 n = 1; n <= 10'000; ++n) {
    if (is_admissible(n, 3, 7) != (n % 2 == 1 && n % 9 != 0)) ++clause_errors;
    if (is_admissible(n, 3, 5) != (n % 2 == 1)) ++clause_errors;
    if (is_admissible(n, 2, 7) != (n % 24 == 7)) ++clause_errors;
  }
  ok = ok && clause_errors == 0;
  return {ok, detail + fmt("admissibility errors %zu", clause_errors)};
}

// 12. Byte-identical JSON across repeated runs and thread counts.
Outcome c12() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> five, ten;
  for (unsigned threads : {1u, 4u, 0u}) {
    set_thread_count(threads);
    five.push_back(c05_report().dump(2));
    ten.push_back(c10_report().dump(2));
  }
  set_thread_count(0);
  const bool same5 = std::all_of(five.begin(), five.end(), [&](const auto& s) { return s == five.front(); });
  const bool same10 = std::all_of(ten.begin(), ten.end(), [&](const auto& s) { return s == ten.front(); });
  return {same5 && same10, fmt("criterion 5 report %s, criterion 10 report %s (3 runs each, threads 1/4/all), %.2fs",
                               same5 ? "identical" : "DIFFERS", same10 ? "identical" : "DIFFERS", seconds_since(t0))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  std::string report_dir;
  app.add_option("--only", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
  app.add_option("--report-dir", report_dir, "Write the criterion 5 and 10 JSON reports here");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{c01, c02, c03, c04, c05, c06,
                                                       c07, c08, c09, c10, c11, c12};
  bool all = true;
  for (int i = 1; i <= 12; ++i) {
    if (only != 0 && i != only) continue;
    Outcome o;
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", i, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  if (!report_dir.empty()) {
    std::filesystem::create_directories(report_dir);
    std::ofstream(std::filesystem::path(report_dir) / "criterion05.json") << c05_report().dump(2) << "\n";
    std::ofstream(std::filesystem::path(report_dir) / "criterion10.json") << c10_report().dump(2) << "\n";
  }
  return all ? 0 : 1;
}
