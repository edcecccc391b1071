#include "wglab/expsums.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wglab/error.hpp"
#include "wglab/parallel.hpp"

namespace wglab {

std::string_view kind_name(SequenceKind kind) noexcept {
  switch (kind) {
    case SequenceKind::prime_log: return "prime_log";
    case SequenceKind::integer_log: return "integer_log";
    case SequenceKind::unit: return "unit";
  }
  return "unit";
}

SequenceKind parse_kind(std::string_view name) {
  if (name == "prime_log") return SequenceKind::prime_log;
  if (name == "integer_log") return SequenceKind::integer_log;
  if (name == "unit") return SequenceKind::unit;
  throw Error(Errc::parameter_domain, "unknown sequence kind '" + std::string(name) + "'");
}

double WeightedSequence::total_weight() const noexcept {
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

WeightedSequence build_sequence(double lo_exclusive, double hi_inclusive, SequenceKind kind) {
  const auto lo = static_cast<i64>(std::max(std::floor(lo_exclusive), 0.0));
  const auto hi = static_cast<i64>(std::max(std::floor(hi_inclusive), 0.0));
  WeightedSequence seq;
  seq.kind = kind;
  if (kind == SequenceKind::prime_log) {
    if (hi > lo) seq.support = sieve_interval(static_cast<u64>(lo), static_cast<u64>(hi));
  } else {
    for (i64 n = std::max<i64>(lo + 1, 1); n <= hi; ++n) seq.support.push_back(static_cast<u64>(n));
  }
  if (seq.support.empty()) {
    throw Error(Errc::empty_window, "no support in (" + std::to_string(lo_exclusive) + ", " +
                                        std::to_string(hi_inclusive) + "]");
  }
  seq.weights.reserve(seq.support.size());
  for (u64 n : seq.support) {
    seq.weights.push_back(kind == SequenceKind::unit ? 1.0 : std::log(static_cast<double>(n)));
  }
  if (kind == SequenceKind::integer_log && seq.support.front() == 1) {
    // log 1 = 0 would break strict positivity of the weights.
    seq.support.erase(seq.support.begin());
    seq.weights.erase(seq.weights.begin());
    if (seq.support.empty()) throw Error(Errc::empty_window, "window holds only n = 1");
  }
  return seq;
}

WeightedSequence build_sequence(const ProblemContext& ctx, SequenceKind kind) {
  return build_sequence(ctx.x - ctx.y, ctx.x + ctx.y, kind);
}

namespace {

std::vector<u128> powers_of(const WeightedSequence& seq, int k) {
  std::vector<u128> out;
  out.reserve(seq.support.size());
  for (u64 n : seq.support) {
    const u128 nk = checked_power(n, k);
    if (nk == 0) {
      throw Error(Errc::precision_overflow,
                  std::to_string(n) + "^" + std::to_string(k) + " exceeds 128 bits");
    }
    out.push_back(nk);
  }
  return out;
}

Complex eval_powers(const std::vector<u128>& powers, const std::vector<double>& weights,
                    double alpha) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    const Complex z = unit_phase(frac_product(alpha, powers[i]));
    re += weights[i] * z.real();
    im += weights[i] * z.imag();
  }
  return {re, im};
}

constexpr std::size_t kGridChunk = 1024;

}  // namespace

Complex eval_sum(const WeightedSequence& seq, int k, double alpha) {
  return eval_powers(powers_of(seq, k), seq.weights, alpha);
}

std::vector<double> abs_profile(const WeightedSequence& seq, int k, std::size_t grid_size) {
  if (grid_size < 2) throw Error(Errc::parameter_domain, "grid_size must be >= 2");
  const auto powers = powers_of(seq, k);
  std::vector<double> out(grid_size);
  const double step = 1.0 / static_cast<double>(grid_size);
  parallel_chunks(grid_size, kGridChunk, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      out[j] = std::abs(eval_powers(powers, seq.weights, static_cast<double>(j) * step));
    }
  });
  return out;
}

// |f(a/q)| can equal |f(0)| exactly (p^2 = 1 mod 24 for p > 3), so values
// this close count as ties and the smaller j is kept.
constexpr double kTieTolerance = 1e-12;

SupScanReport sup_scan(const WeightedSequence& seq, int k, const ArcDecomposition& arcs,
                       Region region, std::size_t grid_size) {
  if (grid_size < 2) throw Error(Errc::parameter_domain, "grid_size must be >= 2");
  const auto powers = powers_of(seq, k);
  const std::size_t chunks = (grid_size + kGridChunk - 1) / kGridChunk;
  struct ChunkMax {
    double value = -1.0;
    std::size_t index = 0;
    std::size_t count = 0;
  };
  std::vector<ChunkMax> partial(chunks);
  parallel_chunks(grid_size, kGridChunk, [&](std::size_t b, std::size_t e) {
    ChunkMax best;
    for (std::size_t j = b; j < e; ++j) {
      const double alpha = static_cast<double>(j) / static_cast<double>(grid_size);
      if (region != Region::full && classify(alpha, arcs.params).region != region) continue;
      ++best.count;
      const double v = std::abs(eval_powers(powers, seq.weights, alpha));
      if (v > best.value * (1 + kTieTolerance)) {
        best.value = v;
        best.index = j;
      }
    }
    partial[b / kGridChunk] = best;
  });

  SupScanReport report;
  report.region = region;
  report.grid_size = grid_size;
  ChunkMax best;
  for (const auto& c : partial) {
    report.points_in_region += c.count;
    if (c.count > 0 && c.value > best.value * (1 + kTieTolerance)) best = c;
  }
  if (report.points_in_region == 0) {
    throw Error(Errc::empty_region, "no grid point of size " + std::to_string(grid_size) + " in region " +
                                        std::string(region_name(region)));
  }
  report.sup_abs = best.value;
  report.argmax_alpha = static_cast<double>(best.index) / static_cast<double>(grid_size);
  const RationalPoint pt = dirichlet_approx(report.argmax_alpha, arcs.params.Q);
  report.nearest_rational = std::make_pair(pt.a, pt.q);
  return report;
}

int dichotomy_tk(int k) {
  if (k < 2) throw Error(Errc::parameter_domain, "k must be >= 2");
  return k == 2 ? 2 : k * k - k + 1;
}

DichotomyReport dichotomy_report(const ProblemContext& ctx, double rho, double alpha) {
  const int tk = dichotomy_tk(ctx.k);
  if (!(rho > 0.0 && rho <= 1.0 / tk)) {
    throw Error(Errc::parameter_domain, "rho must lie in (0, 1/t_k] with t_k = " + std::to_string(tk));
  }
  const double theta_min = 1.0 / (2.0 - tk * rho);
  if (!(ctx.theta >= theta_min - 1e-12 && ctx.theta <= 1.0)) {
    throw Error(Errc::parameter_domain,
                "theta must lie in [1/(2 - t_k rho), 1] = [" + std::to_string(theta_min) + ", 1]");
  }
  const double x = ctx.x, y = ctx.y;
  const int k = ctx.k;

  DichotomyReport r;
  r.rho = rho;
  r.alpha = alpha;
  const auto seq = build_sequence(x, x + y, SequenceKind::unit);
  r.observed = std::abs(eval_sum(seq, k, alpha));
  r.bound_k1 = std::pow(y, 1.0 - rho);
  r.bound_k3 = std::numeric_limits<double>::infinity();

  // |q alpha - a| <= x^(1-k) y^(k rho - 1) = 1/qbound, q <= y^(k rho).
  const double qbound = std::pow(x, k - 1) * std::pow(y, 1.0 - k * rho);
  const double qmax = std::pow(y, k * rho);
  if (qbound >= 1.0) {
    const RationalPoint pt = dirichlet_approx(alpha, qbound);
    if (static_cast<double>(pt.q) <= qmax) {
      r.approx = pt;
      r.bound_k3 = w_k(k, pt.q) * y / (1.0 + y * std::pow(x, k - 1) * std::abs(pt.beta));
    }
  }
  return r;
}

}  // namespace wglab
