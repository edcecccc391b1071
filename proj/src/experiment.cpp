#include "wglab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wglab/error.hpp"
#include "wglab/expsums.hpp"
#include "wglab/parallel.hpp"
#include "wglab/quadrature.hpp"
#include "wglab/representations.hpp"
#include "wglab/summation.hpp"

namespace wglab {

Predictor::Predictor(const ProblemContext& ctx, u64 Q0)
    : ctx_(ctx), q0_(Q0), series_(ctx.k, ctx.s, std::max<u64>(Q0, 1)), integral_(ctx) {
  if (Q0 < 1) throw Error(Errc::parameter_domain, "Q0 must be >= 1");
}

MajorArcPrediction Predictor::predict(u64 n) const {
  MajorArcPrediction p;
  p.n = n;
  p.admissible = is_admissible(n, ctx_);
  p.sigma = series_.truncate(n, q0_).value;
  p.jay = integral_.at(n);
  p.main_term = p.sigma * p.jay;
  return p;
}

MajorArcPrediction predict(u64 n, const ProblemContext& ctx, u64 Q0) { return Predictor(ctx, Q0).predict(n); }

namespace {

struct Span {
  double lo;
  double hi;
};

Complex ipow(Complex z, int e) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

}  // namespace

QuadratureResult major_arc_rho_numeric(u64 n, const ProblemContext& ctx, const ArcParams& params,
                                       std::size_t nodes_per_arc, ArcSet set) {
  if (nodes_per_arc < 8) throw Error(Errc::parameter_domain, "nodes_per_arc must be >= 8");
  const WeightedSequence seq = build_sequence(ctx, SequenceKind::prime_log);

  std::vector<Span> spans;
  switch (set) {
    case ArcSet::full_circle:
      spans.push_back({0.0, 1.0});
      break;
    case ArcSet::zero_arc:
      spans.push_back({-1.0 / params.Q, 1.0 / params.Q});
      break;
    case ArcSet::major: {
      const auto arcs = ArcDecomposition::build(params);
      for (const auto& iv : arcs.major_intervals) {
        spans.push_back({iv.center - iv.half_width, iv.center + iv.half_width});
      }
      break;
    }
  }

  const int order = static_cast<int>(std::min<std::size_t>(16, nodes_per_arc));
  const GaussLegendreRule rule = gauss_legendre(order);
  const std::size_t panels = (nodes_per_arc + order - 1) / order;

  struct SpanResult {
    double re = 0.0, im = 0.0;
    bool under = false;
  };
  std::vector<SpanResult> results(spans.size());
  parallel_chunks(spans.size(), 1, [&](std::size_t b, std::size_t e) {
    for (std::size_t si = b; si < e; ++si) {
      const auto [lo, hi] = spans[si];
      const double h = (hi - lo) / static_cast<double>(panels);
      SpanResult r;
      bool have_prev = false;
      Complex prev;
      for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * h;
        for (int i = 0; i < order; ++i) {
          const double alpha = mid + 0.5 * h * rule.nodes[i];
          const Complex fs = ipow(eval_sum(seq, ctx.k, alpha), ctx.s);
          const Complex z = fs * unit_phase(-frac_product(alpha, static_cast<u128>(n)));
          const double w = 0.5 * h * rule.weights[i];
          r.re += w * z.real();
          r.im += w * z.imag();
          if (have_prev && std::abs(z) > 0.0 && std::abs(prev) > 0.0 &&
              std::abs(std::arg(z / prev)) > std::numbers::pi / 4) {
            r.under = true;
          }
          prev = z;
          have_prev = true;
        }
      }
      results[si] = r;
    }
  });

  QuadratureResult out;
  out.nodes = spans.size() * panels * static_cast<std::size_t>(order);
  for (const auto& r : results) {
    out.value += r.re;
    out.imag += r.im;
    out.under_resolved = out.under_resolved || r.under;
  }
  return out;
}

RatioSummary summarize_ratios(std::vector<double> ratios) {
  RatioSummary s;
  s.count = ratios.size();
  if (ratios.empty()) {
    s.min = s.median = s.max = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::sort(ratios.begin(), ratios.end());
  s.min = ratios.front();
  s.max = ratios.back();
  const std::size_t mid = ratios.size() / 2;
  s.median = ratios.size() % 2 == 1 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
  return s;
}

ExceptionalReport exceptional_scan(const ProblemContext& ctx, u64 Q0, const ScanOptions& options) {
  if (ctx.N == 0) throw Error(Errc::parameter_domain, "exceptional scan needs an integer N");
  ExceptionalReport report;
  report.ctx = ctx;
  report.Q0 = Q0;
  report.window_lo = ctx.N;
  report.window_hi = static_cast<u64>(
      std::floor(static_cast<long double>(ctx.N) + std::pow(static_cast<long double>(ctx.x), ctx.k - 1) * ctx.y));
  report.threshold = std::pow(ctx.y, ctx.s - 1) * std::pow(ctx.x, 1 - ctx.k) / std::log(ctx.x);

  std::vector<u64> admissible;
  for (u64 n = report.window_lo + 1; n <= report.window_hi; ++n) {
    if (is_admissible(n, ctx)) admissible.push_back(n);
  }
  report.scanned = admissible.size();
  if (admissible.empty()) {
    report.ratios = summarize_ratios({});
    return report;
  }

  const Predictor predictor(ctx, Q0);
  const MitmCounter counter(ctx);
  std::vector<PerNRecord> records(admissible.size());
  const std::size_t batch = std::max<std::size_t>(options.batch_size, 1);
  for (std::size_t start = 0; start < admissible.size(); start += batch) {
    const std::size_t stop = std::min(admissible.size(), start + batch);
    parallel_chunks(stop - start, 64, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = start + b; i < start + e; ++i) {
        const u64 n = admissible[i];
        const auto rec = counter.count(n);
        const auto pred = predictor.predict(n);
        PerNRecord& r = records[i];
        r.n = n;
        r.rho = rec.rho;
        r.tuple_count = rec.tuple_count;
        r.sigma = pred.sigma;
        r.jay = pred.jay;
        r.main_term = pred.main_term;
        r.ratio = pred.main_term != 0.0 ? rec.rho / pred.main_term : std::numeric_limits<double>::quiet_NaN();
        const double deviation = rec.rho - pred.main_term;
        r.exceptional = std::abs(deviation) >= report.threshold;
        r.exceptional_one_sided = deviation >= report.threshold;
      }
    });
  }

  std::vector<double> ratios;
  for (const auto& r : records) {
    if (r.exceptional) ++report.exceptional;
    if (r.exceptional_one_sided) ++report.exceptional_one_sided;
    if (r.main_term != 0.0) ratios.push_back(r.ratio);
  }
  report.ratios = summarize_ratios(std::move(ratios));
  if (options.keep_per_n) report.per_n = std::move(records);
  return report;
}

MinorMomentReport minor_arc_moment(const ProblemContext& ctx, const ArcParams& params, int t,
                                   std::size_t grid_size, Region region) {
  if (grid_size < 1000) throw Error(Errc::parameter_domain, "grid_size must be >= 1000");
  if (t < 1) throw Error(Errc::parameter_domain, "t must be >= 1");
  const WeightedSequence seq = build_sequence(ctx, SequenceKind::prime_log);

  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (grid_size + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  std::vector<std::size_t> counts(chunks, 0);
  parallel_chunks(grid_size, kChunk, [&](std::size_t b, std::size_t e) {
    CompensatedSum acc;
    std::size_t count = 0;
    for (std::size_t j = b; j < e; ++j) {
      const double alpha = static_cast<double>(j) / static_cast<double>(grid_size);
      if (region != Region::full && classify(alpha, params).region != region) continue;
      ++count;
      acc.add(std::pow(std::abs(eval_sum(seq, ctx.k, alpha)), t));
    }
    partial[b / kChunk] = acc.value();
    counts[b / kChunk] = count;
  });

  MinorMomentReport r;
  r.t = t;
  r.region = region;
  r.grid_size = grid_size;
  CompensatedSum total;
  for (std::size_t c = 0; c < chunks; ++c) {
    total.add(partial[c]);
    r.points_in_region += counts[c];
  }
  r.value = total.value() / static_cast<double>(grid_size);
  r.scale = std::pow(ctx.y, t - 1) * std::pow(ctx.x, 1 - ctx.k);
  r.ratio = r.value / r.scale;
  return r;
}

}  // namespace wglab
