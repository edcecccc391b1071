#include "wglab/singular_integral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "wglab/error.hpp"
#include "wglab/parallel.hpp"
#include "wglab/quadrature.hpp"
#include "wglab/summation.hpp"

namespace wglab {

WeightSeq WeightSeq::build(int k, double x, double y) {
  if (k < 2) throw Error(Errc::parameter_domain, "k must be >= 2");
  WeightSeq w;
  w.k = k;
  const long double a = static_cast<long double>(x) - y;
  const long double b = static_cast<long double>(x) + y;
  w.lo = static_cast<i64>(std::ceil(std::pow(a, static_cast<long double>(k))));
  w.hi = static_cast<i64>(std::floor(std::pow(b, static_cast<long double>(k))));
  w.lo = std::max<i64>(w.lo, 1);
  if (w.hi < w.lo) throw Error(Errc::empty_window, "no integer m in [(x-y)^k, (x+y)^k]");
  w.weights.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
  const double expo = -1.0 + 1.0 / k;
  for (i64 m = w.lo; m <= w.hi; ++m) {
    w.weights.push_back(std::pow(static_cast<double>(m), expo) / k);
  }
  return w;
}

WeightSeq WeightSeq::build(const ProblemContext& ctx) { return build(ctx.k, ctx.x, ctx.y); }

double WeightSeq::total() const noexcept {
  CompensatedSum acc;
  for (double c : weights) acc.add(c);
  return acc.value();
}

Complex v_eval(const WeightSeq& w, double beta) {
  constexpr std::size_t kRefresh = 1024;
  const Complex step = unit_phase(beta - std::floor(beta));
  Complex phase;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    if (i % kRefresh == 0) {
      phase = unit_phase(frac_product(beta, static_cast<u128>(w.lo + static_cast<i64>(i))));
    } else {
      phase *= step;
    }
    re += w.weights[i] * phase.real();
    im += w.weights[i] * phase.imag();
  }
  return {re, im};
}

namespace {

std::vector<double> fold_direct(const std::vector<double>& cur, const std::vector<double>& c) {
  const std::size_t out_len = cur.size() + c.size() - 1;
  std::vector<double> out(out_len);
  parallel_chunks(out_len, 1024, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const std::size_t i_lo = j >= c.size() - 1 ? j - (c.size() - 1) : 0;
      const std::size_t i_hi = std::min(j, cur.size() - 1);
      CompensatedSum acc;
      for (std::size_t i = i_lo; i <= i_hi; ++i) acc.add(cur[i] * c[j - i]);
      out[j] = acc.value();
    }
  });
  return out;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

std::vector<double> power_fft(const std::vector<double>& c, int s) {
  const std::size_t out_len = static_cast<std::size_t>(s) * (c.size() - 1) + 1;
  std::size_t nfft = 1;
  while (nfft < out_len) nfft <<= 1;
  const std::size_t nspec = nfft / 2 + 1;

  auto* real = static_cast<double*>(fftw_malloc(sizeof(double) * nfft));
  auto* spec = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nspec));
  if (real == nullptr || spec == nullptr) {
    fftw_free(real);
    fftw_free(spec);
    throw Error(Errc::memory_budget_exceeded, "FFT buffers of size " + std::to_string(nfft));
  }
  fftw_plan forward, backward;
  {
    std::lock_guard lock(fftw_planner_mutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(nfft), real, spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(nfft), spec, real, FFTW_ESTIMATE);
  }
  std::fill(real, real + nfft, 0.0);
  std::copy(c.begin(), c.end(), real);
  fftw_execute(forward);
  for (std::size_t i = 0; i < nspec; ++i) {
    Complex z{spec[i][0], spec[i][1]};
    Complex p{1.0, 0.0};
    for (int j = 0; j < s; ++j) p *= z;
    spec[i][0] = p.real();
    spec[i][1] = p.imag();
  }
  fftw_execute(backward);
  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(nfft);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = std::max(real[i] * scale, 0.0);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  fftw_free(real);
  fftw_free(spec);
  return out;
}

}  // namespace

SingularIntegral::SingularIntegral(const ProblemContext& ctx, u64 ceiling)
    : w_(WeightSeq::build(ctx)) {
  compute(ctx.s, ceiling);
}

SingularIntegral::SingularIntegral(const WeightSeq& w, int s, u64 ceiling) : w_(w) {
  compute(s, ceiling);
}

void SingularIntegral::compute(int s, u64 ceiling) {
  if (s < 1) throw Error(Errc::parameter_domain, "s must be >= 1");
  const std::size_t R = w_.size();
  if (static_cast<u64>(R) * static_cast<u64>(s) > ceiling) {
    throw Error(Errc::convolution_too_large,
                std::to_string(R) + " weights x " + std::to_string(s) + " folds exceeds " +
                    std::to_string(ceiling) + " cells");
  }
  support_lo_ = static_cast<i64>(s) * w_.lo;
  direct_ = R <= kDirectConvolutionMax;
  if (direct_ || s == 1) {
    values_ = w_.weights;
    for (int i = 1; i < s; ++i) values_ = fold_direct(values_, w_.weights);
  } else {
    values_ = power_fft(w_.weights, s);
  }
}

double SingularIntegral::at(u64 n) const noexcept {
  const auto ni = static_cast<i64>(n);
  if (ni < support_lo() || ni > support_hi()) return 0.0;
  return values_[static_cast<std::size_t>(ni - support_lo_)];
}

double j_integral(u64 n, const ProblemContext& ctx) {
  const WeightSeq w = WeightSeq::build(ctx);
  const auto ni = static_cast<i64>(n);
  if (ni < ctx.s * w.lo || ni > ctx.s * w.hi) return 0.0;
  return SingularIntegral(w, ctx.s).at(n);
}

namespace {

Complex panel_sum(double beta, int k, long double a, long double b, std::size_t panels,
                  const GaussLegendreRule& rule) {
  const long double h = (b - a) / static_cast<long double>(panels);
  double re = 0.0, im = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const long double mid = a + (static_cast<long double>(p) + 0.5L) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const long double g = mid + 0.5L * h * rule.nodes[i];
      long double phase = static_cast<long double>(beta) * std::pow(g, static_cast<long double>(k));
      phase -= std::floor(phase);
      const Complex z = unit_phase(static_cast<double>(phase));
      const double w = 0.5 * static_cast<double>(h) * rule.weights[i];
      re += w * z.real();
      im += w * z.imag();
    }
  }
  return {re, im};
}

}  // namespace

Complex oscillatory_I(double beta, const ProblemContext& ctx) {
  constexpr std::size_t kMaxPanels = std::size_t{1} << 24;
  const GaussLegendreRule rule = gauss_legendre(16);
  const long double a = static_cast<long double>(ctx.x) - ctx.y;
  const long double b = static_cast<long double>(ctx.x) + ctx.y;
  const double tol = 1e-8 * ctx.y;
  // Largest local frequency |beta| k g^(k-1) sits at the right end.
  const double max_freq = std::abs(beta) * ctx.k * std::pow(static_cast<double>(b), ctx.k - 1);
  auto panels = static_cast<std::size_t>(std::ceil(max_freq * static_cast<double>(b - a)));
  panels = std::max<std::size_t>(panels, 1);
  Complex prev = panel_sum(beta, ctx.k, a, b, panels, rule);
  while (panels <= kMaxPanels) {
    panels *= 2;
    const Complex next = panel_sum(beta, ctx.k, a, b, panels, rule);
    if (std::abs(next - prev) <= tol) return next;
    prev = next;
  }
  throw Error(Errc::no_convergence, "oscillatory_I did not reach tolerance at beta = " + std::to_string(beta));
}

}  // namespace wglab
