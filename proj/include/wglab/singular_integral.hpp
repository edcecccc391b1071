#pragma once

// Archimedean side of the major-arc analysis: the weight sequence behind
// v(beta), the singular integral as an s-fold convolution coefficient, and
// the oscillatory integral I(beta) over the window.

#include <vector>

#include "wglab/arith.hpp"
#include "wglab/phase.hpp"

namespace wglab {

/// c_m = k^-1 m^(-1 + 1/k) for lo = ceil((x - y)^k) <= m <= hi = floor((x + y)^k).
struct WeightSeq {
  int k = 2;
  i64 lo = 0;
  i64 hi = -1;
  std::vector<double> weights;

  static WeightSeq build(const ProblemContext& ctx);
  static WeightSeq build(int k, double x, double y);
  std::size_t size() const noexcept { return weights.size(); }
  double total() const noexcept;
};

/// v(beta) = sum_m c_m e(beta m). The phase advances by a recurrence that is
/// refreshed from the exact phase every 1024 steps.
Complex v_eval(const WeightSeq& w, double beta);

inline constexpr u64 kConvolutionCeiling = 100'000'000;

/// The s-fold self-convolution of a WeightSeq. Because the e(beta m) are
/// orthonormal on [0, 1], the n-th coefficient equals
///   J(n) = int_0^1 v(beta)^s e(-beta n) d beta
/// exactly. Short sequences (R = hi - lo + 1 <= 4096) are folded directly with
/// compensated summation per output cell; longer ones use a real FFT with a
/// pointwise s-th power of the spectrum.
class SingularIntegral {
 public:
  SingularIntegral(const ProblemContext& ctx, u64 ceiling = kConvolutionCeiling);
  SingularIntegral(const WeightSeq& w, int s, u64 ceiling = kConvolutionCeiling);

  /// 0 outside [s lo, s hi].
  double at(u64 n) const noexcept;
  i64 support_lo() const noexcept { return support_lo_; }
  i64 support_hi() const noexcept { return support_lo_ + static_cast<i64>(values_.size()) - 1; }
  bool direct() const noexcept { return direct_; }
  const WeightSeq& weights() const noexcept { return w_; }

 private:
  void compute(int s, u64 ceiling);

  WeightSeq w_;
  i64 support_lo_ = 0;
  std::vector<double> values_;
  bool direct_ = true;
};

double j_integral(u64 n, const ProblemContext& ctx);

inline constexpr std::size_t kDirectConvolutionMax = 4096;

/// int_{x-y}^{x+y} e(beta g^k) dg by composite 16-point Gauss-Legendre with
/// panels no longer than one local oscillation period, doubled until two
/// successive estimates agree to 1e-8 y. Throws Errc::no_convergence.
Complex oscillatory_I(double beta, const ProblemContext& ctx);

}  // namespace wglab
