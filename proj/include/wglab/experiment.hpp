#pragma once

// Desk-scale exceptional-set experiment: major-arc prediction S(n) J(n),
// exact rho(n), the exceptional count over (N, N + x^(k-1) y], circle
// quadrature of the representation integral, and minor-arc moments.

#include <cstddef>
#include <vector>

#include "wglab/arcs.hpp"
#include "wglab/arith.hpp"
#include "wglab/singular_integral.hpp"
#include "wglab/singular_series.hpp"

namespace wglab {

struct MajorArcPrediction {
  u64 n = 0;
  double sigma = 0.0;
  double jay = 0.0;
  double main_term = 0.0;
  bool admissible = false;
};

/// Shares one singular-series evaluator and one convolution across many n.
class Predictor {
 public:
  Predictor(const ProblemContext& ctx, u64 Q0);

  MajorArcPrediction predict(u64 n) const;
  const ProblemContext& context() const noexcept { return ctx_; }
  u64 q0() const noexcept { return q0_; }

 private:
  ProblemContext ctx_;
  u64 q0_;
  SingularSeries series_;
  SingularIntegral integral_;
};

MajorArcPrediction predict(u64 n, const ProblemContext& ctx, u64 Q0);

enum class ArcSet { major, full_circle, zero_arc };

struct QuadratureResult {
  double value = 0.0;
  double imag = 0.0;
  std::size_t nodes = 0;
  /// Some pair of adjacent nodes saw the phase of f^s e(-n alpha) turn by more
  /// than pi/4.
  bool under_resolved = false;
};

/// int_B f(alpha)^s e(-n alpha) d alpha by composite Gauss-Legendre on each
/// arc of B (16-point panels; nodes_per_arc >= 8 nodes per arc in total).
QuadratureResult major_arc_rho_numeric(u64 n, const ProblemContext& ctx, const ArcParams& params,
                                       std::size_t nodes_per_arc, ArcSet set = ArcSet::major);

struct ScanOptions {
  std::size_t batch_size = 4096;
  bool keep_per_n = true;
};

struct PerNRecord {
  u64 n = 0;
  double rho = 0.0;
  u64 tuple_count = 0;
  double sigma = 0.0;
  double jay = 0.0;
  double main_term = 0.0;
  double ratio = 0.0;  // rho / main_term, NaN when main_term = 0
  bool exceptional = false;
  bool exceptional_one_sided = false;
};

struct RatioSummary {
  std::size_t count = 0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct ExceptionalReport {
  ProblemContext ctx;
  u64 Q0 = 0;
  u64 window_lo = 0;  // exclusive
  u64 window_hi = 0;  // inclusive
  std::size_t scanned = 0;
  std::size_t exceptional = 0;
  std::size_t exceptional_one_sided = 0;
  double threshold = 0.0;
  RatioSummary ratios;
  std::vector<PerNRecord> per_n;

  double exceptional_fraction() const noexcept {
    return scanned == 0 ? 0.0 : static_cast<double>(exceptional) / static_cast<double>(scanned);
  }
};

/// Flags n as exceptional when |rho(n) - S(n) J(n)| >= y^(s-1) x^(1-k) / log x.
/// The one-sided count rho - S J >= threshold is reported alongside.
ExceptionalReport exceptional_scan(const ProblemContext& ctx, u64 Q0, const ScanOptions& options = {});

struct MinorMomentReport {
  int t = 0;
  Region region = Region::minor;
  std::size_t grid_size = 0;
  std::size_t points_in_region = 0;
  double value = 0.0;
  double scale = 0.0;  // y^(t-1) x^(1-k)
  double ratio = 0.0;  // value / scale
};

/// Riemann sum (1/G) sum_{j in region} |f(j/G)|^t. An empty region yields 0.
MinorMomentReport minor_arc_moment(const ProblemContext& ctx, const ArcParams& params, int t,
                                   std::size_t grid_size, Region region = Region::minor);

RatioSummary summarize_ratios(std::vector<double> ratios);

}  // namespace wglab
