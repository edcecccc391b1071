#include "wglab/phase.hpp"

#include <cmath>
#include <numbers>

namespace wglab {

namespace {

// x - floor(x) is exact in binary floating point.
inline double frac(double x) noexcept { return x - std::floor(x); }

}  // namespace

double frac_product(double alpha, u128 m) noexcept {
  double acc_hi = 0.0;
  double acc_lo = 0.0;
  for (int limb = 0; limb < 4 && m != 0; ++limb, m >>= 32) {
    const auto digit = static_cast<double>(static_cast<std::uint32_t>(m & 0xffffffffu));
    if (digit == 0.0) continue;
    const double scaled = std::ldexp(alpha, 32 * limb);
    const double hi = scaled * digit;
    const double lo = std::fma(scaled, digit, -hi);
    // Two-sum of the reduced pieces into the accumulator.
    const double parts[2] = {frac(hi), frac(lo)};
    for (double part : parts) {
      const double sum = acc_hi + part;
      const double bp = sum - acc_hi;
      const double err = (acc_hi - (sum - bp)) + (part - bp);
      acc_hi = frac(sum);
      acc_lo += err;
    }
  }
  const double result = frac(frac(acc_hi) + acc_lo);
  return result >= 1.0 ? 0.0 : result;
}

Complex unit_phase(double t) noexcept {
  t -= std::round(t);
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace wglab
