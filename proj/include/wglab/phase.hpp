#pragma once

#include <complex>

#include "wglab/arith.hpp"

namespace wglab {

using Complex = std::complex<double>;

/// Fractional part of alpha * m in [0, 1) for an exact integer m < 2^128.
/// m is split into 32-bit limbs; each limb product alpha * 2^(32 i) * limb is
/// formed exactly as a double-double and reduced mod 1 before summation, so
/// the result is accurate to a few ulps regardless of the size of m.
double frac_product(double alpha, u128 m) noexcept;

/// e(t) = exp(2 pi i t).
Complex unit_phase(double t) noexcept;

}  // namespace wglab
