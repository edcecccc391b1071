#include "wglab/error.hpp"

namespace wglab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::range_too_large: return "range-too-large";
    case Errc::empty_range: return "empty-range";
    case Errc::factorization_failed: return "factorization-failed";
    case Errc::empty_window: return "empty-window";
    case Errc::precision_overflow: return "precision-overflow";
    case Errc::empty_region: return "empty-region";
    case Errc::parameter_domain: return "parameter-domain";
    case Errc::overlap_detected: return "overlap-detected";
    case Errc::not_coprime: return "not-coprime";
    case Errc::imaginary_residue: return "imaginary-residue";
    case Errc::convolution_too_large: return "convolution-too-large";
    case Errc::no_convergence: return "no-convergence";
    case Errc::too_large: return "too-large";
    case Errc::memory_budget_exceeded: return "memory-budget-exceeded";
    case Errc::version_mismatch: return "version-mismatch";
    case Errc::unsupported_kind: return "unsupported-kind";
    case Errc::invalid_config: return "invalid-config";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace wglab
