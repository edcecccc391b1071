#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wglab {

enum class Errc {
  range_too_large,
  empty_range,
  factorization_failed,
  empty_window,
  precision_overflow,
  empty_region,
  parameter_domain,
  overlap_detected,
  not_coprime,
  imaginary_residue,
  convolution_too_large,
  no_convergence,
  too_large,
  memory_budget_exceeded,
  version_mismatch,
  unsupported_kind,
  invalid_config,
  io_error,
};

std::string_view errc_name(Errc code) noexcept;

// Domain error raised by every module. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace wglab
