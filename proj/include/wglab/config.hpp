#pragma once

// Run configuration: a flat "key = value" text file, one key per line,
// '#' starts a comment. Keys:
//   k, s, theta, N, x, y, A, Q0, grid_size, batch_size, cache_dir, format, threads
// N, x and y are 0 when unset. Unknown keys are rejected.

#include <string>
#include <string_view>

#include "wglab/arith.hpp"

namespace wglab {

struct RunConfig {
  int k = 2;
  int s = 5;
  double theta = 0.8;
  u64 N = 0;
  double x = 0.0;
  double y = 0.0;
  double A = 1.0;
  u64 Q0 = 400;
  std::size_t grid_size = 100'000;
  std::size_t batch_size = 4096;
  std::string cache_dir;
  std::string format = "json";
  unsigned threads = 0;

  /// Throws Errc::invalid_config on an unknown key or malformed value.
  void set(std::string_view key, std::string_view value);
  void validate() const;

  /// x and y given: explicit window. Else x, else N. Else x = 400.
  ProblemContext context() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace wglab
