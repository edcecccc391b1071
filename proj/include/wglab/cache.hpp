#pragma once

// On-disk cache for prime windows and singular-series truncations.
//
// File layout (all integers little-endian, doubles as IEEE-754 bit patterns):
//   "WGLAB"            5 bytes magic
//   version            u32
//   kind               u8   (1 = window, 2 = series)
//   key length         u32, followed by the key bytes
//   payload
// Window payload: x f64, y f64, count u64, count x u64 primes, count x f64 weights.
// Series payload: n u64, k i32, s i32, Q0 u64, value f64, imag_residue f64,
//   has_tail u8, tail f64, count u64, count x (q u64, A f64).
//
// Files are named by a 64-bit FNV-1a hash of the key. A store writes a private
// temp file and hard-links it into place, so concurrent writers of one key
// leave exactly one winner and readers never see a partial file.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "wglab/arith.hpp"
#include "wglab/singular_series.hpp"

namespace wglab {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

enum class CacheStatus { hit, miss, version_mismatch };

template <class T>
struct CacheLoad {
  CacheStatus status = CacheStatus::miss;
  std::optional<T> value;
};

std::string window_key(const ProblemContext& ctx);
std::string series_key(u64 n, int k, int s, u64 Q0);

class ArtifactCache {
 public:
  explicit ArtifactCache(std::filesystem::path dir, std::uint32_t version = kCacheFormatVersion);

  /// WGLAB_CACHE_DIR if set, else ".wglab-cache".
  static std::filesystem::path default_dir();

  /// Returns true if this call placed the file, false if an entry with the
  /// same key and version was already there.
  bool store(const std::string& key, const PrimeWindow& window) const;
  bool store(const std::string& key, const SeriesTruncation& series) const;

  CacheLoad<PrimeWindow> load_window(const std::string& key) const;
  CacheLoad<SeriesTruncation> load_series(const std::string& key) const;

  std::filesystem::path path_for(const std::string& key) const;
  std::uint32_t version() const noexcept { return version_; }

 private:
  bool place(const std::string& key, const std::string& bytes) const;

  std::filesystem::path dir_;
  std::uint32_t version_;
};

}  // namespace wglab
