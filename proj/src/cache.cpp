#include "wglab/cache.hpp"

#include <atomic>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "wglab/error.hpp"

namespace wglab {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[5] = {'W', 'G', 'L', 'A', 'B'};
constexpr std::uint8_t kKindWindow = 1;
constexpr std::uint8_t kKindSeries = 2;

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64v(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f64(double v) { u64v(std::bit_cast<std::uint64_t>(v)); }
  void bytes(const std::string& s) { buf_ += s; }
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string buf) : buf_(std::move(buf)) {}
  bool ok() const { return ok_; }
  std::uint8_t u8() {
    if (pos_ >= buf_.size()) {
      ok_ = false;
      return 0;
    }
    return static_cast<std::uint8_t>(buf_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64v() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(u64v()); }
  std::string bytes(std::size_t n) {
    if (buf_.size() - pos_ < n) {
      ok_ = false;
      return {};
    }
    std::string s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  // Guards count fields against truncated files before reserving.
  bool can_hold(std::uint64_t count, std::size_t item) const { return count <= (buf_.size() - pos_) / item; }
  bool at_end() const { return pos_ == buf_.size(); }

 private:
  std::string buf_;
  std::size_t pos_ = 0;
  bool ok_ = true;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string header(std::uint32_t version, std::uint8_t kind, const std::string& key) {
  Writer w;
  w.bytes(std::string(kMagic, 5));
  w.u32(version);
  w.u8(kind);
  w.u32(static_cast<std::uint32_t>(key.size()));
  w.bytes(key);
  return w.str();
}

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Header {
  std::uint32_t version = 0;
  std::uint8_t kind = 0;
  std::string key;
};

std::optional<Header> read_header(Reader& r) {
  if (r.bytes(5) != std::string(kMagic, 5)) return std::nullopt;
  Header h;
  h.version = r.u32();
  h.kind = r.u8();
  const std::uint32_t len = r.u32();
  h.key = r.bytes(len);
  if (!r.ok()) return std::nullopt;
  return h;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string window_key(const ProblemContext& ctx) {
  return "window k=" + std::to_string(ctx.k) + " s=" + std::to_string(ctx.s) + " theta=" + fmt17(ctx.theta) +
         " N=" + std::to_string(ctx.N) + " x=" + fmt17(ctx.x) + " y=" + fmt17(ctx.y);
}

std::string series_key(u64 n, int k, int s, u64 Q0) {
  return "series k=" + std::to_string(k) + " s=" + std::to_string(s) + " n=" + std::to_string(n) +
         " Q0=" + std::to_string(Q0);
}

ArtifactCache::ArtifactCache(fs::path dir, std::uint32_t version) : dir_(std::move(dir)), version_(version) {}

fs::path ArtifactCache::default_dir() {
  if (const char* env = std::getenv("WGLAB_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".wglab-cache";
}

fs::path ArtifactCache::path_for(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.wgl", static_cast<unsigned long long>(fnv1a(key)));
  return dir_ / name;
}

bool ArtifactCache::place(const std::string& key, const std::string& bytes) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(Errc::io_error, "cannot create cache directory " + dir_.string());

  static std::atomic<unsigned long> counter{0};
  const fs::path target = path_for(key);
  const fs::path tmp =
      dir_ / (".tmp." + std::to_string(::getpid()) + "." +
              std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
              std::to_string(counter.fetch_add(1)));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(Errc::io_error, "cannot write " + tmp.string());
  }

  bool won = false;
  fs::create_hard_link(tmp, target, ec);
  if (!ec) {
    won = true;
  } else if (ec == std::errc::file_exists) {
    // Keep an entry of the current version; replace anything stale.
    bool current = false;
    if (auto existing = read_file(target)) {
      Reader r(std::move(*existing));
      auto h = read_header(r);
      current = h && h->version == version_ && h->key == key;
    }
    if (!current) {
      fs::rename(tmp, target, ec);
      if (ec) throw Error(Errc::io_error, "cannot replace " + target.string());
      return true;
    }
  } else {
    fs::remove(tmp, ec);
    throw Error(Errc::io_error, "cannot link " + target.string());
  }
  fs::remove(tmp, ec);
  return won;
}

bool ArtifactCache::store(const std::string& key, const PrimeWindow& window) const {
  Writer w;
  w.bytes(header(version_, kKindWindow, key));
  w.f64(window.x);
  w.f64(window.y);
  w.u64v(window.primes.size());
  for (u64 p : window.primes) w.u64v(p);
  for (double v : window.weights) w.f64(v);
  return place(key, w.str());
}

bool ArtifactCache::store(const std::string& key, const SeriesTruncation& series) const {
  Writer w;
  w.bytes(header(version_, kKindSeries, key));
  w.u64v(series.n);
  w.i32(series.k);
  w.i32(series.s);
  w.u64v(series.Q0);
  w.f64(series.value);
  w.f64(series.imag_residue);
  w.u8(series.tail_heuristic ? 1 : 0);
  w.f64(series.tail_heuristic.value_or(0.0));
  w.u64v(series.partials.size());
  for (const auto& [q, a] : series.partials) {
    w.u64v(q);
    w.f64(a);
  }
  return place(key, w.str());
}

namespace {

template <class T>
CacheLoad<T> open_entry(const fs::path& path, std::uint32_t version, std::uint8_t kind, const std::string& key,
                        std::optional<Reader>& reader) {
  CacheLoad<T> out;
  auto bytes = read_file(path);
  if (!bytes) return out;
  reader.emplace(std::move(*bytes));
  auto h = read_header(*reader);
  if (!h || h->key != key || h->kind != kind) return out;
  if (h->version != version) {
    out.status = CacheStatus::version_mismatch;
    return out;
  }
  out.status = CacheStatus::hit;
  return out;
}

}  // namespace

CacheLoad<PrimeWindow> ArtifactCache::load_window(const std::string& key) const {
  std::optional<Reader> r;
  auto out = open_entry<PrimeWindow>(path_for(key), version_, kKindWindow, key, r);
  if (out.status != CacheStatus::hit) return out;
  PrimeWindow w;
  w.x = r->f64();
  w.y = r->f64();
  const std::uint64_t count = r->u64v();
  if (!r->ok() || !r->can_hold(count, 16)) return {CacheStatus::miss, std::nullopt};
  w.primes.resize(count);
  w.weights.resize(count);
  for (auto& p : w.primes) p = r->u64v();
  for (auto& v : w.weights) v = r->f64();
  if (!r->ok() || !r->at_end()) return {CacheStatus::miss, std::nullopt};
  out.value = std::move(w);
  return out;
}

CacheLoad<SeriesTruncation> ArtifactCache::load_series(const std::string& key) const {
  std::optional<Reader> r;
  auto out = open_entry<SeriesTruncation>(path_for(key), version_, kKindSeries, key, r);
  if (out.status != CacheStatus::hit) return out;
  SeriesTruncation t;
  t.n = r->u64v();
  t.k = r->i32();
  t.s = r->i32();
  t.Q0 = r->u64v();
  t.value = r->f64();
  t.imag_residue = r->f64();
  const bool has_tail = r->u8() != 0;
  const double tail = r->f64();
  if (has_tail) t.tail_heuristic = tail;
  const std::uint64_t count = r->u64v();
  if (!r->ok() || !r->can_hold(count, 16)) return {CacheStatus::miss, std::nullopt};
  t.partials.resize(count);
  for (auto& [q, a] : t.partials) {
    q = r->u64v();
    a = r->f64();
  }
  if (!r->ok() || !r->at_end()) return {CacheStatus::miss, std::nullopt};
  out.value = std::move(t);
  return out;
}

}  // namespace wglab
