#include "wglab/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wglab/error.hpp"

namespace wglab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_integer(std::string_view key, std::string_view v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(Errc::invalid_config, "bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(Errc::invalid_config, "bad number for " + std::string(key) + ": '" + s + "'");
  }
  return out;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "k") k = parse_integer<int>(key, value);
  else if (key == "s") s = parse_integer<int>(key, value);
  else if (key == "theta") theta = parse_real(key, value);
  else if (key == "N") N = parse_integer<u64>(key, value);
  else if (key == "x") x = parse_real(key, value);
  else if (key == "y") y = parse_real(key, value);
  else if (key == "A") A = parse_real(key, value);
  else if (key == "Q0") Q0 = parse_integer<u64>(key, value);
  else if (key == "grid_size") grid_size = parse_integer<std::size_t>(key, value);
  else if (key == "batch_size") batch_size = parse_integer<std::size_t>(key, value);
  else if (key == "cache_dir") cache_dir = std::string(value);
  else if (key == "format") format = std::string(value);
  else if (key == "threads") threads = parse_integer<unsigned>(key, value);
  else throw Error(Errc::invalid_config, "unknown key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::invalid_config, m); };
  if (k < 2) fail("k must be >= 2");
  if (s < 2) fail("s must be >= 2");
  if (!(theta > 0.0 && theta <= 1.0)) fail("theta must lie in (0, 1]");
  if (x < 0.0 || y < 0.0) fail("x and y must be nonnegative");
  if (y > 0.0 && x == 0.0) fail("y needs x");
  if (!(A > 0.0)) fail("A must be positive");
  if (Q0 < 1) fail("Q0 must be >= 1");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (format != "json" && format != "csv") fail("format must be json or csv");
}

ProblemContext RunConfig::context() const {
  if (x > 0.0 && y > 0.0) return ProblemContext::from_xy(k, s, x, y);
  if (x > 0.0) return ProblemContext::from_x(k, s, theta, x);
  if (N > 0) return ProblemContext::from_n(k, s, theta, N);
  return ProblemContext::from_x(k, s, theta, 400.0);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::invalid_config, "line " + std::to_string(line_no) + ": expected key = value");
    }
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_config, "cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "k = " << c.k << "\n"
      << "s = " << c.s << "\n"
      << "theta = " << fmt17(c.theta) << "\n"
      << "N = " << c.N << "\n"
      << "x = " << fmt17(c.x) << "\n"
      << "y = " << fmt17(c.y) << "\n"
      << "A = " << fmt17(c.A) << "\n"
      << "Q0 = " << c.Q0 << "\n"
      << "grid_size = " << c.grid_size << "\n"
      << "batch_size = " << c.batch_size << "\n"
      << "cache_dir = " << c.cache_dir << "\n"
      << "format = " << c.format << "\n"
      << "threads = " << c.threads << "\n";
  return out.str();
}

}  // namespace wglab
