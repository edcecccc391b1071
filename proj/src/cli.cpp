#include "wglab/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wglab/arcs.hpp"
#include "wglab/cache.hpp"
#include "wglab/config.hpp"
#include "wglab/error.hpp"
#include "wglab/experiment.hpp"
#include "wglab/expsums.hpp"
#include "wglab/parallel.hpp"
#include "wglab/report.hpp"
#include "wglab/representations.hpp"
#include "wglab/singular_integral.hpp"
#include "wglab/singular_series.hpp"

namespace wglab {

namespace {

// Values bound to flags. A flag that was given overrides the config file.
struct Flags {
  std::string config_path;
  std::string out_path;
  std::string format;
  unsigned threads = 0;
  int k = 2, s = 5;
  double theta = 0.8, x = 0.0, y = 0.0, A = 1.0;
  u64 N = 0, Q0 = 400;
  std::size_t grid = 0, batch = 0;
  std::string cache_dir;

  u64 lo = 0, hi = 0, q = 1;
  i64 a = 1;
  std::vector<u64> n;
  int t = 1;
  double P = 0.0, Q = 0.0, alpha = 0.0, rho = 0.1;
  std::string region = "minor";
  std::string kind = "prime_log";
  std::string method = "auto";
  std::string plot;
  std::string per_n_path;
  std::size_t nodes = 0;
  bool partials = false;
  bool list = false;
};

class Overrides {
 public:
  void add(CLI::Option* opt, std::function<void(RunConfig&)> apply) { items_.push_back({opt, std::move(apply)}); }
  void apply(RunConfig& cfg) const {
    for (const auto& [opt, fn] : items_) {
      if (opt->count() > 0) fn(cfg);
    }
  }

 private:
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> items_;
};

void add_io(CLI::App* sub, Flags& f, Overrides& ov) {
  sub->add_option("--config", f.config_path, "Configuration file (key = value lines)");
  sub->add_option("--out", f.out_path, "Write output here instead of stdout");
  ov.add(sub->add_option("--format", f.format, "json or csv"), [&f](RunConfig& c) { c.format = f.format; });
  ov.add(sub->add_option("--threads", f.threads, "Worker threads (0 = all cores)"),
         [&f](RunConfig& c) { c.threads = f.threads; });
}

void add_context(CLI::App* sub, Flags& f, Overrides& ov) {
  ov.add(sub->add_option("--k", f.k, "Power k"), [&f](RunConfig& c) { c.k = f.k; });
  ov.add(sub->add_option("--s", f.s, "Number of summands s"), [&f](RunConfig& c) { c.s = f.s; });
  ov.add(sub->add_option("--theta", f.theta, "Window exponent, y = x^theta"),
         [&f](RunConfig& c) { c.theta = f.theta; });
  ov.add(sub->add_option("--N", f.N, "N, with x = (N/s)^(1/k)"), [&f](RunConfig& c) {
    c.N = f.N;
    c.x = c.y = 0.0;
  });
  ov.add(sub->add_option("--x", f.x, "Window centre x"), [&f](RunConfig& c) { c.x = f.x; });
  ov.add(sub->add_option("--y", f.y, "Window half-width y"), [&f](RunConfig& c) { c.y = f.y; });
  ov.add(sub->add_option("--cache-dir", f.cache_dir, "Artifact cache directory"),
         [&f](RunConfig& c) { c.cache_dir = f.cache_dir; });
}

void add_ks(CLI::App* sub, Flags& f, Overrides& ov) {
  ov.add(sub->add_option("--k", f.k, "Power k"), [&f](RunConfig& c) { c.k = f.k; });
  ov.add(sub->add_option("--s", f.s, "Number of summands s"), [&f](RunConfig& c) { c.s = f.s; });
}

void add_A(CLI::App* sub, Flags& f, Overrides& ov) {
  ov.add(sub->add_option("--A", f.A, "Major-arc exponent, P = (log x)^A"), [&f](RunConfig& c) { c.A = f.A; });
}

void add_q0(CLI::App* sub, Flags& f, Overrides& ov) {
  ov.add(sub->add_option("--q0", f.Q0, "Singular-series truncation Q0"), [&f](RunConfig& c) { c.Q0 = f.Q0; });
}

void add_grid(CLI::App* sub, Flags& f, Overrides& ov) {
  ov.add(sub->add_option("--grid", f.grid, "Grid size"), [&f](RunConfig& c) { c.grid_size = f.grid; });
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

PrimeWindow window_for(const RunConfig& cfg, const ProblemContext& ctx) {
  if (cfg.cache_dir.empty()) return PrimeWindow::build(ctx);
  const ArtifactCache cache(cfg.cache_dir);
  const std::string key = window_key(ctx);
  auto hit = cache.load_window(key);
  if (hit.value) return *hit.value;
  PrimeWindow w = PrimeWindow::build(ctx);
  cache.store(key, w);
  return w;
}

SeriesTruncation series_for(const RunConfig& cfg, u64 n) {
  if (cfg.cache_dir.empty()) return truncated_sigma(n, cfg.k, cfg.s, cfg.Q0);
  const ArtifactCache cache(cfg.cache_dir);
  const std::string key = series_key(n, cfg.k, cfg.s, cfg.Q0);
  auto hit = cache.load_series(key);
  if (hit.value) return *hit.value;
  SeriesTruncation t = truncated_sigma(n, cfg.k, cfg.s, cfg.Q0);
  cache.store(key, t);
  return t;
}

u64 single_n(const Flags& f) {
  if (f.n.size() != 1) throw Error(Errc::invalid_config, "exactly one --n is required");
  return f.n.front();
}

std::string run(const std::string& cmd, const Flags& f, const RunConfig& cfg, bool format_given) {
  std::ostringstream out;
  const bool csv = cfg.format == "csv";

  if (cmd == "sieve") {
    const auto primes = sieve_interval(f.lo, f.hi);
    if (format_given && cfg.format == "json") {
      Json j;
      j["lo"] = f.lo;
      j["hi"] = f.hi;
      j["count"] = primes.size();
      j["primes"] = primes;
      return dump(j);
    }
    for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? " " : "") << primes[i];
    out << "\n";
    return out.str();
  }
  if (cmd == "admissible") {
    const u64 n = single_n(f);
    Json j;
    j["n"] = n;
    j["k"] = cfg.k;
    j["s"] = cfg.s;
    j["R"] = modulus_R(cfg.k);
    j["admissible"] = is_admissible(n, cfg.k, cfg.s);
    return dump(j);
  }
  if (cmd == "gauss-sum") return dump(to_json(gauss_sum(f.q, f.a, cfg.k)));
  if (cmd == "sigma") return dump(to_json(series_for(cfg, single_n(f)), f.partials));

  const ProblemContext ctx = cfg.context();

  if (cmd == "jay") {
    const u64 n = single_n(f);
    const SingularIntegral jay(ctx);
    const double scale = std::pow(ctx.y, ctx.s - 1) * std::pow(ctx.x, 1 - ctx.k);
    Json j;
    j["context"] = to_json(ctx);
    j["n"] = n;
    j["jay"] = number(jay.at(n));
    j["support_lo"] = jay.support_lo();
    j["support_hi"] = jay.support_hi();
    j["method"] = jay.direct() ? "direct" : "fft";
    j["scale"] = number(scale);
    j["ratio"] = number(jay.at(n) / scale);
    return dump(j);
  }
  if (cmd == "rho") {
    if (f.n.empty()) throw Error(Errc::invalid_config, "at least one --n is required");
    if (f.method == "circle") {
      const ArcParams params = ArcParams::from_context(ctx, cfg.A);
      const double hi_pow = std::pow(ctx.x + ctx.y, ctx.k);
      const std::size_t nodes =
          f.nodes > 0 ? f.nodes : static_cast<std::size_t>(std::ceil(32.0 * ctx.s * hi_pow / 16.0)) * 16;
      Json arr = Json::array();
      for (u64 n : f.n) {
        Json j{{"n", n}};
        j.update(to_json(major_arc_rho_numeric(n, ctx, params, nodes, ArcSet::full_circle)));
        arr.push_back(std::move(j));
      }
      return dump(arr.size() == 1 ? arr.front() : arr);
    }
    const PrimeWindow window = window_for(cfg, ctx);
    std::vector<RepresentationRecord> recs;
    if (f.method == "naive") {
      for (u64 n : f.n) recs.push_back(rho_naive(n, window, ctx.k, ctx.s));
    } else if (f.method == "mitm" || f.method == "auto") {
      recs = MitmCounter(window, ctx.k, ctx.s).count_all(f.n);
    } else {
      throw Error(Errc::invalid_config, "method must be auto, naive, mitm or circle");
    }
    if (csv) {
      write_records_csv(out, recs);
      return out.str();
    }
    Json arr = Json::array();
    for (const auto& r : recs) arr.push_back(to_json(r));
    return dump(arr.size() == 1 ? arr.front() : arr);
  }
  if (cmd == "moment") {
    Json j;
    j["context"] = to_json(ctx);
    j["moment"] = to_json(moment(f.t, window_for(cfg, ctx), ctx.k));
    return dump(j);
  }
  if (cmd == "arcs") {
    const ArcParams params = f.P > 0.0 || f.Q > 0.0 ? ArcParams::explicit_pq(f.P, f.Q)
                                                     : ArcParams::from_context(ctx, cfg.A);
    const auto arcs = ArcDecomposition::build(params);
    Json j;
    j["params"] = to_json(params);
    j["major_arcs"] = arcs.major_intervals.size();
    j["major_measure"] = number(major_measure(params));
    if (f.list) {
      Json list = Json::array();
      for (const auto& iv : arcs.major_intervals) {
        list.push_back({{"q", iv.q}, {"a", iv.a}, {"center", number(iv.center)}, {"half_width", number(iv.half_width)}});
      }
      j["intervals"] = std::move(list);
    }
    if (f.alpha != 0.0) {
      j["alpha"] = number(f.alpha);
      j["classification"] = to_json(classify(f.alpha, params));
    }
    return dump(j);
  }
  if (cmd == "scan-sup") {
    const ArcParams params = ArcParams::from_context(ctx, cfg.A);
    const auto seq = build_sequence(ctx, parse_kind(f.kind));
    Json j = to_json(sup_scan(seq, ctx.k, ArcDecomposition::build(params), parse_region(f.region), cfg.grid_size));
    j["params"] = to_json(params);
    return dump(j);
  }
  if (cmd == "dichotomy") return dump(to_json(dichotomy_report(ctx, f.rho, f.alpha)));
  if (cmd == "exceptional") {
    ScanOptions opts;
    opts.batch_size = cfg.batch_size;
    opts.keep_per_n = csv || !f.per_n_path.empty();
    const auto report = exceptional_scan(ctx, cfg.Q0, opts);
    if (csv) {
      write_per_n_csv(out, report.per_n);
      return out.str();
    }
    if (!f.per_n_path.empty()) {
      std::ofstream detail(f.per_n_path);
      if (!detail) throw Error(Errc::io_error, "cannot write " + f.per_n_path);
      write_per_n_csv(detail, report.per_n);
    }
    return dump(to_json(report, f.per_n_path));
  }
  if (cmd == "minor-moment") {
    const ArcParams params = ArcParams::from_context(ctx, cfg.A);
    Json j = to_json(minor_arc_moment(ctx, params, f.t, cfg.grid_size, parse_region(f.region)));
    j["params"] = to_json(params);
    return dump(j);
  }
  if (cmd == "report") {
    const PlotKind kind = parse_plot_kind(f.plot);
    PlotInputs in;
    ArcProfile profile;
    ExceptionalReport scan;
    SeriesTruncation series;
    switch (kind) {
      case PlotKind::arc_profile:
        profile = arc_profile(build_sequence(ctx, parse_kind(f.kind)), ctx.k, ArcParams::from_context(ctx, cfg.A),
                              cfg.grid_size);
        in.profile = &profile;
        break;
      case PlotKind::ratio_histogram:
        scan = exceptional_scan(ctx, cfg.Q0, {cfg.batch_size, true});
        in.scan = &scan;
        break;
      case PlotKind::partial_sums:
        series = series_for(cfg, single_n(f));
        in.series = &series;
        break;
    }
    emit_plot_data(out, kind, in);
    return out.str();
  }
  throw Error(Errc::invalid_config, "unknown subcommand " + cmd);
}

}  // namespace

int cli_dispatch(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Waring-Goldbach circle-method lab for almost-equal primes"};
  app.require_subcommand(1);
  Flags f;
  Overrides ov;

  auto* sieve = app.add_subcommand("sieve", "Primes in (lo, hi]");
  add_io(sieve, f, ov);
  sieve->add_option("--lo", f.lo)->required();
  sieve->add_option("--hi", f.hi)->required();

  auto* adm = app.add_subcommand("admissible", "Congruence admissibility of n");
  add_io(adm, f, ov);
  add_ks(adm, f, ov);
  adm->add_option("--n", f.n)->required();

  auto* gs = app.add_subcommand("gauss-sum", "Complete Gauss sum S(q, a)");
  add_io(gs, f, ov);
  ov.add(gs->add_option("--k", f.k), [&f](RunConfig& c) { c.k = f.k; });
  gs->add_option("--q", f.q)->required();
  gs->add_option("--a", f.a)->required();

  auto* sigma = app.add_subcommand("sigma", "Truncated singular series");
  add_io(sigma, f, ov);
  add_ks(sigma, f, ov);
  add_q0(sigma, f, ov);
  sigma->add_option("--n", f.n)->required();
  sigma->add_flag("--partials", f.partials, "Include the nonzero terms A(q, n)");
  ov.add(sigma->add_option("--cache-dir", f.cache_dir), [&f](RunConfig& c) { c.cache_dir = f.cache_dir; });

  auto* jay = app.add_subcommand("jay", "Singular integral");
  add_io(jay, f, ov);
  add_context(jay, f, ov);
  jay->add_option("--n", f.n)->required();

  auto* rho = app.add_subcommand("rho", "Weighted representation count");
  add_io(rho, f, ov);
  add_context(rho, f, ov);
  add_A(rho, f, ov);
  rho->add_option("--n", f.n, "One or more targets")->required();
  rho->add_option("--method", f.method, "auto, naive, mitm or circle");
  rho->add_option("--nodes", f.nodes, "Quadrature nodes for --method circle");

  auto* mom = app.add_subcommand("moment", "Exact moment of |f|^(2t)");
  add_io(mom, f, ov);
  add_context(mom, f, ov);
  mom->add_option("--t", f.t)->required();

  auto* arcs = app.add_subcommand("arcs", "Major-arc decomposition");
  add_io(arcs, f, ov);
  add_context(arcs, f, ov);
  add_A(arcs, f, ov);
  arcs->add_option("--P", f.P, "Explicit P (with --Q)");
  arcs->add_option("--Q", f.Q, "Explicit Q (with --P)");
  arcs->add_option("--alpha", f.alpha, "Classify this point");
  arcs->add_flag("--list", f.list, "List every interval");

  auto* sup = app.add_subcommand("scan-sup", "Sup of |f| over a region");
  add_io(sup, f, ov);
  add_context(sup, f, ov);
  add_A(sup, f, ov);
  add_grid(sup, f, ov);
  sup->add_option("--region", f.region, "major, minor or full");
  sup->add_option("--kind", f.kind, "prime_log, integer_log or unit");

  auto* dich = app.add_subcommand("dichotomy", "Large-value dichotomy at one alpha");
  add_io(dich, f, ov);
  add_context(dich, f, ov);
  dich->add_option("--rho", f.rho)->required();
  dich->add_option("--alpha", f.alpha)->required();

  auto* exc = app.add_subcommand("exceptional", "Exceptional-set scan over (N, N + x^(k-1) y]");
  add_io(exc, f, ov);
  add_context(exc, f, ov);
  add_q0(exc, f, ov);
  ov.add(exc->add_option("--batch", f.batch), [&f](RunConfig& c) { c.batch_size = f.batch; });
  exc->add_option("--per-n", f.per_n_path, "Write the per-n CSV stream here");

  auto* mm = app.add_subcommand("minor-moment", "Grid estimate of the minor-arc moment");
  add_io(mm, f, ov);
  add_context(mm, f, ov);
  add_A(mm, f, ov);
  add_grid(mm, f, ov);
  mm->add_option("--t", f.t)->required();
  mm->add_option("--region", f.region, "major, minor or full");

  auto* rep = app.add_subcommand("report", "Plot data as CSV");
  add_io(rep, f, ov);
  add_context(rep, f, ov);
  add_A(rep, f, ov);
  add_q0(rep, f, ov);
  add_grid(rep, f, ov);
  rep->add_option("--kind", f.plot, "arc_profile, ratio_histogram or partial_sums")->required();
  rep->add_option("--n", f.n, "Target for partial_sums");
  rep->add_option("--seq", f.kind, "Sequence kind for arc_profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string cmd = chosen->get_name();
  const CLI::Option* format_opt = chosen->get_option_no_throw("--format");
  const bool format_given = format_opt != nullptr && format_opt->count() > 0;
  try {
    RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
    ov.apply(cfg);
    cfg.validate();
    set_thread_count(cfg.threads);
    const std::string text = run(cmd, f, cfg, format_given);
    if (f.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(f.out_path);
      if (!file) throw Error(Errc::io_error, "cannot write " + f.out_path);
      file << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::invalid_config ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wglab
