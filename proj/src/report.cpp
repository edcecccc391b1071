#include "wglab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "wglab/error.hpp"

namespace wglab {

double round12(double v) noexcept {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

Json to_json(const ProblemContext& ctx) {
  Json j;
  j["k"] = ctx.k;
  j["s"] = ctx.s;
  j["theta"] = number(ctx.theta);
  j["N"] = ctx.N;
  j["x"] = number(ctx.x);
  j["y"] = number(ctx.y);
  return j;
}

Json to_json(const Factorization& f) {
  Json j = Json::array();
  for (const auto& pp : f) j.push_back(Json::array({pp.p, pp.e}));
  return j;
}

Json to_json(const RationalPoint& p) {
  Json j;
  j["a"] = p.a;
  j["q"] = p.q;
  j["beta"] = number(p.beta);
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["region"] = region_name(c.region);
  j["point"] = to_json(c.point);
  return j;
}

Json to_json(const ArcParams& p) {
  Json j;
  j["A"] = number(p.A);
  j["P"] = number(p.P);
  j["Q"] = number(p.Q);
  return j;
}

Json to_json(const GaussSumValue& g) {
  Json j;
  j["q"] = g.q;
  j["a"] = g.a;
  j["k"] = g.k;
  j["re"] = number(g.value.real());
  j["im"] = number(g.value.imag());
  j["abs"] = number(std::abs(g.value));
  return j;
}

Json to_json(const SeriesTruncation& t, bool with_partials) {
  Json j;
  j["n"] = t.n;
  j["k"] = t.k;
  j["s"] = t.s;
  j["Q0"] = t.Q0;
  j["value"] = number(t.value);
  j["imag_residue"] = number(t.imag_residue);
  j["nonzero_terms"] = t.partials.size();
  j["tail_heuristic"] = t.tail_heuristic ? number(*t.tail_heuristic) : Json(nullptr);
  if (with_partials) {
    Json arr = Json::array();
    for (const auto& [q, a] : t.partials) arr.push_back(Json::array({q, number(a)}));
    j["partials"] = std::move(arr);
  }
  return j;
}

Json to_json(const MajorArcPrediction& p) {
  Json j;
  j["n"] = p.n;
  j["admissible"] = p.admissible;
  j["sigma"] = number(p.sigma);
  j["jay"] = number(p.jay);
  j["main_term"] = number(p.main_term);
  return j;
}

Json to_json(const RepresentationRecord& r) {
  Json j;
  j["n"] = r.n;
  j["rho"] = number(r.rho);
  j["tuple_count"] = r.tuple_count;
  return j;
}

Json to_json(const MomentValue& m) {
  Json j;
  j["t"] = m.t;
  j["value"] = number(m.value);
  j["distinct_sums"] = m.distinct_sums;
  return j;
}

Json to_json(const SupScanReport& r) {
  Json j;
  j["region"] = region_name(r.region);
  j["grid_size"] = r.grid_size;
  j["points_in_region"] = r.points_in_region;
  j["sup_abs"] = number(r.sup_abs);
  j["argmax_alpha"] = number(r.argmax_alpha);
  if (r.nearest_rational) {
    j["nearest_rational"] = {{"a", r.nearest_rational->first}, {"q", r.nearest_rational->second}};
  } else {
    j["nearest_rational"] = nullptr;
  }
  return j;
}

Json to_json(const DichotomyReport& r) {
  Json j;
  j["rho"] = number(r.rho);
  j["alpha"] = number(r.alpha);
  j["observed"] = number(r.observed);
  j["bound_k1"] = number(r.bound_k1);
  j["bound_k3"] = number(r.bound_k3);
  j["approx"] = r.approx ? to_json(*r.approx) : Json(nullptr);
  return j;
}

Json to_json(const QuadratureResult& q) {
  Json j;
  j["value"] = number(q.value);
  j["imag"] = number(q.imag);
  j["nodes"] = q.nodes;
  j["under_resolved"] = q.under_resolved;
  return j;
}

Json to_json(const MinorMomentReport& r) {
  Json j;
  j["t"] = r.t;
  j["region"] = region_name(r.region);
  j["grid_size"] = r.grid_size;
  j["points_in_region"] = r.points_in_region;
  j["value"] = number(r.value);
  j["scale"] = number(r.scale);
  j["ratio"] = number(r.ratio);
  return j;
}

Json to_json(const RatioSummary& r) {
  Json j;
  j["count"] = r.count;
  j["min"] = number(r.min);
  j["median"] = number(r.median);
  j["max"] = number(r.max);
  return j;
}

Json to_json(const PerNRecord& r) {
  Json j;
  j["n"] = r.n;
  j["rho"] = number(r.rho);
  j["tuple_count"] = r.tuple_count;
  j["sigma"] = number(r.sigma);
  j["jay"] = number(r.jay);
  j["main_term"] = number(r.main_term);
  j["ratio"] = number(r.ratio);
  j["exceptional"] = r.exceptional;
  j["exceptional_one_sided"] = r.exceptional_one_sided;
  return j;
}

Json to_json(const ExceptionalReport& r, std::string_view per_n_ref) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["context"] = to_json(r.ctx);
  Json params;
  params["Q0"] = r.Q0;
  params["window_lo_exclusive"] = r.window_lo;
  params["window_hi_inclusive"] = r.window_hi;
  params["threshold"] = number(r.threshold);
  params["deviation"] = "two-sided";
  j["parameters"] = std::move(params);
  Json summary;
  summary["scanned"] = r.scanned;
  summary["exceptional"] = r.exceptional;
  summary["exceptional_one_sided"] = r.exceptional_one_sided;
  summary["exceptional_fraction"] = number(r.exceptional_fraction());
  summary["ratios"] = to_json(r.ratios);
  j["summary"] = std::move(summary);
  j["per_n"] = per_n_ref.empty() ? Json(nullptr) : Json(std::string(per_n_ref));
  return j;
}

void write_records_csv(std::ostream& out, std::span<const RepresentationRecord> records) {
  out << "n,rho,tuple_count\n";
  for (const auto& r : records) out << r.n << ',' << format12(r.rho) << ',' << r.tuple_count << '\n';
}

void write_per_n_csv(std::ostream& out, std::span<const PerNRecord> records) {
  out << "n,rho,tuple_count,sigma,jay,main_term,ratio,exceptional,exceptional_one_sided\n";
  for (const auto& r : records) {
    out << r.n << ',' << format12(r.rho) << ',' << r.tuple_count << ',' << format12(r.sigma) << ','
        << format12(r.jay) << ',' << format12(r.main_term) << ',' << format12(r.ratio) << ','
        << (r.exceptional ? 1 : 0) << ',' << (r.exceptional_one_sided ? 1 : 0) << '\n';
  }
}

std::string_view plot_kind_name(PlotKind kind) noexcept {
  switch (kind) {
    case PlotKind::arc_profile: return "arc_profile";
    case PlotKind::ratio_histogram: return "ratio_histogram";
    case PlotKind::partial_sums: return "partial_sums";
  }
  return "?";
}

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "arc_profile") return PlotKind::arc_profile;
  if (name == "ratio_histogram") return PlotKind::ratio_histogram;
  if (name == "partial_sums") return PlotKind::partial_sums;
  throw Error(Errc::unsupported_kind, "unknown plot kind '" + std::string(name) + "'");
}

ArcProfile arc_profile(const WeightedSequence& seq, int k, const ArcParams& params, std::size_t grid_size) {
  ArcProfile p;
  p.abs_f = abs_profile(seq, k, grid_size);
  p.alpha.resize(grid_size);
  p.region.resize(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    p.alpha[j] = static_cast<double>(j) / static_cast<double>(grid_size);
    p.region[j] = classify(p.alpha[j], params).region;
  }
  return p;
}

void emit_plot_data(std::ostream& out, PlotKind kind, const PlotInputs& in) {
  auto missing = [&] {
    throw Error(Errc::unsupported_kind, std::string(plot_kind_name(kind)) + " needs its input");
  };
  switch (kind) {
    case PlotKind::arc_profile: {
      if (in.profile == nullptr) missing();
      const auto& p = *in.profile;
      out << "alpha,abs_f,region\n";
      for (std::size_t j = 0; j < p.alpha.size(); ++j) {
        out << format12(p.alpha[j]) << ',' << format12(p.abs_f[j]) << ',' << region_name(p.region[j]) << '\n';
      }
      return;
    }
    case PlotKind::ratio_histogram: {
      if (in.scan == nullptr) missing();
      out << "bin_lo,bin_hi,count\n";
      std::map<long long, std::size_t> bins;
      for (const auto& r : in.scan->per_n) {
        if (std::isfinite(r.ratio)) ++bins[static_cast<long long>(std::floor(r.ratio * 10.0))];
      }
      if (bins.empty()) return;
      for (long long b = bins.begin()->first; b <= bins.rbegin()->first; ++b) {
        const auto it = bins.find(b);
        out << format12(b / 10.0) << ',' << format12((b + 1) / 10.0) << ','
            << (it == bins.end() ? 0 : it->second) << '\n';
      }
      return;
    }
    case PlotKind::partial_sums: {
      if (in.series == nullptr) missing();
      out << "q,A,cumulative\n";
      double cumulative = 0.0;
      for (const auto& [q, a] : in.series->partials) {
        cumulative += a;
        out << q << ',' << format12(a) << ',' << format12(cumulative) << '\n';
      }
      return;
    }
  }
}

}  // namespace wglab
