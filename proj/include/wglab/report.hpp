#pragma once

// JSON and CSV serialization. Every floating value is rounded to 12
// significant digits; NaN is written as null.

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wglab/arcs.hpp"
#include "wglab/experiment.hpp"
#include "wglab/expsums.hpp"
#include "wglab/representations.hpp"
#include "wglab/singular_series.hpp"

namespace wglab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

double round12(double v) noexcept;
std::string format12(double v);
Json number(double v);

Json to_json(const ProblemContext& ctx);
Json to_json(const Factorization& f);
Json to_json(const RationalPoint& p);
Json to_json(const Classification& c);
Json to_json(const ArcParams& p);
Json to_json(const GaussSumValue& g);
Json to_json(const SeriesTruncation& t, bool with_partials = false);
Json to_json(const MajorArcPrediction& p);
Json to_json(const RepresentationRecord& r);
Json to_json(const MomentValue& m);
Json to_json(const SupScanReport& r);
Json to_json(const DichotomyReport& r);
Json to_json(const QuadratureResult& q);
Json to_json(const MinorMomentReport& r);
Json to_json(const RatioSummary& r);
Json to_json(const PerNRecord& r);
/// Schema: context, parameters, summary, per_n (a reference to the CSV
/// detail stream, or null).
Json to_json(const ExceptionalReport& r, std::string_view per_n_ref = {});

void write_records_csv(std::ostream& out, std::span<const RepresentationRecord> records);
void write_per_n_csv(std::ostream& out, std::span<const PerNRecord> records);

enum class PlotKind { arc_profile, ratio_histogram, partial_sums };
std::string_view plot_kind_name(PlotKind kind) noexcept;
/// Throws Errc::unsupported_kind.
PlotKind parse_plot_kind(std::string_view name);

struct ArcProfile {
  std::vector<double> alpha;
  std::vector<double> abs_f;
  std::vector<Region> region;
};
ArcProfile arc_profile(const WeightedSequence& seq, int k, const ArcParams& params, std::size_t grid_size);

/// Whichever input the kind needs must be non-null, else
/// Errc::unsupported_kind.
struct PlotInputs {
  const ArcProfile* profile = nullptr;
  const ExceptionalReport* scan = nullptr;
  const SeriesTruncation* series = nullptr;
};

/// arc_profile: alpha,abs_f,region. ratio_histogram: bin_lo,bin_hi,count over
/// 0.1-wide bins of rho / (S J). partial_sums: q,A,cumulative.
void emit_plot_data(std::ostream& out, PlotKind kind, const PlotInputs& inputs);

}  // namespace wglab
