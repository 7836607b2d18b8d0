#pragma once

// End-to-end comparison of the rank-3 and rank-4 forms of one network, and
// export of the result as JSON plus plot-ready CSV tables.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "affnet/core_model.hpp"
#include "affnet/generators.hpp"
#include "affnet/metrics.hpp"
#include "affnet/stats.hpp"

namespace affnet {

inline constexpr int kReportSchemaVersion = 1;

std::string_view library_version() noexcept;

struct ComparisonOptions {
  DegreeMode degree_mode = DegreeMode::Out;
  DistributionOptions power_law_sample = kPowerLawSample;
  DistributionOptions binomial_sample = kBinomialSample;
};

/// A fit, or the reason there is none.
struct FitOutcome {
  std::optional<FitReport> report;
  /// Error code name when `report` is empty, e.g. "InsufficientData".
  std::string failure;
  std::string message;

  bool significant() const noexcept { return report && report->significant; }
};

struct SliceRecord {
  Slice slice = Slice::layer(LayerId{0});
  std::string label;
  /// Nodes the distributions are taken over.
  std::size_t population = 0;
  /// Mean raw degree over the population, zeros included.
  double mean_degree = 0.0;
  /// Power-law sample (zeros excluded by default).
  DegreeDistribution distribution;
  /// Binomial sample (zeros included by default).
  DegreeDistribution binomial_distribution;
  FitOutcome power_law;
  FitOutcome binomial;

  /// At least kMinRegressionPoints distinct positive degrees.
  bool admits_fit() const noexcept;
};

/// A distribution of real values binned by Freedman-Diaconis, with a power
/// law fitted to (bin centre, frequency) over the non-empty bins.
struct BinnedDistribution {
  std::vector<double> values;
  std::optional<HistogramSpec> histogram;
  FitOutcome power_law;
};

struct NodeActivityReport {
  /// B_i per node.
  std::vector<double> activity;
  /// Distribution of active-slice counts over all nodes, zeros included.
  DegreeDistribution counts;
  /// Power law over nodes active in at least one slice.
  FitOutcome power_law;
  /// Binomial with one trial per slice.
  FitOutcome binomial;
};

struct RepresentationReport {
  Representation representation = Representation::Rank3;
  std::size_t m_bar = 0;
  std::vector<SliceRecord> slices;
  double significance_fraction = 0.0;
  double admission_fraction = 0.0;
  double mean_slice_mean_degree = 0.0;
  /// Exponents of the significant power-law fits.
  std::vector<double> exponents;
  std::optional<HistogramSpec> exponent_histogram;
  NodeActivityReport node_activity;
  ClosenessTable closeness;
  std::vector<double> centralities;
  /// Q(x, y) over unordered slice pairs x < y, nonzero values only.
  BinnedDistribution pair_closeness;
  /// Centralities, nonzero values only.
  BinnedDistribution centrality;
  DensityReport density;
};

struct RunMetadata {
  std::string version{library_version()};
  std::optional<std::uint64_t> seed;
  std::string prng;
  /// Free-form description of the input (generator config or file names).
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
};

struct AnalysisReport {
  RepresentationReport rank3;
  RepresentationReport rank4;
  RunMetadata metadata;
  std::size_t n_nodes = 0;
  std::size_t n_layers = 0;
};

RepresentationReport analyze(const SlicedView& net, const DensityReport& density,
                             const ComparisonOptions& options = {});

/// Both representations must describe the same system.
AnalysisReport run_comparison(const Rank4Network& rank4, const Rank3Network& rank3,
                              const ComparisonOptions& options = {}, RunMetadata metadata = {});

nlohmann::ordered_json report_json(const AnalysisReport& report);
nlohmann::ordered_json representation_json(const RepresentationReport& report);

/// File names written by export_report, the JSON summary first.
std::vector<std::string> report_files();

/// Writes report.json and one CSV per table into `out_dir`, creating it if
/// needed. Output is a pure function of the report. Throws IoError.
void export_report(const AnalysisReport& report, const std::filesystem::path& out_dir);

}  // namespace affnet
