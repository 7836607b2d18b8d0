#pragma once

// Distribution fitting and binning.
//
// Power laws are fitted by ordinary least squares on (log k, log P) with a
// two-sided t-test on the slope; the binomial model is fitted by the method
// of moments and scored by the Pearson correlation between the empirical and
// model pmf. Histogram bins follow the Freedman-Diaconis rule with type-7
// (linear interpolation) quartiles.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "affnet/error.hpp"

namespace affnet {

inline constexpr double kSignificanceLevel = 0.05;
/// Fewer distinct x values than this and no regression is attempted.
inline constexpr std::size_t kMinRegressionPoints = 3;

/// One point of an empirical distribution: value k with probability p.
struct PmfPoint {
  double k;
  double p;
};

enum class FitModel { PowerLaw, Binomial };

std::string_view to_string(FitModel m) noexcept;

struct FitReport {
  FitModel model = FitModel::PowerLaw;
  /// gamma of P(k) ~ k^-gamma; the magnitude of the negative log-log slope.
  double exponent = 0.0;
  /// log-log intercept (PowerLaw) or 0.
  double intercept = 0.0;
  /// Method-of-moments success probability (Binomial).
  double p_hat = 0.0;
  /// Mean of the fitted distribution (Binomial).
  double mean = 0.0;
  /// Number of Bernoulli trials of the binomial model.
  std::size_t trials = 0;
  /// NaN when the correlation is undefined (fewer than 2 points or no spread).
  double pearson_r = 0.0;
  double p_value = 1.0;
  bool significant = false;
  std::size_t n_points = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// OLS of ys on xs. p_value is the two-sided Student t-test of the slope with
/// n - 2 degrees of freedom. Requires n >= 3 and spread in xs.
LinearFit linear_regression(std::span<const double> xs, std::span<const double> ys);

/// Two-sided p-value for a correlation r over n points (t-test, n - 2 dof).
double correlation_p_value(double r, std::size_t n);

/// Points with k <= 0 or p <= 0 are dropped before the log transform. Throws
/// InsufficientData with fewer than three distinct k values left.
FitReport fit_power_law(std::span<const PmfPoint> distribution);

/// Binomial(n_nodes - 1, p_hat) fit. Throws InsufficientData when the
/// distribution is empty or carries no mass.
FitReport fit_binomial(std::span<const PmfPoint> distribution, std::size_t n_nodes);
FitReport fit_binomial_trials(std::span<const PmfPoint> distribution, std::size_t trials);

/// Product-moment correlation. Throws DegenerateInput for mismatched or short
/// inputs, or zero variance on either side.
double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

/// Type-7 quantile of already sorted values, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

enum class BinRule { FreedmanDiaconis, Sturges, SingleValue };

std::string_view to_string(BinRule r) noexcept;

struct HistogramSpec {
  double bin_width = 0.0;
  /// counts.size() + 1 strictly increasing edges. Bins are [e_k, e_k+1) except
  /// the last, which is closed.
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  BinRule rule = BinRule::FreedmanDiaconis;

  std::size_t total() const noexcept;
  /// Bin holding `v`, or nullopt when outside the edges.
  std::optional<std::size_t> bin_of(double v) const noexcept;
};

/// Width 2 * IQR * n^(-1/3). An IQR of zero falls back to Sturges' bin count
/// over the range; identical values get a single unit-width bin. Throws
/// InsufficientData for fewer than two values.
HistogramSpec freedman_diaconis_bins(std::span<const double> values);

/// Share of reports with significant == true; an absent report (a slice
/// without enough data) counts as not significant. Empty input gives 0.
double significance_fraction(std::span<const std::optional<FitReport>> reports) noexcept;
double significance_fraction(std::span<const FitReport> reports) noexcept;

}  // namespace affnet
