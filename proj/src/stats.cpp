#include "affnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

namespace affnet {

std::string_view to_string(FitModel m) noexcept { return m == FitModel::PowerLaw ? "power_law" : "binomial"; }

std::string_view to_string(BinRule r) noexcept {
  switch (r) {
    case BinRule::FreedmanDiaconis: return "freedman_diaconis";
    case BinRule::Sturges: return "sturges";
    case BinRule::SingleValue: return "single_value";
  }
  return "unknown";
}

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Centred second moments; two-pass for accuracy on exact data.
struct Moments {
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  double mx = 0.0;
  double my = 0.0;
};

Moments moments(std::span<const double> xs, std::span<const double> ys) {
  Moments m;
  m.mx = mean_of(xs);
  m.my = mean_of(ys);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - m.mx;
    const double dy = ys[i] - m.my;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

double two_sided_t(double t, double dof) {
  if (std::isinf(t)) return 0.0;
  boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace

LinearFit linear_regression(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(Errc::DegenerateInput, "regression inputs differ in length");
  if (xs.size() < kMinRegressionPoints)
    throw Error(Errc::InsufficientData, fmt::format("regression needs {} points, got {}", kMinRegressionPoints,
                                                    xs.size()));
  const Moments m = moments(xs, ys);
  if (m.sxx == 0.0) throw Error(Errc::DegenerateInput, "regression x values have no spread");

  LinearFit fit;
  fit.n = xs.size();
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.my - fit.slope * m.mx;
  if (m.syy == 0.0) {
    // Flat response: zero slope, nothing to correlate.
    fit.r = 0.0;
    fit.p_value = 1.0;
    return fit;
  }
  fit.r = std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
  const double dof = static_cast<double>(fit.n - 2);
  const double sse = std::max(0.0, m.syy - fit.slope * m.sxy);
  const double se = std::sqrt(sse / dof / m.sxx);
  if (se == 0.0) {
    fit.p_value = 0.0;
  } else {
    fit.p_value = two_sided_t(fit.slope / se, dof);
  }
  return fit;
}

double correlation_p_value(double r, std::size_t n) {
  if (n < 3 || std::isnan(r)) return 1.0;
  const double r2 = r * r;
  if (r2 >= 1.0) return 0.0;
  const double dof = static_cast<double>(n - 2);
  return two_sided_t(r * std::sqrt(dof / (1.0 - r2)), dof);
}

FitReport fit_power_law(std::span<const PmfPoint> distribution) {
  std::vector<double> xs, ys;
  std::set<double> distinct;
  for (const auto& pt : distribution) {
    if (!(pt.k > 0.0) || !(pt.p > 0.0)) continue;
    xs.push_back(std::log(pt.k));
    ys.push_back(std::log(pt.p));
    distinct.insert(pt.k);
  }
  if (distinct.size() < kMinRegressionPoints)
    throw Error(Errc::InsufficientData,
                fmt::format("power-law fit needs {} distinct positive values, got {}", kMinRegressionPoints,
                            distinct.size()));
  const LinearFit lin = linear_regression(xs, ys);
  FitReport r;
  r.model = FitModel::PowerLaw;
  r.exponent = -lin.slope;
  r.intercept = lin.intercept;
  r.pearson_r = lin.r;
  r.p_value = lin.p_value;
  r.n_points = xs.size();
  r.significant = r.p_value < kSignificanceLevel && r.n_points >= kMinRegressionPoints;
  return r;
}

FitReport fit_binomial_trials(std::span<const PmfPoint> distribution, std::size_t trials) {
  double mass = 0.0;
  double weighted = 0.0;
  for (const auto& pt : distribution) {
    if (pt.p < 0.0 || pt.k < 0.0) throw Error(Errc::InvalidArgument, "negative value in distribution");
    if (pt.k > static_cast<double>(trials))
      throw Error(Errc::InvalidArgument, fmt::format("value {} exceeds {} binomial trials", pt.k, trials));
    mass += pt.p;
    weighted += pt.k * pt.p;
  }
  if (distribution.empty() || mass <= 0.0) throw Error(Errc::InsufficientData, "empty distribution");

  FitReport r;
  r.model = FitModel::Binomial;
  r.trials = trials;
  r.mean = weighted / mass;
  r.p_hat = trials == 0 ? 0.0 : r.mean / static_cast<double>(trials);
  r.n_points = distribution.size();

  std::vector<double> empirical, model;
  empirical.reserve(distribution.size());
  model.reserve(distribution.size());
  const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), std::clamp(r.p_hat, 0.0, 1.0));
  for (const auto& pt : distribution) {
    empirical.push_back(pt.p / mass);
    model.push_back(boost::math::pdf(dist, pt.k));
  }
  try {
    r.pearson_r = pearson_correlation(empirical, model);
  } catch (const Error&) {
    r.pearson_r = std::numeric_limits<double>::quiet_NaN();
  }
  r.p_value = correlation_p_value(r.pearson_r, r.n_points);
  r.significant = r.p_value < kSignificanceLevel && r.n_points >= kMinRegressionPoints;
  return r;
}

FitReport fit_binomial(std::span<const PmfPoint> distribution, std::size_t n_nodes) {
  if (n_nodes == 0) throw Error(Errc::InvalidArgument, "binomial fit needs at least one node");
  return fit_binomial_trials(distribution, n_nodes - 1);
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(Errc::DegenerateInput, "correlation inputs differ in length");
  if (xs.size() < 2) throw Error(Errc::DegenerateInput, "correlation needs at least two points");
  const Moments m = moments(xs, ys);
  if (m.sxx == 0.0 || m.syy == 0.0) throw Error(Errc::DegenerateInput, "zero variance");
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(Errc::InsufficientData, "quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::size_t HistogramSpec::total() const noexcept {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::optional<std::size_t> HistogramSpec::bin_of(double v) const noexcept {
  if (edges.size() < 2 || v < edges.front() || v > edges.back()) return std::nullopt;
  auto it = std::upper_bound(edges.begin(), edges.end(), v);
  auto k = static_cast<std::size_t>(it - edges.begin());
  // upper_bound lands one past the bin; the closing edge belongs to the last bin.
  return std::min(k, counts.size()) - 1;
}

HistogramSpec freedman_diaconis_bins(std::span<const double> values) {
  if (values.size() < 2) throw Error(Errc::InsufficientData, "binning needs at least two values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double n = static_cast<double>(sorted.size());

  HistogramSpec h;
  std::size_t n_bins = 1;
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  if (hi == lo) {
    h.rule = BinRule::SingleValue;
    h.bin_width = 1.0;
    h.edges = {lo - 0.5, lo + 0.5};
  } else if (iqr > 0.0) {
    h.rule = BinRule::FreedmanDiaconis;
    h.bin_width = 2.0 * iqr / std::cbrt(n);
    n_bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / h.bin_width)));
  } else {
    h.rule = BinRule::Sturges;
    n_bins = static_cast<std::size_t>(std::ceil(std::log2(n))) + 1;
    h.bin_width = (hi - lo) / static_cast<double>(n_bins);
  }
  if (h.edges.empty()) {
    h.edges.reserve(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k) h.edges.push_back(lo + static_cast<double>(k) * h.bin_width);
    // The top edge must cover the maximum despite rounding in lo + k * width.
    h.edges.back() = std::max(h.edges.back(), hi);
  }
  h.counts.assign(h.edges.size() - 1, 0);
  for (double v : sorted) ++h.counts[*h.bin_of(v)];
  return h;
}

double significance_fraction(std::span<const std::optional<FitReport>> reports) noexcept {
  if (reports.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& r : reports)
    if (r && r->significant) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reports.size());
}

double significance_fraction(std::span<const FitReport> reports) noexcept {
  if (reports.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& r : reports)
    if (r.significant) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reports.size());
}

}  // namespace affnet
