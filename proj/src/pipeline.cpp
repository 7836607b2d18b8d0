#include "affnet/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace affnet {

#ifndef AFFNET_VERSION
#define AFFNET_VERSION "0.0.0"
#endif

std::string_view library_version() noexcept { return AFFNET_VERSION; }

bool SliceRecord::admits_fit() const noexcept { return distribution.distinct_values() >= kMinRegressionPoints; }

namespace {

template <typename F>
FitOutcome attempt(F&& fit) {
  FitOutcome out;
  try {
    out.report = fit();
  } catch (const Error& e) {
    out.failure = std::string(to_string(e.code()));
    out.message = e.what();
  }
  return out;
}

FitOutcome missing(std::string message) {
  FitOutcome out;
  out.failure = std::string(to_string(Errc::InsufficientData));
  out.message = std::move(message);
  return out;
}

BinnedDistribution binned(std::vector<double> values) {
  BinnedDistribution b;
  b.values = std::move(values);
  if (b.values.size() < 2) {
    b.power_law = missing(fmt::format("{} values cannot be binned", b.values.size()));
    return b;
  }
  b.histogram = freedman_diaconis_bins(b.values);
  const HistogramSpec& h = *b.histogram;
  const double total = static_cast<double>(h.total());
  std::vector<PmfPoint> pts;
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    if (h.counts[k] > 0)
      pts.push_back({0.5 * (h.edges[k] + h.edges[k + 1]), static_cast<double>(h.counts[k]) / total});
  b.power_law = attempt([&] { return fit_power_law(pts); });
  return b;
}

}  // namespace

RepresentationReport analyze(const SlicedView& net, const DensityReport& density, const ComparisonOptions& options) {
  RepresentationReport rep;
  rep.representation = net.representation();
  rep.m_bar = net.m_bar();
  rep.density = density;

  std::vector<std::optional<FitReport>> fits;
  std::size_t admitted = 0;
  double degree_sum = 0.0;
  std::size_t populated = 0;
  for (const Slice& s : net.slices()) {
    SliceRecord rec;
    rec.slice = s;
    rec.label = to_string(s, net.layer_labels());
    const DegreeVector dv = slice_degrees(net, s, options.degree_mode);
    rec.distribution = degree_distribution(dv, options.power_law_sample);
    rec.binomial_distribution = degree_distribution(dv, options.binomial_sample);

    const bool by_members = options.binomial_sample.population == Population::Members && dv.members;
    rec.population = by_members ? dv.members->size() : dv.raw.size();
    if (rec.population > 0) {
      double sum = 0.0;
      if (by_members) {
        for (NodeId i : *dv.members) sum += dv.raw[index(i)];
      } else {
        for (auto k : dv.raw) sum += k;
      }
      rec.mean_degree = sum / static_cast<double>(rec.population);
      degree_sum += rec.mean_degree;
      ++populated;
    }

    const auto pl_pmf = rec.distribution.pmf();
    rec.power_law = attempt([&] { return fit_power_law(pl_pmf); });
    const auto bin_pmf = rec.binomial_distribution.pmf();
    rec.binomial = attempt([&] { return fit_binomial(bin_pmf, net.n_nodes()); });

    if (rec.admits_fit()) ++admitted;
    if (rec.power_law.significant()) rep.exponents.push_back(rec.power_law.report->exponent);
    fits.push_back(rec.power_law.report);
    rep.slices.push_back(std::move(rec));
  }
  rep.significance_fraction = significance_fraction(fits);
  if (rep.m_bar > 0) rep.admission_fraction = static_cast<double>(admitted) / static_cast<double>(rep.m_bar);
  if (populated > 0) rep.mean_slice_mean_degree = degree_sum / static_cast<double>(populated);
  if (rep.exponents.size() >= 2) rep.exponent_histogram = freedman_diaconis_bins(rep.exponents);

  // Node activity.
  const ActivityMatrix act = activity_matrix(net, options.degree_mode);
  NodeActivityReport& na = rep.node_activity;
  na.activity = node_activity(act);
  std::vector<std::uint32_t> counts(act.n_nodes());
  for (std::uint32_t i = 0; i < act.n_nodes(); ++i) counts[i] = act.node_count(NodeId{i});
  const DegreeVector count_vec(std::move(counts));
  na.counts = degree_distribution(count_vec, {true, Population::AllNodes});
  const auto active_pmf = degree_distribution(count_vec, {false, Population::AllNodes}).pmf();
  na.power_law = attempt([&] { return fit_power_law(active_pmf); });
  const auto all_pmf = na.counts.pmf();
  na.binomial = attempt([&] { return fit_binomial_trials(all_pmf, act.m_bar()); });

  // Closeness.
  rep.closeness = closeness_table(act);
  rep.centralities = rep.closeness.centralities();
  std::vector<double> pairs;
  for (std::size_t x = 0; x < rep.m_bar; ++x)
    for (std::size_t y = x + 1; y < rep.m_bar; ++y)
      if (const double q = rep.closeness.at(x, y); q > 0.0) pairs.push_back(q);
  rep.pair_closeness = binned(std::move(pairs));
  std::vector<double> cents;
  for (double c : rep.centralities)
    if (c > 0.0) cents.push_back(c);
  rep.centrality = binned(std::move(cents));
  return rep;
}

AnalysisReport run_comparison(const Rank4Network& rank4, const Rank3Network& rank3, const ComparisonOptions& options,
                              RunMetadata metadata) {
  if (rank4.n_nodes() != rank3.n_nodes() || rank4.n_layers() != rank3.n_layers())
    throw Error(Errc::InvalidArgument, "representations differ in node or layer count");
  AnalysisReport report;
  report.n_nodes = rank4.n_nodes();
  report.n_layers = rank4.n_layers();
  report.metadata = std::move(metadata);
  // Member populations for rank-3 slices come from the rank-4 map when the
  // rank-3 form carries none.
  if (rank3.affiliations()) {
    report.rank3 = analyze(rank3, density_report(rank3), options);
  } else {
    const Rank3Network with_map = rank3.with_affiliations(rank4.affiliations());
    report.rank3 = analyze(with_map, density_report(with_map), options);
  }
  report.rank4 = analyze(rank4, density_report(rank4), options);
  return report;
}

// ---------------------------------------------------------------------------
// Export

namespace {

using json = nlohmann::ordered_json;

json to_json(const FitOutcome& f) {
  json j = json::object();
  if (!f.report) {
    j["status"] = f.failure;
    j["message"] = f.message;
    return j;
  }
  const FitReport& r = *f.report;
  j["status"] = "ok";
  j["model"] = std::string(to_string(r.model));
  if (r.model == FitModel::PowerLaw) {
    j["exponent"] = r.exponent;
    j["intercept"] = r.intercept;
  } else {
    j["p_hat"] = r.p_hat;
    j["mean"] = r.mean;
    j["trials"] = r.trials;
  }
  j["pearson_r"] = r.pearson_r;
  j["p_value"] = r.p_value;
  j["significant"] = r.significant;
  j["n_points"] = r.n_points;
  return j;
}

json to_json(const std::optional<HistogramSpec>& h) {
  if (!h) return nullptr;
  return json{{"rule", std::string(to_string(h->rule))},
              {"bin_width", h->bin_width},
              {"edges", h->edges},
              {"counts", h->counts}};
}

json to_json(const BinnedDistribution& b) {
  return json{{"n_values", b.values.size()}, {"histogram", to_json(b.histogram)}, {"power_law", to_json(b.power_law)}};
}

json to_json(const DensityReport& d) {
  return json{{"links", d.links},
              {"stored_cells", d.stored_cells},
              {"total_cells", d.total_cells},
              {"fraction", d.fraction},
              {"stored_fraction", d.stored_fraction}};
}

json to_json(const RepresentationReport& r) {
  json slices = json::array();
  for (const SliceRecord& s : r.slices) {
    slices.push_back(json{{"slice", s.label},
                          {"source_layer", index(s.slice.source_layer())},
                          {"target_layer", index(s.slice.target_layer())},
                          {"population", s.population},
                          {"mean_degree", s.mean_degree},
                          {"distinct_positive_degrees", s.distribution.distinct_values()},
                          {"admits_fit", s.admits_fit()},
                          {"power_law", to_json(s.power_law)},
                          {"binomial", to_json(s.binomial)}});
  }
  return json{{"representation", std::string(to_string(r.representation))},
              {"m_bar", r.m_bar},
              {"significance_fraction", r.significance_fraction},
              {"admission_fraction", r.admission_fraction},
              {"mean_slice_mean_degree", r.mean_slice_mean_degree},
              {"slices", std::move(slices)},
              {"exponents", r.exponents},
              {"exponent_histogram", to_json(r.exponent_histogram)},
              {"node_activity",
               {{"mean", r.node_activity.counts.mean() / (r.m_bar ? static_cast<double>(r.m_bar) : 1.0)},
                {"power_law", to_json(r.node_activity.power_law)},
                {"binomial", to_json(r.node_activity.binomial)}}},
              {"closeness",
               {{"centralities", r.centralities},
                {"pair_distribution", to_json(r.pair_closeness)},
                {"centrality_distribution", to_json(r.centrality)}}},
              {"density", to_json(r.density)}};
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string_view rep_name(const RepresentationReport& r) { return to_string(r.representation); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, fmt::format("cannot open '{}' for writing", path.string()));
  out << content;
  out.flush();
  if (!out) throw Error(Errc::IoError, fmt::format("write to '{}' failed", path.string()));
}

void histogram_rows(std::string& out, std::string_view prefix, const std::optional<HistogramSpec>& h) {
  if (!h) return;
  const double total = static_cast<double>(h->total());
  for (std::size_t k = 0; k < h->counts.size(); ++k)
    out += fmt::format("{},{},{},{},{},{}\n", prefix, k, h->edges[k], h->edges[k + 1], h->counts[k],
                       static_cast<double>(h->counts[k]) / total);
}

}  // namespace

json representation_json(const RepresentationReport& report) { return to_json(report); }

json report_json(const AnalysisReport& report) {
  const RunMetadata& m = report.metadata;
  json meta{{"tool", "affnet"}, {"version", m.version}};
  meta["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  meta["prng"] = m.prng.empty() ? json(nullptr) : json(m.prng);
  meta["config"] = m.config;
  return json{{"schema_version", kReportSchemaVersion},
              {"metadata", std::move(meta)},
              {"n_nodes", report.n_nodes},
              {"n_layers", report.n_layers},
              {"representations", json::array({to_json(report.rank3), to_json(report.rank4)})}};
}

std::vector<std::string> report_files() {
  return {"report.json",           "slice_degree_distributions.csv", "exponent_histogram.csv", "node_activity.csv",
          "closeness_matrix.csv", "closeness_distributions.csv",    "density.csv"};
}

void export_report(const AnalysisReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::IoError, fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));

  const RepresentationReport* reps[] = {&report.rank3, &report.rank4};

  write_file(out_dir / "report.json", report_json(report).dump(2) + "\n");

  std::string degrees = "representation,slice,sample,k,count,probability\n";
  for (const auto* r : reps) {
    for (const SliceRecord& s : r->slices) {
      const std::string label = csv_field(s.label);
      for (const DegreeBin& b : s.distribution.bins)
        degrees += fmt::format("{},{},power_law,{},{},{}\n", rep_name(*r), label, b.k, b.count, b.probability);
      for (const DegreeBin& b : s.binomial_distribution.bins)
        degrees += fmt::format("{},{},binomial,{},{},{}\n", rep_name(*r), label, b.k, b.count, b.probability);
    }
  }
  write_file(out_dir / "slice_degree_distributions.csv", degrees);

  std::string exps = "representation,bin,left,right,count,frequency\n";
  for (const auto* r : reps) histogram_rows(exps, rep_name(*r), r->exponent_histogram);
  write_file(out_dir / "exponent_histogram.csv", exps);

  std::string activity = "representation,active_slices,activity,count,probability\n";
  for (const auto* r : reps) {
    for (const DegreeBin& b : r->node_activity.counts.bins) {
      const double a = r->m_bar ? static_cast<double>(b.k) / static_cast<double>(r->m_bar) : 0.0;
      activity += fmt::format("{},{},{},{},{}\n", rep_name(*r), b.k, a, b.count, b.probability);
    }
  }
  write_file(out_dir / "node_activity.csv", activity);

  std::string matrix = "representation,slice_x,slice_y,q\n";
  for (const auto* r : reps) {
    for (std::size_t x = 0; x < r->m_bar; ++x) {
      const std::string lx = csv_field(r->slices[x].label);
      for (std::size_t y = 0; y < r->m_bar; ++y)
        matrix += fmt::format("{},{},{},{}\n", rep_name(*r), lx, csv_field(r->slices[y].label),
                              r->closeness.at(x, y));
    }
  }
  write_file(out_dir / "closeness_matrix.csv", matrix);

  std::string dists = "representation,kind,bin,left,right,count,frequency\n";
  for (const auto* r : reps) {
    histogram_rows(dists, fmt::format("{},pair", rep_name(*r)), r->pair_closeness.histogram);
    histogram_rows(dists, fmt::format("{},centrality", rep_name(*r)), r->centrality.histogram);
  }
  write_file(out_dir / "closeness_distributions.csv", dists);

  std::string density = "representation,links,stored_cells,total_cells,fraction,stored_fraction\n";
  for (const auto* r : reps)
    density += fmt::format("{},{},{},{},{},{}\n", rep_name(*r), r->density.links, r->density.stored_cells,
                           r->density.total_cells, r->density.fraction, r->density.stored_fraction);
  write_file(out_dir / "density.csv", density);
}

}  // namespace affnet
