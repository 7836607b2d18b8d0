// affnet command-line front end.
//
// Exit status: 0 on success, 1 on usage errors, 2 on data errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "affnet/generators.hpp"
#include "affnet/io.hpp"
#include "affnet/pipeline.hpp"
#include "affnet/random.hpp"
#include "affnet/transforms.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

fs::path default_out_dir() {
  if (const char* env = std::getenv("AFFNET_OUT_DIR"); env && *env) return env;
  return "affnet-out";
}

// Applies n=, p=, m= (or the long names) to an ER config.
void apply_param(affnet::ErConfig& cfg, const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (key == "n" || key == "n_nodes") {
      cfg.n_nodes = std::stoull(value, &used);
    } else if (key == "p" || key == "link_probability") {
      cfg.link_probability = std::stod(value, &used);
    } else if (key == "m" || key == "n_affiliations") {
      cfg.n_affiliations = std::stoull(value, &used);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value, &used);
    } else {
      throw CLI::ValidationError("--generate", fmt::format("unknown parameter '{}'", key));
    }
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--generate", fmt::format("invalid value '{}' for '{}'", value, key));
  }
}

void apply_config_file(affnet::ErConfig& cfg, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw affnet::Error(affnet::Errc::IoError, fmt::format("cannot open config '{}'", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw affnet::Error(affnet::Errc::ParseError, fmt::format("{}: {}", path.string(), e.what()));
  }
  if (!j.is_object()) throw affnet::Error(affnet::Errc::ParseError, fmt::format("{}: expected an object", path.string()));
  for (const auto& [key, value] : j.items()) apply_param(cfg, key, value.is_string() ? value.get<std::string>() : value.dump());
}

json config_json(const affnet::ErConfig& cfg) {
  return json{{"generator", "er_affiliation"},
              {"n_nodes", cfg.n_nodes},
              {"link_probability", cfg.link_probability},
              {"n_affiliations", cfg.n_affiliations}};
}

struct GeneratorArgs {
  std::vector<std::string> params;
  std::optional<fs::path> config;
  std::optional<std::uint64_t> seed;

  affnet::ErConfig build() const {
    affnet::ErConfig cfg;
    if (config) apply_config_file(cfg, *config);
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError("--generate", fmt::format("expected key=value, got '{}'", kv));
      apply_param(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) cfg.seed = *seed;
    return cfg;
  }
};

void print_ingest_stats(const affnet::IngestResult& r) {
  const auto& s = r.stats;
  fmt::print("edge rows          {}\n", s.edge_rows);
  fmt::print("links              {}\n", s.links);
  fmt::print("affiliations       {}\n", s.affiliations);
  fmt::print("affiliated nodes   {}\n", s.affiliated_nodes);
  fmt::print("nodes on edges     {}\n", s.nodes_on_edges);
  fmt::print("duplicate rows     {}\n", s.duplicate_rows);
  fmt::print("self-loops skipped {}\n", s.self_loops_skipped);
  fmt::print("rows dropped       {} ({} unaffiliated labels)\n", s.rows_missing_affiliation, s.unaffiliated_labels);
  for (const auto& w : r.warnings) fmt::print(stderr, "warning: {}\n", w);
}

void print_summary(const json& report) {
  const auto& meta = report.at("metadata");
  fmt::print("affnet report (schema {}, version {})\n", report.at("schema_version").get<int>(),
             meta.at("version").get<std::string>());
  if (!meta.at("seed").is_null()) fmt::print("seed {}\n", meta.at("seed").get<std::uint64_t>());
  fmt::print("N = {}, M = {}\n", report.at("n_nodes").get<std::size_t>(), report.at("n_layers").get<std::size_t>());
  for (const auto& r : report.at("representations")) {
    fmt::print("{}: {} slices, significant {}, admitting a fit {}, mean slice degree {}, density {}\n",
               r.at("representation").get<std::string>(), r.at("m_bar").get<std::size_t>(),
               r.at("significance_fraction").get<double>(), r.at("admission_fraction").get<double>(),
               r.at("mean_slice_mean_degree").get<double>(), r.at("density").at("fraction").get<double>());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-affiliation multilayer network analysis", "affnet"};
  app.set_version_flag("--version", std::string(affnet::library_version()));
  app.require_subcommand(1);

  fs::path out_dir = default_out_dir();
  std::optional<std::uint64_t> seed;
  bool directed = false;
  bool strict = true;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory (default $AFFNET_OUT_DIR or ./affnet-out)");
  };
  auto add_ingest_flags = [&](CLI::App* sub) {
    sub->add_flag("--directed", directed, "Treat edge rows as directed");
    sub->add_flag("--strict,!--lenient", strict,
                  "Strict: unaffiliated endpoints and self-loops are errors (default). Lenient: drop and count them");
  };

  // generate
  GeneratorArgs gen;
  auto* generate = app.add_subcommand("generate", "Write an Erdos-Renyi affiliation network");
  generate->add_option("params", gen.params, "n=<nodes> p=<probability> m=<affiliations>");
  generate->add_option("--config", gen.config, "JSON config with n_nodes, link_probability, n_affiliations, seed")
      ->check(CLI::ExistingFile);
  generate->add_option("--seed", seed, "PRNG seed");
  add_out(generate);

  // ingest
  fs::path edges, affiliations;
  auto* ingest = app.add_subcommand("ingest", "Build both network forms from edge and affiliation files");
  ingest->add_option("--edges", edges, "Edge list (source, target)")->required()->check(CLI::ExistingFile);
  ingest->add_option("--affiliations", affiliations, "Affiliation list (node, affiliation)")
      ->required()
      ->check(CLI::ExistingFile);
  add_ingest_flags(ingest);
  add_out(ingest);

  // transform
  fs::path input;
  std::string to_rank;
  std::optional<fs::path> aff_override;
  bool infer_only = false;
  auto* transform = app.add_subcommand("transform", "Convert a saved network between rank-3 and rank-4");
  transform->add_option("--input", input, "Network stem (reads <stem>.edges.tsv and <stem>.affiliations.tsv)")
      ->required();
  transform->add_option("--to", to_rank, "Target form")->check(CLI::IsMember({"rank3", "rank4"}));
  transform->add_option("--affiliations", aff_override, "Affiliation file used to orient rank-4 links")
      ->check(CLI::ExistingFile);
  transform->add_flag("--infer", infer_only, "Write the affiliations inferred from a rank-3 network");
  add_out(transform);

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Compute slice metrics for one saved network");
  metrics->add_option("--input", input, "Network stem")->required();
  add_out(metrics);

  // compare
  GeneratorArgs cmp_gen;
  std::optional<fs::path> cmp_input;
  auto* compare = app.add_subcommand("compare", "Compare rank-3 and rank-4 forms and export the report");
  auto* gen_opt = compare->add_option("--generate", cmp_gen.params, "Generate: n=<nodes> p=<probability> m=<affiliations>")
                      ->expected(0, -1)
                      ->allow_extra_args();
  auto* cfg_opt = compare->add_option("--config", cmp_gen.config, "JSON generator config")->check(CLI::ExistingFile);
  auto* in_opt = compare->add_option("--input", cmp_input, "Saved network stem");
  auto* edges_opt = compare->add_option("--edges", edges, "Raw edge list")->check(CLI::ExistingFile);
  auto* aff_opt = compare->add_option("--affiliations", affiliations, "Raw affiliation list")->check(CLI::ExistingFile);
  edges_opt->needs(aff_opt);
  aff_opt->needs(edges_opt);
  in_opt->excludes(gen_opt)->excludes(edges_opt)->excludes(cfg_opt);
  edges_opt->excludes(gen_opt)->excludes(cfg_opt);
  compare->add_option("--seed", seed, "PRNG seed");
  add_ingest_flags(compare);
  add_out(compare);

  // report
  fs::path report_dir;
  auto* report = app.add_subcommand("report", "Summarise an exported report");
  report->add_option("--input", report_dir, "Directory holding report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "affnet: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  const affnet::IngestOptions ingest_opts{directed ? affnet::Directedness::Directed : affnet::Directedness::Undirected,
                                          strict};
  try {
    if (*generate) {
      gen.seed = seed;
      const affnet::ErConfig cfg = gen.build();
      const auto net = affnet::generate_er_affiliation(cfg);
      affnet::write_network(net.network, out_dir / "network");
      fmt::print("wrote {} links over {} nodes and {} affiliations to {}\n", net.network.links().size(), cfg.n_nodes,
                 cfg.n_affiliations, (out_dir / "network").string());
    } else if (*ingest) {
      const auto r = affnet::ingest_files(edges, affiliations, ingest_opts);
      affnet::write_network(r.rank4, out_dir / "rank4");
      affnet::write_network(r.rank3, out_dir / "rank3");
      print_ingest_stats(r);
    } else if (*transform) {
      if (to_rank.empty() && !infer_only) throw CLI::RequiredError("--to or --infer");
      const affnet::StoredNetwork net = affnet::read_network(input);
      if (infer_only) {
        const auto* a3 = std::get_if<affnet::Rank3Network>(&net);
        if (!a3) throw affnet::Error(affnet::Errc::InvalidArgument, "--infer needs a rank-3 network");
        const auto inf = affnet::infer_affiliations(*a3);
        affnet::write_affiliations(inf.affiliations, a3->node_labels(), a3->layer_labels(),
                                   out_dir / "inferred.affiliations.tsv");
        fmt::print("{} of {} nodes indeterminate\n", inf.indeterminate_nodes.size(), a3->n_nodes());
      }
      if (to_rank == "rank4") {
        if (const auto* a3 = std::get_if<affnet::Rank3Network>(&net)) {
          std::optional<affnet::AffiliationMap> aff;
          if (aff_override) aff = affnet::read_affiliations(*aff_override, a3->node_labels(), a3->layer_labels());
          affnet::write_network(affnet::rank3_to_rank4(*a3, aff), out_dir / "rank4");
        } else {
          affnet::write_network(std::get<affnet::Rank4Network>(net), out_dir / "rank4");
        }
      } else if (to_rank == "rank3") {
        if (const auto* a4 = std::get_if<affnet::Rank4Network>(&net)) {
          affnet::write_network(affnet::rank4_to_rank3(*a4), out_dir / "rank3");
        } else {
          affnet::write_network(std::get<affnet::Rank3Network>(net), out_dir / "rank3");
        }
      }
    } else if (*metrics) {
      const affnet::StoredNetwork net = affnet::read_network(input);
      const json j = std::visit(
          [](const auto& n) {
            return affnet::representation_json(affnet::analyze(n, affnet::density_report(n)));
          },
          net);
      fs::create_directories(out_dir);
      std::ofstream out(out_dir / "metrics.json", std::ios::binary);
      out << j.dump(2) << '\n';
      if (!out) throw affnet::Error(affnet::Errc::IoError, "cannot write metrics.json");
    } else if (*compare) {
      affnet::RunMetadata meta;
      std::optional<affnet::Rank4Network> a4;
      std::optional<affnet::Rank3Network> a3;
      if (cmp_input) {
        meta.config = json{{"input", cmp_input->string()}};
        const affnet::StoredNetwork net = affnet::read_network(*cmp_input);
        if (const auto* n4 = std::get_if<affnet::Rank4Network>(&net)) {
          a4 = *n4;
          a3 = affnet::rank4_to_rank3(*n4);
        } else {
          a3 = std::get<affnet::Rank3Network>(net);
          a4 = affnet::rank3_to_rank4(*a3);
        }
      } else if (*edges_opt) {
        meta.config = json{{"edges", edges.string()},
                           {"affiliations", affiliations.string()},
                           {"directed", directed},
                           {"strict", strict}};
        auto r = affnet::ingest_files(edges, affiliations, ingest_opts);
        for (const auto& w : r.warnings) fmt::print(stderr, "warning: {}\n", w);
        a4 = std::move(r.rank4);
        a3 = std::move(r.rank3);
      } else if (*gen_opt || *cfg_opt) {
        cmp_gen.seed = seed;
        const affnet::ErConfig cfg = cmp_gen.build();
        meta.config = config_json(cfg);
        meta.seed = cfg.seed;
        meta.prng = affnet::SplitMix64::kAlgorithm;
        auto g = affnet::generate_er_affiliation(cfg);
        a3 = affnet::rank4_to_rank3(g.network);
        a4 = std::move(g.network);
      } else {
        throw CLI::RequiredError("one of --generate, --config, --input, --edges");
      }
      const auto rep = affnet::run_comparison(*a4, *a3, {}, std::move(meta));
      affnet::export_report(rep, out_dir);
      print_summary(affnet::report_json(rep));
    } else if (*report) {
      const fs::path path = report_dir / "report.json";
      std::ifstream in(path);
      if (!in) throw affnet::Error(affnet::Errc::IoError, fmt::format("cannot open '{}'", path.string()));
      try {
        print_summary(json::parse(in));
      } catch (const json::exception& e) {
        throw affnet::Error(affnet::Errc::ParseError, fmt::format("{}: {}", path.string(), e.what()));
      }
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "affnet: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const affnet::Error& e) {
    std::cerr << "affnet: error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "affnet: error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
