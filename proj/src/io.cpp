#include "affnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <unordered_set>

#include <fmt/format.h>

#include "affnet/transforms.hpp"

namespace affnet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    std::string out;
    s = s.substr(1, s.size() - 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
      out.push_back(s[i]);
      if (s[i] == '"' && i + 1 < s.size() && s[i + 1] == '"') ++i;
    }
    return out;
  }
  return std::string(s);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Delimited text reader: skips blank and '#' lines, detects the delimiter
// from the first data line and optionally drops a header row.
class DelimitedReader {
 public:
  DelimitedReader(std::istream& in, std::string name, HeaderMode header)
      : in_(in), name_(std::move(name)), header_(header) {}

  std::optional<Row> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const std::string_view t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      if (!delimiter_) {
        if (line.find('\t') != std::string::npos) delimiter_ = '\t';
        else if (line.find(',') != std::string::npos) delimiter_ = ',';
        else
          throw Error(Errc::ParseError,
                      fmt::format("{}:{}: expected tab or comma delimited columns", name_, line_no_));
      }
      Row row{line_no_, split(line)};
      if (first_data_) {
        first_data_ = false;
        if (header_ == HeaderMode::Present || (header_ == HeaderMode::Auto && looks_like_header(row))) continue;
      }
      return row;
    }
    if (in_.bad()) throw Error(Errc::IoError, fmt::format("{}: read failure", name_));
    return std::nullopt;
  }

  const std::string& name() const { return name_; }

 private:
  std::vector<std::string> split(const std::string& line) const {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(*delimiter_, start);
      const std::string_view field(line.data() + start, (pos == std::string::npos ? line.size() : pos) - start);
      out.push_back(unquote(trim(field)));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return out;
  }

  static bool looks_like_header(const Row& row) {
    static const std::set<std::string> names = {
        "source", "target", "src",   "dst",        "from",   "to",          "node",     "node_label",
        "label",  "author", "coauthor", "affiliation", "affiliation_label", "layer", "department",
        "group",  "source_label", "target_label", "source_layer", "target_layer"};
    return row.fields.size() >= 2 && names.count(lower(row.fields[0])) && names.count(lower(row.fields[1]));
  }

  std::istream& in_;
  std::string name_;
  HeaderMode header_;
  std::optional<char> delimiter_;
  std::size_t line_no_ = 0;
  bool first_data_ = true;
};

const std::string& field(const Row& row, std::size_t k, const std::string& file) {
  if (k >= row.fields.size())
    throw Error(Errc::ParseError,
                fmt::format("{}:{}: expected at least {} columns, found {}", file, row.line, k + 1, row.fields.size()));
  if (row.fields[k].empty())
    throw Error(Errc::ParseError, fmt::format("{}:{}: empty label in column {}", file, row.line, k + 1));
  return row.fields[k];
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::IoError, fmt::format("cannot open '{}' for reading", p.string()));
  return in;
}

std::ofstream open_out(const std::filesystem::path& p) {
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw Error(Errc::IoError, fmt::format("cannot create '{}': {}", p.parent_path().string(), ec.message()));
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(Errc::IoError, fmt::format("cannot open '{}' for writing", p.string()));
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& p) {
  out.flush();
  if (!out) throw Error(Errc::IoError, fmt::format("write to '{}' failed", p.string()));
}

void check_writable_label(const std::string& l) {
  const bool bad = l.empty() || l.front() == '#' || l.find_first_of("\t\r\n") != std::string::npos ||
                   trim(l).size() != l.size();
  if (bad) throw Error(Errc::InvalidArgument, fmt::format("label '{}' cannot be written to a network file", l));
}

void check_labels(const LabelTable& t) {
  for (const auto& l : t.labels()) check_writable_label(l);
}

}  // namespace

// ---------------------------------------------------------------------------
// Ingestion

IngestResult ingest(std::istream& edges, std::istream& affiliations, const IngestOptions& options) {
  IngestStats stats;
  std::vector<std::string> warnings;

  LabelTable nodes;
  LabelTable layers;
  std::vector<LayerId> node_layer;
  {
    DelimitedReader reader(affiliations, "affiliations", options.header);
    while (auto row = reader.next()) {
      const std::string& node = field(*row, 0, reader.name());
      const std::string& layer = field(*row, 1, reader.name());
      if (nodes.find(node))
        throw Error(Errc::ParseError,
                    fmt::format("{}:{}: node '{}' listed more than once", reader.name(), row->line, node));
      nodes.intern(node);
      node_layer.push_back(LayerId{layers.intern(layer)});
    }
  }
  stats.affiliated_nodes = nodes.size();

  std::vector<Link4> links;
  std::unordered_set<std::uint64_t> seen;
  std::set<std::string> unaffiliated;
  std::unordered_set<std::uint32_t> on_edges;
  {
    DelimitedReader reader(edges, "edges", options.header);
    while (auto row = reader.next()) {
      ++stats.edge_rows;
      const std::string& a = field(*row, 0, reader.name());
      const std::string& b = field(*row, 1, reader.name());
      if (a == b) {
        if (options.strict)
          throw Error(Errc::SelfLoop, fmt::format("{}:{}: self-loop on '{}'", reader.name(), row->line, a));
        ++stats.self_loops_skipped;
        continue;
      }
      const auto ia = nodes.find(a);
      const auto ib = nodes.find(b);
      if (!ia || !ib) {
        const std::string& missing = ia ? b : a;
        if (options.strict)
          throw Error(Errc::MissingAffiliation,
                      fmt::format("{}:{}: node '{}' has no affiliation", reader.name(), row->line, missing));
        ++stats.rows_missing_affiliation;
        if (!ia) unaffiliated.insert(a);
        if (!ib) unaffiliated.insert(b);
        continue;
      }
      std::uint32_t s = *ia, t = *ib;
      if (options.directedness == Directedness::Undirected && s > t) std::swap(s, t);
      if (!seen.insert((std::uint64_t{s} << 32) | t).second) {
        ++stats.duplicate_rows;
        continue;
      }
      on_edges.insert(s);
      on_edges.insert(t);
      links.push_back({NodeId{s}, NodeId{t}, node_layer[s], node_layer[t]});
    }
  }
  stats.nodes_on_edges = on_edges.size();
  stats.unaffiliated_labels = unaffiliated.size();
  stats.links = links.size();
  stats.affiliations = layers.size();

  if (stats.duplicate_rows > 0)
    warnings.push_back(fmt::format("collapsed {} duplicate edge rows", stats.duplicate_rows));
  if (stats.self_loops_skipped > 0)
    warnings.push_back(fmt::format("skipped {} self-loop rows", stats.self_loops_skipped));
  if (stats.rows_missing_affiliation > 0)
    warnings.push_back(fmt::format("dropped {} edge rows touching {} unaffiliated nodes",
                                   stats.rows_missing_affiliation, stats.unaffiliated_labels));

  AffiliationMap aff = AffiliationMap::from_layers(node_layer);
  const std::size_t n = nodes.size();
  const std::size_t m = layers.size();
  Rank4Network rank4 = build_rank4(n, m, options.directedness, links, aff, NetworkLabels{nodes, layers});
  Rank3Network rank3 = rank4_to_rank3(rank4);
  return IngestResult{std::move(rank4), std::move(rank3), std::move(aff), stats, std::move(warnings)};
}

IngestResult ingest_files(const std::filesystem::path& edges, const std::filesystem::path& affiliations,
                          const IngestOptions& options) {
  auto e = open_in(edges);
  auto a = open_in(affiliations);
  return ingest(e, a, options);
}

// ---------------------------------------------------------------------------
// Network files

std::filesystem::path edges_path(const std::filesystem::path& stem) {
  return std::filesystem::path(stem.string() + ".edges.tsv");
}

std::filesystem::path affiliations_path(const std::filesystem::path& stem) {
  return std::filesystem::path(stem.string() + ".affiliations.tsv");
}

void write_affiliations(const AffiliationMap& aff, const LabelTable& nodes, const LabelTable& layers,
                        const std::filesystem::path& path) {
  check_labels(nodes);
  check_labels(layers);
  auto out = open_out(path);
  out << "# affnet affiliations\nnode\taffiliation\n";
  for (std::uint32_t i = 0; i < aff.size(); ++i) {
    out << nodes.label(i) << '\t';
    if (auto l = aff[NodeId{i}]) out << layers.label(index(*l));
    out << '\n';
  }
  finish_write(out, path);
}

namespace {

void write_header(std::ostream& out, int rank, std::size_t n, Directedness d, const LabelTable& layers) {
  out << "# affnet network\n";
  out << "# format_version\t" << kNetworkFormatVersion << '\n';
  out << "# rank\t" << rank << '\n';
  out << "# directedness\t" << to_string(d) << '\n';
  out << "# nodes\t" << n << '\n';
  out << "# layers\t" << layers.size() << '\n';
  for (const auto& l : layers.labels()) out << "# layer\t" << l << '\n';
}

}  // namespace

void write_network(const Rank4Network& net, const std::filesystem::path& stem) {
  check_labels(net.node_labels());
  check_labels(net.layer_labels());
  const auto path = edges_path(stem);
  auto out = open_out(path);
  write_header(out, 4, net.n_nodes(), net.directedness(), net.layer_labels());
  out << "source\ttarget\tsource_layer\ttarget_layer\n";
  const auto& nl = net.node_labels();
  const auto& ll = net.layer_labels();
  for (const Link4& l : net.links())
    out << nl.label(index(l.source)) << '\t' << nl.label(index(l.target)) << '\t' << ll.label(index(l.source_layer))
        << '\t' << ll.label(index(l.target_layer)) << '\n';
  finish_write(out, path);
  write_affiliations(net.affiliations(), nl, ll, affiliations_path(stem));
}

void write_network(const Rank3Network& net, const std::filesystem::path& stem) {
  check_labels(net.node_labels());
  check_labels(net.layer_labels());
  const auto path = edges_path(stem);
  auto out = open_out(path);
  write_header(out, 3, net.n_nodes(), net.directedness(), net.layer_labels());
  out << "source\ttarget\tlayer\n";
  const auto& nl = net.node_labels();
  const auto& ll = net.layer_labels();
  for (const LayerLink& l : net.links())
    out << nl.label(index(l.source)) << '\t' << nl.label(index(l.target)) << '\t' << ll.label(index(l.layer))
        << '\n';
  finish_write(out, path);
  write_affiliations(net.affiliations().value_or(AffiliationMap(net.n_nodes())), nl, ll,
                     affiliations_path(stem));
}

namespace {

struct NetworkHeader {
  int version = 0;
  int rank = 0;
  Directedness directedness = Directedness::Undirected;
  std::size_t n_nodes = 0;
  std::size_t n_layers = 0;
  std::vector<std::string> layers;
};

std::size_t parse_count(const std::string& v, const std::string& file, std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, fmt::format("{}:{}: invalid count '{}'", file, line, v));
  }
}

NetworkHeader read_header(std::istream& in, const std::string& file) {
  NetworkHeader h;
  std::string line;
  std::size_t line_no = 0;
  while (in.peek() == '#' && std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    const std::string key(trim(std::string_view(line).substr(1, tab - 1)));
    const std::string value = line.substr(tab + 1);
    if (key == "format_version") h.version = static_cast<int>(parse_count(value, file, line_no));
    else if (key == "rank") h.rank = static_cast<int>(parse_count(value, file, line_no));
    else if (key == "nodes") h.n_nodes = parse_count(value, file, line_no);
    else if (key == "layers") h.n_layers = parse_count(value, file, line_no);
    else if (key == "layer") h.layers.push_back(value);
    else if (key == "directedness") {
      if (value == "directed") h.directedness = Directedness::Directed;
      else if (value == "undirected") h.directedness = Directedness::Undirected;
      else throw Error(Errc::ParseError, fmt::format("{}:{}: unknown directedness '{}'", file, line_no, value));
    }
  }
  if (h.version != kNetworkFormatVersion)
    throw Error(Errc::ParseError, fmt::format("{}: unsupported or missing format_version {}", file, h.version));
  if (h.rank != 3 && h.rank != 4)
    throw Error(Errc::ParseError, fmt::format("{}: rank must be 3 or 4, got {}", file, h.rank));
  if (h.layers.size() != h.n_layers)
    throw Error(Errc::ParseError,
                fmt::format("{}: {} layer labels for {} layers", file, h.layers.size(), h.n_layers));
  return h;
}

// Sidecar: every node in id order, optionally with its layer.
std::pair<LabelTable, AffiliationMap> read_sidecar(const std::filesystem::path& path, const LabelTable& layers) {
  auto in = open_in(path);
  const std::string name = path.string();
  LabelTable nodes;
  std::vector<std::optional<LayerId>> aff;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line == "node\taffiliation") continue;
    }
    const auto tab = line.find('\t');
    const std::string node = line.substr(0, tab);
    const std::string layer = tab == std::string::npos ? std::string() : line.substr(tab + 1);
    if (node.empty()) throw Error(Errc::ParseError, fmt::format("{}:{}: empty node label", name, line_no));
    if (nodes.find(node))
      throw Error(Errc::ParseError, fmt::format("{}:{}: node '{}' listed more than once", name, line_no, node));
    nodes.intern(node);
    if (layer.empty()) {
      aff.emplace_back();
    } else {
      auto id = layers.find(layer);
      if (!id) throw Error(Errc::ParseError, fmt::format("{}:{}: unknown layer '{}'", name, line_no, layer));
      aff.emplace_back(LayerId{*id});
    }
  }
  return {std::move(nodes), AffiliationMap(std::move(aff))};
}

}  // namespace

StoredNetwork read_network(const std::filesystem::path& stem) {
  const auto epath = edges_path(stem);
  auto in = open_in(epath);
  const std::string name = epath.string();
  const NetworkHeader h = read_header(in, name);
  LabelTable layers(h.layers);
  auto [nodes, aff] = read_sidecar(affiliations_path(stem), layers);
  if (nodes.size() != h.n_nodes)
    throw Error(Errc::ParseError,
                fmt::format("{}: header declares {} nodes, affiliation sidecar lists {}", name, h.n_nodes, nodes.size()));

  auto node_id = [&](const Row& row, std::size_t k) {
    const std::string& l = field(row, k, name);
    auto id = nodes.find(l);
    if (!id) throw Error(Errc::ParseError, fmt::format("{}:{}: unknown node '{}'", name, row.line, l));
    return NodeId{*id};
  };
  auto layer_id = [&](const Row& row, std::size_t k) {
    const std::string& l = field(row, k, name);
    auto id = layers.find(l);
    if (!id) throw Error(Errc::ParseError, fmt::format("{}:{}: unknown layer '{}'", name, row.line, l));
    return LayerId{*id};
  };

  DelimitedReader reader(in, name, HeaderMode::Auto);
  NetworkLabels labels{nodes, layers};
  if (h.rank == 4) {
    std::vector<Link4> links;
    while (auto row = reader.next())
      links.push_back({node_id(*row, 0), node_id(*row, 1), layer_id(*row, 2), layer_id(*row, 3)});
    return Rank4Network::from_links(h.n_nodes, h.n_layers, h.directedness, links, std::move(aff), std::move(labels));
  }
  std::vector<LayerLink> links;
  while (auto row = reader.next()) links.push_back({node_id(*row, 0), node_id(*row, 1), layer_id(*row, 2)});
  std::optional<AffiliationMap> attached;
  if (!aff.indeterminate_nodes().empty() && aff.indeterminate_nodes().size() == aff.size()) {
    attached = std::nullopt;
  } else {
    attached = std::move(aff);
  }
  return build_rank3(h.n_nodes, h.n_layers, h.directedness, links, std::move(labels), std::move(attached));
}

AffiliationMap read_affiliations(const std::filesystem::path& path, const LabelTable& nodes,
                                 const LabelTable& layers) {
  auto in = open_in(path);
  const std::string name = path.string();
  DelimitedReader reader(in, name, HeaderMode::Auto);
  AffiliationMap aff(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  while (auto row = reader.next()) {
    const std::string& node = field(*row, 0, name);
    auto id = nodes.find(node);
    if (!id) throw Error(Errc::ParseError, fmt::format("{}:{}: unknown node '{}'", name, row->line, node));
    if (seen[*id])
      throw Error(Errc::ParseError, fmt::format("{}:{}: node '{}' listed more than once", name, row->line, node));
    seen[*id] = true;
    if (row->fields.size() < 2 || row->fields[1].empty()) continue;
    auto layer = layers.find(row->fields[1]);
    if (!layer)
      throw Error(Errc::ParseError, fmt::format("{}:{}: unknown layer '{}'", name, row->line, row->fields[1]));
    aff.assign(NodeId{*id}, LayerId{*layer});
  }
  return aff;
}

}  // namespace affnet
