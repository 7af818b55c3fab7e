#include "qaoapca/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "qaoapca/error.hpp"
#include "qaoapca/text.hpp"

namespace qaoapca {

void write_graph_set(std::ostream& out, std::span<const WeightedGraph> graphs,
                     std::span<const std::string> header_comments) {
  out << "# qaoapca graph-set v1\n";
  for (const std::string& c : header_comments) out << "# " << c << '\n';
  out << "# graphs " << graphs.size() << '\n';
  for (const WeightedGraph& wg : graphs) {
    out << '\n' << wg.vertex_count() << ' ' << wg.graph().edge_count() << '\n';
    const auto edges = wg.graph().edges();
    const auto weights = wg.weights();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      out << edges[i].u << ' ' << edges[i].v << ' ' << text::shortest(weights[i]) << '\n';
    }
  }
}

std::vector<WeightedGraph> read_graph_set(std::istream& in) {
  std::vector<WeightedGraph> graphs;
  std::string raw;
  std::size_t line_no = 0;

  int n = 0;
  std::size_t expected_edges = 0;
  std::size_t header_line = 0;
  bool in_record = false;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::set<std::pair<int, int>> seen;

  auto finish_record = [&] {
    try {
      graphs.emplace_back(Graph(n, std::move(edges)), std::move(weights));
    } catch (const ValidationError& e) {
      throw FormatError(e.what(), header_line);
    }
    edges.clear();
    weights.clear();
    seen.clear();
    in_record = false;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) {
      if (in_record) {
        throw FormatError("record has " + std::to_string(edges.size()) + " edge lines, header says " +
                              std::to_string(expected_edges),
                          line_no);
      }
      continue;
    }
    const auto fields = text::split_whitespace(line);
    try {
      if (!in_record) {
        if (fields.size() != 2) throw FormatError("expected record header 'n m'");
        const auto nv = text::parse_int(fields[0]);
        const auto m = text::parse_int(fields[1]);
        if (nv < 1 || nv > kMaxVertices) throw FormatError("vertex count out of range");
        if (m < 0 || m > nv * (nv - 1) / 2) throw FormatError("edge count out of range");
        n = static_cast<int>(nv);
        expected_edges = static_cast<std::size_t>(m);
        header_line = line_no;
        in_record = true;
        if (expected_edges == 0) finish_record();
        continue;
      }
      if (fields.size() != 3) throw FormatError("expected edge line 'u v w'");
      const auto u = text::parse_int(fields[0]);
      const auto v = text::parse_int(fields[1]);
      const double w = text::parse_double(fields[2]);
      if (u < 0 || v < 0 || u >= n || v >= n) throw FormatError("edge endpoint out of range");
      if (u == v) throw FormatError("self-loop");
      if (!(w > 0.0)) throw FormatError("edge weight must be > 0");
      const std::pair<int, int> key{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
      if (!seen.insert(key).second) {
        throw FormatError("duplicate edge (" + std::to_string(key.first) + ", " +
                          std::to_string(key.second) + ")");
      }
      edges.push_back({static_cast<int>(u), static_cast<int>(v)});
      weights.push_back(w);
    } catch (const FormatError& e) {
      if (e.line() != 0) throw;
      throw FormatError(e.what(), line_no);
    }
    if (edges.size() == expected_edges) {
      // Edges are re-sorted by Graph; carry weights along.
      std::vector<std::size_t> order(edges.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::minmax(edges[a].u, edges[a].v) < std::minmax(edges[b].u, edges[b].v);
      });
      std::vector<Edge> sorted_edges;
      std::vector<double> sorted_weights;
      for (const std::size_t i : order) {
        const auto [lo, hi] = std::minmax(edges[i].u, edges[i].v);
        sorted_edges.push_back({lo, hi});
        sorted_weights.push_back(weights[i]);
      }
      edges = std::move(sorted_edges);
      weights = std::move(sorted_weights);
      finish_record();
    }
  }
  if (in.bad()) throw IoError("error while reading graph set");
  if (in_record) throw FormatError("unexpected end of file inside record", header_line);
  return graphs;
}

void save_graph_set(const std::string& path, std::span<const WeightedGraph> graphs,
                    std::span<const std::string> header_comments) {
  std::ostringstream out;
  write_graph_set(out, graphs, header_comments);
  text::write_file(path, out.str());
}

std::vector<WeightedGraph> load_graph_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_graph_set(in);
}

}  // namespace qaoapca
