#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qaoapca {

inline constexpr int kMaxVertices = 16;
/// Largest vertex count accepted by the permutation-search canonicalizer.
inline constexpr int kMaxCanonicalVertices = 10;

struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Edges are stored with u < v,
/// sorted lexicographically and free of duplicates.
class Graph {
 public:
  Graph() = default;
  /// Throws ValidationError on self-loops, duplicates or out-of-range endpoints.
  /// Edge endpoints may be given in either order.
  Graph(int vertex_count, std::vector<Edge> edges);

  /// Graph whose edges are the set bits of an edge mask (see pair_bit()).
  static Graph from_mask(int vertex_count, std::uint64_t mask);

  int vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool has_edge(int u, int v) const;
  /// Bitset of neighbours of `v`.
  std::uint32_t neighbours(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

  /// Edge mask in pair_bit() layout. Requires n <= kMaxCanonicalVertices + 1.
  std::uint64_t edge_mask() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::array<std::uint32_t, kMaxVertices> adjacency_{};
};

/// Number of vertex pairs n(n-1)/2.
constexpr int pair_count(int n) { return n * (n - 1) / 2; }

/// Bit position of pair (u, v), u < v, inside an n-vertex edge mask. Pairs are
/// ordered column by column, (0,1), (0,2), (1,2), (0,3), ... and the first pair
/// occupies the most significant bit, so numeric order on masks is
/// lexicographic order on that pair sequence.
constexpr int pair_bit(int n, int u, int v) { return pair_count(n) - 1 - (v * (v - 1) / 2 + u); }

/// Isomorphism-class identifier: the numerically smallest edge mask over all
/// relabelings of the graph.
struct CanonicalKey {
  int vertex_count = 0;
  std::uint64_t bits = 0;

  /// "n:hex", e.g. "3:3" for the path on three vertices.
  std::string to_string() const;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

/// Undirected graph with a strictly positive weight per edge; weights are
/// index-aligned with graph().edges().
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(Graph graph, std::vector<double> weights);

  /// All weights equal to 1.
  static WeightedGraph unweighted(Graph graph);

  const Graph& graph() const noexcept { return graph_; }
  std::span<const double> weights() const noexcept { return weights_; }
  int vertex_count() const noexcept { return graph_.vertex_count(); }
  double total_weight() const;
  bool is_unit_weighted() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  Graph graph_;
  std::vector<double> weights_;
};

bool is_connected(const Graph& g);

/// Throws ValidationError for n > kMaxCanonicalVertices.
CanonicalKey canonical_key(const Graph& g);

/// The graph relabeled so that its edge mask equals its canonical key.
Graph canonical_form(const Graph& g);

/// True if no relabeling of the mask yields a numerically smaller mask.
bool is_canonical_mask(int n, std::uint64_t mask);

/// One representative (in canonical labeling) per isomorphism class of
/// connected graphs on n vertices, ordered by canonical key. 2 <= n <= 7.
std::vector<Graph> enumerate_connected_nonisomorphic(int n);

/// `count` pairwise non-isomorphic connected graphs on n vertices, in canonical
/// labeling and in draw order. Edge masks are drawn uniformly and rejected if
/// disconnected or already seen. Throws ValidationError when `count` distinct
/// classes are not found within `attempt_budget` draws.
std::vector<Graph> sample_connected_nonisomorphic(int n, std::size_t count, std::uint64_t seed,
                                                  std::size_t attempt_budget = 5'000'000);

/// Independent weights uniform on (0, 1], one per edge in edge order.
WeightedGraph assign_random_weights(const Graph& g, std::uint64_t seed);

}  // namespace qaoapca
