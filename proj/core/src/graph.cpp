#include "qaoapca/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <unordered_set>

#include "qaoapca/error.hpp"
#include "qaoapca/seeding.hpp"

namespace qaoapca {

namespace {

constexpr int kMaxMaskVertices = 11;  // 55 pairs fit in 64 bits

void check_vertex_count(int n) {
  if (n < 1 || n > kMaxVertices) {
    throw ValidationError("vertex count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxVertices) + "]");
  }
}

using AdjacencyRows = std::array<std::uint32_t, kMaxVertices>;

AdjacencyRows rows_from_mask(int n, std::uint64_t mask) {
  AdjacencyRows rows{};
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if ((mask >> pair_bit(n, u, v)) & 1U) {
        rows[static_cast<std::size_t>(u)] |= 1U << v;
        rows[static_cast<std::size_t>(v)] |= 1U << u;
      }
    }
  }
  return rows;
}

bool rows_connected(int n, const AdjacencyRows& rows) {
  const std::uint32_t all = n == 32 ? ~0U : (1U << n) - 1U;
  std::uint32_t seen = 1U;
  std::uint32_t frontier = 1U;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
      next |= rows[static_cast<std::size_t>(std::countr_zero(f))];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return (seen & all) == all;
}

// Depth-first search over relabelings. Position v of the relabeled graph is
// filled by an unused original vertex; that fixes the bits of pairs (u, v),
// u < v, which form the next most significant chunk of the mask. Any branch
// whose prefix exceeds the best known prefix is cut.
class RelabelSearch {
 public:
  RelabelSearch(int n, const AdjacencyRows& rows, std::uint64_t bound)
      : n_(n), total_bits_(pair_count(n)), rows_(rows), best_(bound) {}

  /// Smallest mask reachable; best_ starts at the identity labeling's mask.
  std::uint64_t minimize() {
    stop_on_smaller_ = false;
    descend(0, 0, 0U);
    return best_;
  }

  /// True if some relabeling gives a mask strictly below the bound.
  bool finds_smaller() {
    stop_on_smaller_ = true;
    found_smaller_ = false;
    descend(0, 0, 0U);
    return found_smaller_;
  }

 private:
  void descend(int position, std::uint64_t prefix, std::uint32_t used) {
    if (position == n_) {
      if (prefix < best_) best_ = prefix;
      return;
    }
    const int bits_after = (position + 1) * position / 2;
    for (int x = 0; x < n_; ++x) {
      if ((used >> x) & 1U) continue;
      std::uint64_t chunk = 0;
      for (int u = 0; u < position; ++u) {
        chunk = (chunk << 1) | ((rows_[static_cast<std::size_t>(order_[u])] >> x) & 1U);
      }
      const std::uint64_t candidate = (prefix << position) | chunk;
      const std::uint64_t best_prefix = best_ >> (total_bits_ - bits_after);
      if (candidate > best_prefix) continue;
      if (stop_on_smaller_ && candidate < best_prefix) {
        found_smaller_ = true;
        return;
      }
      order_[static_cast<std::size_t>(position)] = x;
      descend(position + 1, candidate, used | (1U << x));
      if (found_smaller_) return;
    }
  }

  int n_;
  int total_bits_;
  const AdjacencyRows& rows_;
  std::uint64_t best_;
  std::array<int, kMaxVertices> order_{};
  bool stop_on_smaller_ = false;
  bool found_smaller_ = false;
};

std::uint64_t pair_mask(int n) {
  const int bits = pair_count(n);
  return bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

void check_canonical_bound(int n) {
  if (n > kMaxCanonicalVertices) {
    throw ValidationError("canonical labeling supports at most " +
                          std::to_string(kMaxCanonicalVertices) + " vertices, got " +
                          std::to_string(n));
  }
}

// Connected graphs per vertex count (OEIS A001349), n = 0..10.
constexpr std::array<std::uint64_t, 11> kConnectedClassCount{
    1, 1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571};

}  // namespace

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
  check_vertex_count(n_);
  for (Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") has an endpoint outside [0, " + std::to_string(n_) + ")");
    }
    if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->u) + ", " +
                          std::to_string(dup->v) + ")");
  }
  for (const Edge& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.u)] |= 1U << e.v;
    adjacency_[static_cast<std::size_t>(e.v)] |= 1U << e.u;
  }
}

Graph Graph::from_mask(int vertex_count, std::uint64_t mask) {
  check_vertex_count(vertex_count);
  if (vertex_count > kMaxMaskVertices) throw ValidationError("edge masks support at most 11 vertices");
  if ((mask & ~pair_mask(vertex_count)) != 0) throw ValidationError("edge mask has bits beyond n(n-1)/2");
  std::vector<Edge> edges;
  for (int u = 0; u < vertex_count; ++u) {
    for (int v = u + 1; v < vertex_count; ++v) {
      if ((mask >> pair_bit(vertex_count, u, v)) & 1U) edges.push_back({u, v});
    }
  }
  return Graph(vertex_count, std::move(edges));
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return ((adjacency_[static_cast<std::size_t>(u)] >> v) & 1U) != 0;
}

std::uint64_t Graph::edge_mask() const {
  if (n_ > kMaxMaskVertices) throw ValidationError("edge masks support at most 11 vertices");
  std::uint64_t mask = 0;
  for (const Edge& e : edges_) mask |= std::uint64_t{1} << pair_bit(n_, e.u, e.v);
  return mask;
}

std::string CanonicalKey::to_string() const {
  std::string hex = hex64(bits);
  const auto first = hex.find_first_not_of('0');
  hex = first == std::string::npos ? "0" : hex.substr(first);
  return std::to_string(vertex_count) + ":" + hex;
}

WeightedGraph::WeightedGraph(Graph graph, std::vector<double> weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
  if (weights_.size() != graph_.edge_count()) {
    throw ValidationError("expected " + std::to_string(graph_.edge_count()) + " weights, got " +
                          std::to_string(weights_.size()));
  }
  for (const double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("edge weights must be finite and > 0, got " + std::to_string(w));
    }
  }
}

WeightedGraph WeightedGraph::unweighted(Graph graph) {
  std::vector<double> ones(graph.edge_count(), 1.0);
  return WeightedGraph(std::move(graph), std::move(ones));
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const double w : weights_) total += w;
  return total;
}

bool WeightedGraph::is_unit_weighted() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

bool is_connected(const Graph& g) {
  AdjacencyRows rows{};
  for (int v = 0; v < g.vertex_count(); ++v) rows[static_cast<std::size_t>(v)] = g.neighbours(v);
  return rows_connected(g.vertex_count(), rows);
}

CanonicalKey canonical_key(const Graph& g) {
  const int n = g.vertex_count();
  check_canonical_bound(n);
  const std::uint64_t mask = g.edge_mask();
  AdjacencyRows rows{};
  for (int v = 0; v < n; ++v) rows[static_cast<std::size_t>(v)] = g.neighbours(v);
  return CanonicalKey{n, RelabelSearch(n, rows, mask).minimize()};
}

Graph canonical_form(const Graph& g) {
  const CanonicalKey key = canonical_key(g);
  return Graph::from_mask(key.vertex_count, key.bits);
}

bool is_canonical_mask(int n, std::uint64_t mask) {
  check_vertex_count(n);
  check_canonical_bound(n);
  const AdjacencyRows rows = rows_from_mask(n, mask);
  return !RelabelSearch(n, rows, mask).finds_smaller();
}

std::vector<Graph> enumerate_connected_nonisomorphic(int n) {
  if (n < 2 || n > 7) {
    throw ValidationError("enumeration supports 2 <= n <= 7, got " + std::to_string(n));
  }
  // A mask is its class representative iff no relabeling makes it smaller, so
  // ascending sweep order is canonical-key order.
  std::vector<Graph> out;
  const std::uint64_t end = std::uint64_t{1} << pair_count(n);
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    if (std::popcount(mask) < n - 1) continue;
    const AdjacencyRows rows = rows_from_mask(n, mask);
    if (!rows_connected(n, rows)) continue;
    if (RelabelSearch(n, rows, mask).finds_smaller()) continue;
    out.push_back(Graph::from_mask(n, mask));
  }
  return out;
}

std::vector<Graph> sample_connected_nonisomorphic(int n, std::size_t count, std::uint64_t seed,
                                                  std::size_t attempt_budget) {
  if (n < 2 || n > kMaxCanonicalVertices) {
    throw ValidationError("sampling supports 2 <= n <= " + std::to_string(kMaxCanonicalVertices) +
                          ", got " + std::to_string(n));
  }
  if (count > kConnectedClassCount[static_cast<std::size_t>(n)]) {
    throw ValidationError("only " + std::to_string(kConnectedClassCount[static_cast<std::size_t>(n)]) +
                          " connected classes exist on " + std::to_string(n) +
                          " vertices, requested " + std::to_string(count));
  }
  Rng rng(seed);
  const std::uint64_t mask_bits = pair_mask(n);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt >= attempt_budget) {
      throw ValidationError("found only " + std::to_string(out.size()) + " of " +
                            std::to_string(count) + " classes within " +
                            std::to_string(attempt_budget) + " draws");
    }
    const std::uint64_t mask = rng.next() & mask_bits;
    const AdjacencyRows rows = rows_from_mask(n, mask);
    if (!rows_connected(n, rows)) continue;
    const std::uint64_t key = RelabelSearch(n, rows, mask).minimize();
    if (seen.insert(key).second) out.push_back(Graph::from_mask(n, key));
  }
  return out;
}

WeightedGraph assign_random_weights(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> weights(g.edge_count());
  for (double& w : weights) w = rng.uniform_open_closed();
  return WeightedGraph(g, std::move(weights));
}

}  // namespace qaoapca
