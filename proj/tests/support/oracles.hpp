#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library under test except for its plain data types.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qaoapca/graph.hpp"

namespace oracle {

using AdjMatrix = std::vector<std::vector<int>>;

// Edge mask in row-major upper-triangle order; deliberately not the library's layout.
inline AdjMatrix adjacency_from_mask(int n, std::uint64_t mask) {
  AdjMatrix a(n, std::vector<int>(n, 0));
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1U) a[u][v] = a[v][u] = 1;
    }
  }
  return a;
}

inline bool connected(const AdjMatrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> seen(n, 0), stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (a[u][v] && !seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

inline bool isomorphic(const AdjMatrix& a, const AdjMatrix& b) {
  const int n = static_cast<int>(a.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool same = true;
    for (int u = 0; u < n && same; ++u) {
      for (int v = 0; v < n && same; ++v) same = a[u][v] == b[perm[u]][perm[v]];
    }
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Connected isomorphism classes on n vertices by sweeping every mask and
// grouping with an exhaustive permutation check.
inline std::vector<AdjMatrix> connected_classes(int n) {
  std::vector<AdjMatrix> classes;
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    AdjMatrix a = adjacency_from_mask(n, mask);
    if (!connected(a)) continue;
    const bool known = std::any_of(classes.begin(), classes.end(),
                                   [&](const AdjMatrix& c) { return isomorphic(a, c); });
    if (!known) classes.push_back(std::move(a));
  }
  return classes;
}

inline AdjMatrix adjacency(const qaoapca::Graph& g) {
  AdjMatrix a(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

// C(z) = sum w (1 - z_u z_v) / 2 with z_i = -1 when bit i of b is set.
inline double cut(const qaoapca::WeightedGraph& wg, std::uint64_t b) {
  double c = 0.0;
  const auto edges = wg.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int zu = ((b >> edges[i].u) & 1U) ? -1 : 1;
    const int zv = ((b >> edges[i].v) & 1U) ? -1 : 1;
    c += wg.weights()[i] * (1 - zu * zv) / 2.0;
  }
  return c;
}

// <psi|H|psi> with the circuit built from explicit dense matrices:
// U = prod_i exp(-i beta_i sum_q X_q) exp(-i gamma_i H_C), exp(-i beta X) taken as the
// Kronecker product of single-qubit cos(beta) I - i sin(beta) X factors.
inline double dense_objective(const qaoapca::WeightedGraph& wg, const std::vector<double>& gamma,
                              const std::vector<double>& beta) {
  using Mat = Eigen::MatrixXcd;
  const std::complex<double> i1(0.0, 1.0);
  const int n = wg.vertex_count();
  const Eigen::Index dim = Eigen::Index{1} << n;

  Eigen::VectorXd energy(dim);
  for (Eigen::Index b = 0; b < dim; ++b) energy[b] = -cut(wg, static_cast<std::uint64_t>(b));

  Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (std::size_t layer = 0; layer < gamma.size(); ++layer) {
    Mat phase = Mat::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) phase(b, b) = std::exp(-i1 * gamma[layer] * energy[b]);

    Mat rx(2, 2);
    rx << std::cos(beta[layer]), -i1 * std::sin(beta[layer]), -i1 * std::sin(beta[layer]), std::cos(beta[layer]);
    Mat mixer = Mat::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      Mat next(mixer.rows() * 2, mixer.cols() * 2);
      for (Eigen::Index r = 0; r < 2; ++r) {
        for (Eigen::Index c = 0; c < 2; ++c) next.block(r * mixer.rows(), c * mixer.cols(), mixer.rows(), mixer.cols()) = rx(r, c) * mixer;
      }
      mixer = next;
    }
    psi = mixer * (phase * psi);
  }
  double e = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) e += std::norm(psi[b]) * energy[b];
  return e;
}

// Two-tailed exact signed-rank p-value by enumerating all 2^n sign patterns.
// Ranks are kept doubled so tied averages stay integral.
inline double signed_rank_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> mag;
  std::vector<int> positive;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d == 0.0) continue;
    mag.push_back(std::fabs(d));
    positive.push_back(d > 0 ? 1 : 0);
  }
  const std::size_t n = mag.size();
  if (n == 0) return 1.0;
  std::vector<long> rank2(n);
  for (std::size_t i = 0; i < n; ++i) {
    long less = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      less += mag[j] < mag[i];
      equal += mag[j] == mag[i];
    }
    rank2[i] = 2 * less + equal + 1;  // 2 * (less + (equal + 1) / 2)
  }
  long w_plus = 0, total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += rank2[i];
    if (positive[i]) w_plus += rank2[i];
  }
  const long w = std::min(w_plus, total - w_plus);
  std::uint64_t count = 0;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
    long t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((pattern >> i) & 1U) t += rank2[i];
    }
    count += t <= w;
  }
  return std::min(1.0, 2.0 * static_cast<double>(count) / std::ldexp(1.0, static_cast<int>(n)));
}

}  // namespace oracle

namespace gen {

// Random graph on n vertices, each pair present with probability `density`.
inline qaoapca::Graph graph(std::mt19937_64& rng, int n, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  std::vector<qaoapca::Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return qaoapca::Graph(n, std::move(edges));
}

// As above but with at least one edge, optionally with weights in (0, 1].
inline qaoapca::WeightedGraph weighted_graph(std::mt19937_64& rng, int n, bool weighted) {
  qaoapca::Graph g = graph(rng, n);
  while (g.edge_count() == 0) g = graph(rng, n);
  if (!weighted) return qaoapca::WeightedGraph::unweighted(g);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::vector<double> weights(g.edge_count());
  for (double& x : weights) x = w(rng);
  return qaoapca::WeightedGraph(g, std::move(weights));
}

inline qaoapca::Graph permute(const qaoapca::Graph& g, const std::vector<int>& perm) {
  std::vector<qaoapca::Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return qaoapca::Graph(g.vertex_count(), std::move(edges));
}

inline std::vector<int> permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline std::vector<double> angles(std::mt19937_64& rng, int count, double lo = -3.2, double hi = 3.2) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(count);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace gen
