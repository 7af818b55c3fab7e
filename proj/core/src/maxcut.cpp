#include "qaoapca/maxcut.hpp"

#include "qaoapca/error.hpp"

namespace qaoapca {

CostDiagonal::CostDiagonal(int qubit_count, std::vector<double> energies)
    : n_(qubit_count), energies_(std::move(energies)) {
  if (n_ < 1 || n_ > kMaxVertices) {
    throw ValidationError("cost diagonal qubit count " + std::to_string(n_) + " outside [1, 16]");
  }
  if (energies_.size() != (std::size_t{1} << n_)) {
    throw ValidationError("cost diagonal must have 2^n = " + std::to_string(std::size_t{1} << n_) +
                          " entries, got " + std::to_string(energies_.size()));
  }
}

double cut_value(const WeightedGraph& wg, Assignment a) {
  if (a.vertex_count != wg.vertex_count()) {
    throw ValidationError("assignment has " + std::to_string(a.vertex_count) +
                          " spins, graph has " + std::to_string(wg.vertex_count()) + " vertices");
  }
  const auto edges = wg.graph().edges();
  const auto weights = wg.weights();
  double cut = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (((a.bits >> edges[i].u) ^ (a.bits >> edges[i].v)) & 1U) cut += weights[i];
  }
  return cut;
}

CostDiagonal cost_diagonal(const WeightedGraph& wg) {
  const int n = wg.vertex_count();
  if (n > kMaxVertices) throw ValidationError("cost diagonal supports at most 16 vertices");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> energies(dim, 0.0);
  const auto edges = wg.graph().edges();
  const auto weights = wg.weights();
  for (std::size_t b = 0; b < dim; ++b) {
    double cut = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (((b >> edges[i].u) ^ (b >> edges[i].v)) & 1U) cut += weights[i];
    }
    energies[b] = -cut;
  }
  return CostDiagonal(n, std::move(energies));
}

CutOptimum brute_force_cmin(const CostDiagonal& diag) {
  const auto energies = diag.energies();
  std::size_t best = 0;
  for (std::size_t b = 1; b < energies.size(); ++b) {
    if (energies[b] < energies[best]) best = b;
  }
  return CutOptimum{energies[best], Assignment{diag.qubit_count(), static_cast<std::uint32_t>(best)}};
}

CutOptimum brute_force_cmin(const WeightedGraph& wg) { return brute_force_cmin(cost_diagonal(wg)); }

}  // namespace qaoapca
