#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qaoapca/graph.hpp"

namespace qaoapca {

/// Spin assignment z in {+1,-1}^n packed as a bitmask: bit i set <=> z_i = -1.
struct Assignment {
  int vertex_count = 0;
  std::uint32_t bits = 0;

  int spin(int i) const { return ((bits >> i) & 1U) != 0 ? -1 : +1; }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Diagonal of the cost Hamiltonian, E(b) = -C(z_b) for b in [0, 2^n).
class CostDiagonal {
 public:
  CostDiagonal() = default;
  CostDiagonal(int qubit_count, std::vector<double> energies);

  int qubit_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return energies_.size(); }
  std::span<const double> energies() const noexcept { return energies_; }
  double operator[](std::size_t b) const { return energies_[b]; }

 private:
  int n_ = 0;
  std::vector<double> energies_;
};

struct CutOptimum {
  double cmin = 0.0;
  Assignment witness;
};

double cut_value(const WeightedGraph& wg, Assignment a);

/// Throws ValidationError if n > kMaxVertices.
CostDiagonal cost_diagonal(const WeightedGraph& wg);

/// Minimum energy over all 2^n assignments, lowest index on ties.
CutOptimum brute_force_cmin(const WeightedGraph& wg);
CutOptimum brute_force_cmin(const CostDiagonal& diag);

}  // namespace qaoapca
