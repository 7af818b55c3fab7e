#pragma once

#include <vector>

#include "qaoapca/graph.hpp"
#include "qaoapca/optimizer.hpp"
#include "qaoapca/qaoa.hpp"
#include "qaoapca/records.hpp"

namespace qaoapca {

struct TqaConfig {
  std::vector<double> dt_grid{0.1, 0.3, 0.5, 0.7, 0.9};

  void validate() const;
};

/// Trotterized-annealing start: gamma_i = (i/p) dt, beta_i = (1 - i/p) dt, i = 1..p.
ParameterVector tqa_init(int layers, double dt);

struct TrainResult {
  ParameterVector params;
  RunRecord record;
  double dt = 0.0;  ///< grid value of the winning run
};

/// Standard QAOA on one graph: one COBYLA run per dt in the grid, each started
/// from tqa_init(p, dt). Keeps the run with the highest approximation ratio
/// (smaller dt on ties); record.evals counts that run only.
TrainResult train_graph(const WeightedGraph& wg, int layers, const TqaConfig& tqa,
                        const OptimizerConfig& cfg);

}  // namespace qaoapca
