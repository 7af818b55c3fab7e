#include "qaoapca/training.hpp"

#include <cmath>

#include "qaoapca/error.hpp"
#include "qaoapca/maxcut.hpp"
#include "qaoapca/pipeline.hpp"

namespace qaoapca {

void TqaConfig::validate() const {
  if (dt_grid.empty()) throw ValidationError("TQA time-step grid is empty");
  for (const double dt : dt_grid) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw ValidationError("TQA time steps must be positive, got " + std::to_string(dt));
    }
  }
}

ParameterVector tqa_init(int layers, double dt) {
  if (layers < 1) throw ValidationError("TQA needs p >= 1, got " + std::to_string(layers));
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("TQA needs dt > 0, got " + std::to_string(dt));
  }
  const auto p = static_cast<std::size_t>(layers);
  std::vector<double> gamma(p);
  std::vector<double> beta(p);
  for (std::size_t i = 1; i <= p; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(p);
    gamma[i - 1] = frac * dt;
    beta[i - 1] = (1.0 - frac) * dt;
  }
  return ParameterVector(std::move(gamma), std::move(beta));
}

TrainResult train_graph(const WeightedGraph& wg, int layers, const TqaConfig& tqa,
                        const OptimizerConfig& cfg) {
  tqa.validate();
  cfg.validate();
  const CostDiagonal diag = cost_diagonal(wg);
  const double cmin = brute_force_cmin(diag).cmin;

  const ScalarObjective f = [&diag](std::span<const double> theta) {
    return objective(diag, ParameterVector::from_flat(theta));
  };

  bool have_best = false;
  TrainResult best;
  for (const double dt : tqa.dt_grid) {
    const std::vector<double> x0 = tqa_init(layers, dt).flat();
    const OptResult run = minimize(f, x0, cfg);
    const double ratio = approximation_ratio(run.best_value, cmin);
    const bool better = !have_best || ratio > best.record.approx_ratio ||
                        (ratio == best.record.approx_ratio && dt < best.dt);
    if (!better) continue;
    have_best = true;
    best.params = ParameterVector::from_flat(run.best_params);
    best.dt = dt;
    best.record.method = Method::standard;
    best.record.layers = layers;
    best.record.param_count = 2 * layers;
    best.record.evals = run.evals;
    best.record.approx_ratio = ratio;
    best.record.best_params = run.best_params;
  }
  best.record.graph_id = graph_id(wg);
  return best;
}

}  // namespace qaoapca
