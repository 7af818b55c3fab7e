#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qaoapca {

struct OptimizerConfig {
  double initial_step = 0.5;  ///< initial trust-region radius
  double final_step = 1e-4;   ///< radius at which the search stops
  int max_evals = 1000;

  /// Throws ValidationError unless 0 < final_step < initial_step and max_evals >= 1.
  void validate() const;
};

struct OptResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  int evals = 0;  ///< objective calls, including the initial simplex
  bool converged = false;
};

using ScalarObjective = std::function<double(std::span<const double>)>;

/// COBYLA (Powell's constrained optimization by linear approximation) without
/// constraints: linear models interpolated on a simplex of k+1 points inside a
/// shrinking trust region. Returns the best point evaluated.
///
/// Throws ValidationError when x0 is empty or f(x0) is not finite, and
/// std::runtime_error if f returns a non-finite value later on.
OptResult minimize(const ScalarObjective& f, std::span<const double> x0,
                   const OptimizerConfig& cfg = {});

}  // namespace qaoapca
