#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qaoapca/maxcut.hpp"

namespace qaoapca {

/// QAOA angles for p layers. The flat layout used everywhere outside this
/// struct is gamma_1..gamma_p followed by beta_1..beta_p.
struct ParameterVector {
  std::vector<double> gamma;
  std::vector<double> beta;

  ParameterVector() = default;
  ParameterVector(std::vector<double> gamma_, std::vector<double> beta_);

  static ParameterVector zeros(int layers);
  /// Splits a length-2p flat vector.
  static ParameterVector from_flat(std::span<const double> flat);

  int layers() const noexcept { return static_cast<int>(gamma.size()); }
  std::vector<double> flat() const;

  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;
};

using Amplitude = std::complex<double>;
using Statevector = std::vector<Amplitude>;

/// Applies the p QAOA layers to |+>^n: per layer the phase exp(-i gamma E(b))
/// on every amplitude, then exp(-i beta X_q) on every qubit.
Statevector evolve(const CostDiagonal& diag, const ParameterVector& params);

double norm_squared(std::span<const Amplitude> state);

/// <psi|H_C|psi> = sum_b |psi_b|^2 E(b).
double expectation(std::span<const Amplitude> state, const CostDiagonal& diag);

/// energy / cmin. Throws ValidationError when cmin >= 0.
double approximation_ratio(double energy, double cmin);

/// expectation(evolve(diag, params), diag).
double objective(const CostDiagonal& diag, const ParameterVector& params);

}  // namespace qaoapca
