#include "qaoapca/qaoa.hpp"

#include <cmath>

#include "qaoapca/error.hpp"

namespace qaoapca {

ParameterVector::ParameterVector(std::vector<double> gamma_, std::vector<double> beta_)
    : gamma(std::move(gamma_)), beta(std::move(beta_)) {
  if (gamma.empty() || gamma.size() != beta.size()) {
    throw ValidationError("gamma and beta must both have p >= 1 entries (got " +
                          std::to_string(gamma.size()) + " and " + std::to_string(beta.size()) + ")");
  }
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!std::isfinite(gamma[i]) || !std::isfinite(beta[i])) {
      throw ValidationError("QAOA angles must be finite");
    }
  }
}

ParameterVector ParameterVector::zeros(int layers) {
  if (layers < 1) throw ValidationError("layer count must be >= 1");
  const auto p = static_cast<std::size_t>(layers);
  return ParameterVector(std::vector<double>(p, 0.0), std::vector<double>(p, 0.0));
}

ParameterVector ParameterVector::from_flat(std::span<const double> flat) {
  if (flat.empty() || flat.size() % 2 != 0) {
    throw ValidationError("flat parameter vector must have even length 2p >= 2, got " +
                          std::to_string(flat.size()));
  }
  const std::size_t p = flat.size() / 2;
  return ParameterVector(std::vector<double>(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p)),
                         std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end()));
}

std::vector<double> ParameterVector::flat() const {
  std::vector<double> out(gamma);
  out.insert(out.end(), beta.begin(), beta.end());
  return out;
}

Statevector evolve(const CostDiagonal& diag, const ParameterVector& params) {
  const int n = diag.qubit_count();
  if (n < 1) throw ValidationError("cost diagonal is empty");
  if (params.gamma.size() != params.beta.size()) throw ValidationError("gamma/beta length mismatch");

  const std::size_t dim = diag.size();
  const auto energies = diag.energies();
  Statevector state(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));

  // Interleaved (re, im) view; std::complex guarantees this layout.
  double* amp = reinterpret_cast<double*>(state.data());

  for (std::size_t layer = 0; layer < params.gamma.size(); ++layer) {
    const double gamma = params.gamma[layer];
    if (gamma != 0.0) {
      for (std::size_t b = 0; b < dim; ++b) {
        const double phase = gamma * energies[b];
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        const double re = amp[2 * b];
        const double im = amp[2 * b + 1];
        // (re + i im)(c - i s)
        amp[2 * b] = re * c + im * s;
        amp[2 * b + 1] = im * c - re * s;
      }
    }

    const double beta = params.beta[layer];
    if (beta == 0.0) continue;
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    for (int q = 0; q < n; ++q) {
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; ++i) {
          const std::size_t j = i + stride;
          const double xr = amp[2 * i];
          const double xi = amp[2 * i + 1];
          const double yr = amp[2 * j];
          const double yi = amp[2 * j + 1];
          // x' = c x - i s y,  y' = c y - i s x
          amp[2 * i] = c * xr + s * yi;
          amp[2 * i + 1] = c * xi - s * yr;
          amp[2 * j] = c * yr + s * xi;
          amp[2 * j + 1] = c * yi - s * xr;
        }
      }
    }
  }
  return state;
}

double norm_squared(std::span<const Amplitude> state) {
  double total = 0.0;
  for (const Amplitude& a : state) total += std::norm(a);
  return total;
}

double expectation(std::span<const Amplitude> state, const CostDiagonal& diag) {
  if (state.size() != diag.size()) {
    throw ValidationError("statevector has " + std::to_string(state.size()) +
                          " amplitudes, cost diagonal has " + std::to_string(diag.size()));
  }
  const auto energies = diag.energies();
  double total = 0.0;
  for (std::size_t b = 0; b < state.size(); ++b) total += std::norm(state[b]) * energies[b];
  return total;
}

double approximation_ratio(double energy, double cmin) {
  if (!(cmin < 0.0)) {
    throw ValidationError("approximation ratio needs C_min < 0 (graph has no positive-weight edge)");
  }
  return energy / cmin;
}

double objective(const CostDiagonal& diag, const ParameterVector& params) {
  return expectation(evolve(diag, params), diag);
}

}  // namespace qaoapca
