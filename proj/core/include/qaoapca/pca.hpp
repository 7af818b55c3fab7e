#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qaoapca/qaoa.hpp"

namespace qaoapca {

/// Trained QAOA parameters, one flat 2p row per training graph.
struct ParameterMatrix {
  int layers = 0;
  std::vector<std::string> graph_ids;  ///< empty, or one id per row
  std::vector<std::vector<double>> rows;

  int dimension() const noexcept { return 2 * layers; }
  std::size_t row_count() const noexcept { return rows.size(); }
  /// Throws ValidationError on ragged rows, wrong width, or non-finite entries.
  void validate() const;
};

/// Principal components of a ParameterMatrix.
struct PcaModel {
  int layers = 0;
  std::vector<double> mean;                     ///< length 2p
  std::vector<std::vector<double>> components;  ///< orthonormal, by decreasing eigenvalue
  std::vector<double> eigenvalues;              ///< nonincreasing, >= 0
  /// Range of the training rows' projections onto each component; used to draw
  /// random starting coefficients.
  std::vector<double> coef_min;
  std::vector<double> coef_max;
  std::size_t training_rows = 0;
  bool degenerate = false;  ///< every training row was identical

  int dimension() const noexcept { return 2 * layers; }
  std::size_t component_count() const noexcept { return components.size(); }
};

/// Covariance (n-1 divisor) of the mean-centred rows, eigendecomposed. Every
/// component is oriented so its largest-magnitude entry is positive (lowest
/// index on ties). Requires at least two rows.
PcaModel fit_pca(const ParameterMatrix& x);

/// mean + sum_i coeffs[i] * components[i], split into gamma and beta halves.
ParameterVector expand(const PcaModel& model, std::span<const double> coeffs);

/// c_i = <theta - mean, components[i]> for i < k.
std::vector<double> project(const PcaModel& model, const ParameterVector& theta, int k);

/// Each c_i uniform on [min_j proj_ij, max_j proj_ij] over the rows of `x`.
std::vector<double> sample_coefficients(const PcaModel& model, int k, const ParameterMatrix& x,
                                        std::uint64_t seed);
/// Same draw, using the projection ranges recorded in the model at fit time.
std::vector<double> sample_coefficients(const PcaModel& model, int k, std::uint64_t seed);

/// Squared reconstruction error of each row, summed, keeping k components.
double reconstruction_error(const PcaModel& model, const ParameterMatrix& x, int k);

struct SymmetricEigen {
  std::vector<double> values;                ///< descending
  std::vector<std::vector<double>> vectors;  ///< vectors[i] pairs with values[i]
};

/// Cyclic Jacobi rotations on a small dense symmetric matrix.
SymmetricEigen jacobi_eigen(std::vector<std::vector<double>> a);

// Model file: a versioned line-oriented text format,
//
//   format qaoapca-model 1
//   layers <p>
//   rows <training row count>
//   degenerate <0|1>
//   mean <2p values>
//   eigenvalues <m values>
//   coef_min <m values>
//   coef_max <m values>
//   components <m>
//   <m lines of 2p values>

void write_model(std::ostream& out, const PcaModel& model);
PcaModel read_model(std::istream& in);
void save_model(const std::string& path, const PcaModel& model);
PcaModel load_model(const std::string& path);

// Parameter-matrix CSV: header graph_id,gamma_1..gamma_p,beta_1..beta_p, then
// one row per graph with 17 significant digits. '#' lines are comments.

void write_parameter_matrix(std::ostream& out, const ParameterMatrix& x,
                            std::span<const std::string> header_comments = {});
ParameterMatrix read_parameter_matrix(std::istream& in);
void save_parameter_matrix(const std::string& path, const ParameterMatrix& x,
                           std::span<const std::string> header_comments = {});
ParameterMatrix load_parameter_matrix(const std::string& path);

}  // namespace qaoapca
