#include "qaoapca/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qaoapca/error.hpp"
#include "qaoapca/seeding.hpp"

namespace qaoapca {

void ParameterMatrix::validate() const {
  if (layers < 1) throw ValidationError("parameter matrix needs p >= 1");
  if (!graph_ids.empty() && graph_ids.size() != rows.size()) {
    throw ValidationError("parameter matrix has " + std::to_string(graph_ids.size()) + " ids for " +
                          std::to_string(rows.size()) + " rows");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != static_cast<std::size_t>(dimension())) {
      throw ValidationError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                            " entries, expected 2p = " + std::to_string(dimension()));
    }
    for (const double v : rows[r]) {
      if (!std::isfinite(v)) throw ValidationError("row " + std::to_string(r) + " has a non-finite entry");
    }
  }
}

SymmetricEigen jacobi_eigen(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw ValidationError("jacobi_eigen needs a square matrix");
  }
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));

  for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) <= 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });

  SymmetricEigen out;
  for (const std::size_t idx : order) {
    out.values.push_back(a[idx][idx]);
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k][idx];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void orient(std::vector<double>& component) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < component.size(); ++i) {
    if (std::abs(component[i]) > std::abs(component[arg])) arg = i;
  }
  if (component[arg] < 0.0) {
    for (double& x : component) x = -x;
  }
}

std::vector<double> projections_of(const PcaModel& model, std::span<const double> row, std::size_t k) {
  std::vector<double> centred(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) centred[i] = row[i] - model.mean[i];
  std::vector<double> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = dot(centred, model.components[i]);
  return c;
}

void check_component_count(const PcaModel& model, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > model.component_count()) {
    throw ValidationError("component count " + std::to_string(k) + " outside [1, " +
                          std::to_string(model.component_count()) + "]");
  }
}

}  // namespace

PcaModel fit_pca(const ParameterMatrix& x) {
  x.validate();
  if (x.row_count() < 2) throw ValidationError("PCA needs at least 2 rows, got " + std::to_string(x.row_count()));
  const auto dim = static_cast<std::size_t>(x.dimension());
  const auto rows = static_cast<double>(x.row_count());

  PcaModel model;
  model.layers = x.layers;
  model.training_rows = x.row_count();
  model.degenerate = std::all_of(x.rows.begin(), x.rows.end(),
                                 [&](const std::vector<double>& r) { return r == x.rows.front(); });

  if (model.degenerate) {
    model.mean = x.rows.front();
  } else {
    model.mean.assign(dim, 0.0);
    for (const auto& r : x.rows)
      for (std::size_t j = 0; j < dim; ++j) model.mean[j] += r[j];
    for (double& m : model.mean) m /= rows;
  }

  std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
  for (const auto& r : x.rows) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double di = r[i] - model.mean[i];
      for (std::size_t j = i; j < dim; ++j) cov[i][j] += di * (r[j] - model.mean[j]);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      cov[i][j] /= rows - 1.0;
      cov[j][i] = cov[i][j];
    }
  }

  SymmetricEigen eig = jacobi_eigen(std::move(cov));
  for (std::size_t i = 0; i < dim; ++i) {
    model.eigenvalues.push_back(std::max(0.0, eig.values[i]));
    orient(eig.vectors[i]);
    model.components.push_back(std::move(eig.vectors[i]));
  }

  model.coef_min.assign(dim, 0.0);
  model.coef_max.assign(dim, 0.0);
  bool first = true;
  for (const auto& r : x.rows) {
    const std::vector<double> c = projections_of(model, r, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      model.coef_min[i] = first ? c[i] : std::min(model.coef_min[i], c[i]);
      model.coef_max[i] = first ? c[i] : std::max(model.coef_max[i], c[i]);
    }
    first = false;
  }
  return model;
}

ParameterVector expand(const PcaModel& model, std::span<const double> coeffs) {
  if (coeffs.empty() || coeffs.size() > model.component_count()) {
    throw ValidationError("expand got " + std::to_string(coeffs.size()) + " coefficients, model has " +
                          std::to_string(model.component_count()) + " components");
  }
  std::vector<double> theta = model.mean;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& v = model.components[i];
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] += coeffs[i] * v[j];
  }
  return ParameterVector::from_flat(theta);
}

std::vector<double> project(const PcaModel& model, const ParameterVector& theta, int k) {
  check_component_count(model, k);
  if (theta.layers() != model.layers) {
    throw ValidationError("parameter vector has " + std::to_string(theta.layers()) +
                          " layers, model has " + std::to_string(model.layers));
  }
  return projections_of(model, theta.flat(), static_cast<std::size_t>(k));
}

std::vector<double> sample_coefficients(const PcaModel& model, int k, const ParameterMatrix& x,
                                        std::uint64_t seed) {
  check_component_count(model, k);
  x.validate();
  if (x.layers != model.layers || x.rows.empty()) {
    throw ValidationError("training matrix does not match the model");
  }
  const auto kk = static_cast<std::size_t>(k);
  std::vector<double> lo(kk);
  std::vector<double> hi(kk);
  for (std::size_t r = 0; r < x.rows.size(); ++r) {
    const std::vector<double> c = projections_of(model, x.rows[r], kk);
    for (std::size_t i = 0; i < kk; ++i) {
      lo[i] = r == 0 ? c[i] : std::min(lo[i], c[i]);
      hi[i] = r == 0 ? c[i] : std::max(hi[i], c[i]);
    }
  }
  Rng rng(seed);
  std::vector<double> out(kk);
  for (std::size_t i = 0; i < kk; ++i) out[i] = rng.uniform(lo[i], hi[i]);
  return out;
}

std::vector<double> sample_coefficients(const PcaModel& model, int k, std::uint64_t seed) {
  check_component_count(model, k);
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.uniform(model.coef_min[i], model.coef_max[i]);
  return out;
}

double reconstruction_error(const PcaModel& model, const ParameterMatrix& x, int k) {
  check_component_count(model, k);
  double total = 0.0;
  for (const auto& r : x.rows) {
    const std::vector<double> c = projections_of(model, r, static_cast<std::size_t>(k));
    const std::vector<double> back = expand(model, c).flat();
    for (std::size_t j = 0; j < r.size(); ++j) total += (r[j] - back[j]) * (r[j] - back[j]);
  }
  return total;
}

}  // namespace qaoapca
