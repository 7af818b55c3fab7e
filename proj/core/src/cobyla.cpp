// Unconstrained COBYLA, following the structure of Powell's cobylb: the
// simplex is held as displacements sim[:, j] from the best vertex (stored in
// sim[:, k]), together with the inverse of the k x k displacement matrix. Each
// iteration either takes a trust-region step along the steepest descent of the
// linear interpolant, or repairs the simplex geometry, or halves rho.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qaoapca/error.hpp"
#include "qaoapca/optimizer.hpp"

namespace qaoapca {

void OptimizerConfig::validate() const {
  if (!(final_step > 0.0) || !(final_step < initial_step) || !std::isfinite(initial_step)) {
    throw ValidationError("optimizer needs 0 < final_step < initial_step (got final_step=" +
                          std::to_string(final_step) + ", initial_step=" +
                          std::to_string(initial_step) + ")");
  }
  if (max_evals < 1) throw ValidationError("optimizer max_evals must be >= 1");
}

namespace {

// Simplex acceptability and step constants from the reference implementation.
constexpr double kAlpha = 0.25;
constexpr double kBeta = 2.1;
constexpr double kGamma = 0.5;
constexpr double kDelta = 1.1;

using Matrix = std::vector<std::vector<double>>;

class Cobyla {
 public:
  Cobyla(const ScalarObjective& f, std::span<const double> x0, const OptimizerConfig& cfg)
      : f_(f),
        k_(x0.size()),
        cfg_(cfg),
        rho_(cfg.initial_step),
        x_(x0.begin(), x0.end()),
        sim_(k_, std::vector<double>(k_ + 1, 0.0)),
        simi_(k_, std::vector<double>(k_, 0.0)),
        fval_(k_ + 1, 0.0),
        grad_(k_, 0.0),
        dx_(k_, 0.0),
        vsig_(k_, 0.0),
        veta_(k_, 0.0) {
    for (std::size_t i = 0; i < k_; ++i) {
      sim_[i][k_] = x_[i];
      sim_[i][i] = rho_;
      simi_[i][i] = 1.0 / rho_;
    }
  }

  OptResult run() {
    build_initial_simplex();
    if (!budget_hit_) iterate();
    OptResult result;
    result.best_params = best_x_;
    result.best_value = best_f_;
    result.evals = evals_;
    result.converged = converged_;
    return result;
  }

 private:
  bool evaluate(std::span<const double> x, double& value) {
    if (evals_ >= cfg_.max_evals) {
      budget_hit_ = true;
      return false;
    }
    value = f_(x);
    ++evals_;
    if (!std::isfinite(value)) {
      if (evals_ == 1) throw ValidationError("objective is not finite at the starting point");
      throw std::runtime_error("objective returned a non-finite value");
    }
    if (evals_ == 1 || value < best_f_) {
      best_f_ = value;
      best_x_.assign(x.begin(), x.end());
    }
    return true;
  }

  void build_initial_simplex() {
    double f = 0.0;
    if (!evaluate(x_, f)) return;
    fval_[k_] = f;
    for (std::size_t j = 0; j < k_; ++j) {
      x_[j] += rho_;
      if (!evaluate(x_, f)) return;
      fval_[j] = f;
      if (fval_[k_] <= f) {
        x_[j] = sim_[j][k_];
      } else {
        // The new vertex is better: make it the pole.
        sim_[j][k_] = x_[j];
        fval_[j] = fval_[k_];
        fval_[k_] = f;
        for (std::size_t c = 0; c <= j; ++c) {
          sim_[j][c] = -rho_;
          double t = 0.0;
          for (std::size_t i = c; i <= j; ++i) t -= simi_[i][c];
          simi_[j][c] = t;
        }
      }
    }
  }

  void move_best_to_pole() {
    std::size_t nbest = k_;
    double fmin = fval_[k_];
    for (std::size_t j = 0; j < k_; ++j) {
      if (fval_[j] < fmin) {
        nbest = j;
        fmin = fval_[j];
      }
    }
    if (nbest == k_) return;
    std::swap(fval_[k_], fval_[nbest]);
    for (std::size_t i = 0; i < k_; ++i) {
      const double t = sim_[i][nbest];
      sim_[i][nbest] = 0.0;
      sim_[i][k_] += t;
      double col = 0.0;
      for (std::size_t c = 0; c < k_; ++c) {
        sim_[i][c] -= t;
        col -= simi_[c][i];
      }
      simi_[nbest][i] = col;
    }
  }

  bool inverse_is_accurate() const {
    double err = 0.0;
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        double t = i == j ? -1.0 : 0.0;
        for (std::size_t c = 0; c < k_; ++c) t += simi_[i][c] * sim_[c][j];
        err = std::max(err, std::abs(t));
      }
    }
    return err <= 0.1;
  }

  // Minus the gradient of the linear interpolant, as in the reference code.
  void update_descent_direction() {
    for (std::size_t i = 0; i < k_; ++i) {
      double t = 0.0;
      for (std::size_t j = 0; j < k_; ++j) t += (fval_[j] - fval_[k_]) * simi_[j][i];
      grad_[i] = -t;
    }
  }

  // Returns true when every vertex passes the sigma/eta tests.
  bool simplex_acceptable() {
    bool ok = true;
    const double parsig = kAlpha * rho_;
    const double pareta = kBeta * rho_;
    for (std::size_t j = 0; j < k_; ++j) {
      double wsig = 0.0;
      double weta = 0.0;
      for (std::size_t i = 0; i < k_; ++i) {
        wsig += simi_[j][i] * simi_[j][i];
        weta += sim_[i][j] * sim_[i][j];
      }
      vsig_[j] = 1.0 / std::sqrt(wsig);
      veta_[j] = std::sqrt(weta);
      if (vsig_[j] < parsig || veta_[j] > pareta) ok = false;
    }
    return ok;
  }

  // Replace vertex `jdrop` by pole + dx_ and update the inverse.
  void replace_vertex(std::size_t jdrop) {
    double t = 0.0;
    for (std::size_t i = 0; i < k_; ++i) {
      sim_[i][jdrop] = dx_[i];
      t += simi_[jdrop][i] * dx_[i];
    }
    for (std::size_t i = 0; i < k_; ++i) simi_[jdrop][i] /= t;
    for (std::size_t j = 0; j < k_; ++j) {
      if (j == jdrop) continue;
      double s = 0.0;
      for (std::size_t i = 0; i < k_; ++i) s += simi_[j][i] * dx_[i];
      for (std::size_t i = 0; i < k_; ++i) simi_[j][i] -= s * simi_[jdrop][i];
    }
  }

  void iterate() {
    bool trust_branch = true;  // IBRNCH in the reference code
    for (;;) {
      move_best_to_pole();
      if (!inverse_is_accurate()) return;  // rounding has destroyed the simplex
      update_descent_direction();
      const bool acceptable = simplex_acceptable();

      if (!trust_branch && !acceptable) {
        // Geometry step: move the worst-shaped vertex.
        const double pareta = kBeta * rho_;
        std::size_t jdrop = k_;
        double worst = pareta;
        for (std::size_t j = 0; j < k_; ++j) {
          if (veta_[j] > worst) {
            jdrop = j;
            worst = veta_[j];
          }
        }
        if (jdrop == k_) {
          for (std::size_t j = 0; j < k_; ++j) {
            if (vsig_[j] < worst) {
              jdrop = j;
              worst = vsig_[j];
            }
          }
        }
        const double scale = kGamma * rho_ * vsig_[jdrop];
        double slope = 0.0;
        for (std::size_t i = 0; i < k_; ++i) {
          dx_[i] = scale * simi_[jdrop][i];
          slope += grad_[i] * dx_[i];
        }
        if (0.0 > slope + slope) {
          for (double& d : dx_) d = -d;
        }
        replace_vertex(jdrop);
        for (std::size_t i = 0; i < k_; ++i) x_[i] = sim_[i][k_] + dx_[i];
        double f = 0.0;
        if (!evaluate(x_, f)) return;
        fval_[jdrop] = f;
        trust_branch = true;
        continue;
      }

      // Trust-region step: minimize the linear model over the ball of radius rho.
      double gnorm = 0.0;
      for (const double g : grad_) gnorm += g * g;
      gnorm = std::sqrt(gnorm);
      bool reduce = false;
      if (gnorm == 0.0) {
        trust_branch = true;
        reduce = true;
      } else {
        double predicted = 0.0;
        for (std::size_t i = 0; i < k_; ++i) {
          dx_[i] = rho_ * grad_[i] / gnorm;
          predicted += grad_[i] * dx_[i];
        }
        for (std::size_t i = 0; i < k_; ++i) x_[i] = sim_[i][k_] + dx_[i];
        trust_branch = true;
        double f = 0.0;
        if (!evaluate(x_, f)) return;

        double actual = fval_[k_] - f;
        if (f == fval_[k_]) {
          predicted = 0.0;
          actual = 0.0;
        }

        // Choose the vertex to give up for the new point, if any.
        double ratio = actual <= 0.0 ? 1.0 : 0.0;
        std::size_t jdrop = k_;
        std::vector<double> sigbar(k_, 0.0);
        for (std::size_t j = 0; j < k_; ++j) {
          double t = 0.0;
          for (std::size_t i = 0; i < k_; ++i) t += simi_[j][i] * dx_[i];
          t = std::abs(t);
          if (t > ratio) {
            jdrop = j;
            ratio = t;
          }
          sigbar[j] = t * vsig_[j];
        }
        const double parsig = kAlpha * rho_;
        double edgmax = kDelta * rho_;
        std::size_t far = k_;
        for (std::size_t j = 0; j < k_; ++j) {
          if (sigbar[j] >= parsig || sigbar[j] >= vsig_[j]) {
            double t = veta_[j];
            if (actual > 0.0) {
              t = 0.0;
              for (std::size_t i = 0; i < k_; ++i) t += (dx_[i] - sim_[i][j]) * (dx_[i] - sim_[i][j]);
              t = std::sqrt(t);
            }
            if (t > edgmax) {
              far = j;
              edgmax = t;
            }
          }
        }
        if (far < k_) jdrop = far;

        if (jdrop == k_) {
          reduce = true;
        } else {
          replace_vertex(jdrop);
          fval_[jdrop] = f;
          if (actual > 0.0 && actual >= 0.1 * predicted) continue;
          reduce = true;
        }
      }

      if (reduce) {
        if (!acceptable) {
          trust_branch = false;
          continue;
        }
        if (rho_ > cfg_.final_step) {
          rho_ *= 0.5;
          if (rho_ <= 1.5 * cfg_.final_step) rho_ = cfg_.final_step;
          continue;
        }
        converged_ = true;
        return;
      }
    }
  }

  const ScalarObjective& f_;
  std::size_t k_;
  OptimizerConfig cfg_;
  double rho_;
  std::vector<double> x_;
  Matrix sim_;
  Matrix simi_;
  std::vector<double> fval_;
  std::vector<double> grad_;
  std::vector<double> dx_;
  std::vector<double> vsig_;
  std::vector<double> veta_;

  int evals_ = 0;
  bool budget_hit_ = false;
  bool converged_ = false;
  std::vector<double> best_x_;
  double best_f_ = std::numeric_limits<double>::infinity();
};

}  // namespace

OptResult minimize(const ScalarObjective& f, std::span<const double> x0, const OptimizerConfig& cfg) {
  cfg.validate();
  if (x0.empty()) throw ValidationError("minimize needs at least one variable");
  return Cobyla(f, x0, cfg).run();
}

}  // namespace qaoapca
