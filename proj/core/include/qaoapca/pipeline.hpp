#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qaoapca/graph.hpp"
#include "qaoapca/optimizer.hpp"
#include "qaoapca/pca.hpp"
#include "qaoapca/records.hpp"
#include "qaoapca/stats.hpp"
#include "qaoapca/training.hpp"

namespace qaoapca {

enum class TrainingSet { unweighted, weighted };
enum class BaselineKind { same_layers, same_params };

std::string_view to_string(TrainingSet s);
TrainingSet parse_training_set(std::string_view s);
std::string_view to_string(BaselineKind k);
BaselineKind parse_baseline_kind(std::string_view s);

/// Layer counts accepted by the pipeline.
bool is_supported_layers(int layers);

struct TrainingConfig {
  TrainingSet training_set = TrainingSet::unweighted;
  int layers = 2;
  int min_vertices = 5;
  int max_vertices = 7;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
  TqaConfig tqa;

  void validate() const;
  /// Hex digest of every field; identifies checkpoints and provenance headers.
  std::string hash() const;
};

struct EvalConfig {
  int eval_vertices = 8;
  std::size_t count = 1000;
  int layers = 2;
  int components = 2;
  int restarts = 5;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;

  /// components must be even, positive and at most `layers`.
  void validate() const;
  std::string hash() const;
};

/// Execution knobs that never change results.
struct RunOptions {
  unsigned workers = 0;         ///< 0 = all cores
  std::string checkpoint_path;  ///< empty disables checkpointing
  std::size_t checkpoint_every = 50;
};

/// Canonical-key string of the unweighted structure.
std::string graph_id(const Graph& g);
std::string graph_id(const WeightedGraph& wg);

/// All connected non-isomorphic graphs on min..max vertices, ordered by vertex
/// count then canonical key; weighted sets draw one weight vector per graph.
std::vector<WeightedGraph> build_training_set(const TrainingConfig& cfg);

/// `count` sampled n-vertex classes with random weights.
std::vector<WeightedGraph> build_evaluation_set(int vertices, std::size_t count, std::uint64_t seed);

struct TrainingOutput {
  ParameterMatrix matrix;
  std::vector<RunRecord> records;
};

/// train_graph on every graph; rows follow graph order.
TrainingOutput run_training(std::span<const WeightedGraph> graphs, int layers, const TqaConfig& tqa,
                            const OptimizerConfig& optimizer, const RunOptions& options = {});
TrainingOutput run_training(const TrainingConfig& cfg, const RunOptions& options = {});

/// QAOA-PCA: per graph, `restarts` COBYLA runs over the first k coefficients
/// from random starts; the restart with the best approximation ratio wins.
std::vector<RunRecord> evaluate_pca(const EvalConfig& cfg, const PcaModel& model,
                                    std::span<const WeightedGraph> eval_set,
                                    const RunOptions& options = {});

/// Standard QAOA with the TQA multistart, tagged Method::standard.
std::vector<RunRecord> evaluate_standard(int layers, std::span<const WeightedGraph> eval_set,
                                         const TqaConfig& tqa, const OptimizerConfig& optimizer,
                                         const RunOptions& options = {});

/// Layer count of the standard-QAOA baseline for a QAOA-PCA configuration.
int baseline_layers(BaselineKind kind, int layers, int components);

struct MetricComparison {
  double median_pca = 0.0;
  double median_baseline = 0.0;
  SignedRankResult test;
};

struct ComparisonRow {
  TrainingSet training_set = TrainingSet::unweighted;
  int layers = 0;
  int param_count = 0;
  BaselineKind baseline_kind = BaselineKind::same_layers;
  MetricComparison evals;
  MetricComparison approx_ratio;
};

/// Paired tests on evals and approximation ratio. Records must be aligned by
/// graph_id; otherwise ValidationError lists the offending ids.
ComparisonRow compare(std::span<const RunRecord> pca, std::span<const RunRecord> baseline,
                      BaselineKind kind, TrainingSet training_set = TrainingSet::unweighted);

/// One QAOA-PCA configuration of the results table.
struct TableConfig {
  TrainingSet training_set;
  int layers;
  int components;

  friend bool operator==(const TableConfig&, const TableConfig&) = default;
};

/// The 12 configurations: both training sets x {(2,2), (4,2), (4,4), (8,2), (8,4), (8,8)}.
std::vector<TableConfig> table_configurations();

}  // namespace qaoapca
