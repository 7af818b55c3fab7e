#include "qaoapca/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "qaoapca/error.hpp"
#include "qaoapca/executor.hpp"
#include "qaoapca/graph_io.hpp"
#include "qaoapca/maxcut.hpp"
#include "qaoapca/seeding.hpp"
#include "qaoapca/text.hpp"

namespace qaoapca {

std::string_view to_string(TrainingSet s) { return s == TrainingSet::unweighted ? "unweighted" : "weighted"; }

TrainingSet parse_training_set(std::string_view s) {
  if (s == "unweighted") return TrainingSet::unweighted;
  if (s == "weighted") return TrainingSet::weighted;
  throw ValidationError("unknown training set '" + std::string(s) + "' (expected unweighted or weighted)");
}

std::string_view to_string(BaselineKind k) {
  return k == BaselineKind::same_layers ? "same_layers" : "same_params";
}

BaselineKind parse_baseline_kind(std::string_view s) {
  if (s == "same_layers") return BaselineKind::same_layers;
  if (s == "same_params") return BaselineKind::same_params;
  throw ValidationError("unknown baseline kind '" + std::string(s) + "' (expected same_layers or same_params)");
}

bool is_supported_layers(int layers) { return layers == 1 || layers == 2 || layers == 4 || layers == 8; }

namespace {

void describe(std::ostream& out, const OptimizerConfig& o) {
  out << "|opt=" << text::shortest(o.initial_step) << ',' << text::shortest(o.final_step) << ','
      << o.max_evals;
}

void describe(std::ostream& out, const TqaConfig& t) {
  out << "|tqa=";
  for (const double dt : t.dt_grid) out << text::shortest(dt) << ';';
}

std::string digest_graphs(std::span<const WeightedGraph> graphs) {
  std::ostringstream out;
  write_graph_set(out, graphs);
  return hex64(stable_hash(out.str()));
}

std::string digest_model(const PcaModel& model) {
  std::ostringstream out;
  write_model(out, model);
  return hex64(stable_hash(out.str()));
}

// Append-only log of finished records, one "<config hash>,<record>" per line.
// Entries for other configurations are ignored, as is a torn final line.
class Checkpoint {
 public:
  Checkpoint(std::string path, std::string config_hash, std::size_t every)
      : path_(std::move(path)), hash_(std::move(config_hash)), every_(std::max<std::size_t>(every, 1)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      if (comma == std::string::npos || line.substr(0, comma) != hash_) continue;
      try {
        RunRecord r = parse_record(std::string_view(line).substr(comma + 1));
        done_.insert_or_assign(r.graph_id, std::move(r));
      } catch (const FormatError&) {
      }
    }
  }

  std::optional<RunRecord> find(const std::string& graph_id) const {
    const auto it = done_.find(graph_id);
    if (it == done_.end()) return std::nullopt;
    return it->second;
  }

  void add(const RunRecord& r) {
    if (path_.empty()) return;
    std::lock_guard lock(mutex_);
    pending_.push_back(hash_ + ',' + format_record(r));
    if (pending_.size() >= every_) flush_locked();
  }

  void flush() {
    if (path_.empty()) return;
    std::lock_guard lock(mutex_);
    flush_locked();
  }

 private:
  void flush_locked() {
    if (pending_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot append to checkpoint '" + path_ + "'");
    for (const std::string& line : pending_) out << line << '\n';
    out.flush();
    if (!out) throw IoError("error writing checkpoint '" + path_ + "'");
    pending_.clear();
  }

  std::string path_;
  std::string hash_;
  std::size_t every_;
  std::map<std::string, RunRecord> done_;
  std::vector<std::string> pending_;
  std::mutex mutex_;
};

// Runs `solve` for every graph not already in the checkpoint; output follows
// input order whatever the scheduling.
template <typename Solve>
std::vector<RunRecord> run_per_graph(std::span<const WeightedGraph> graphs, const RunOptions& options,
                                     const std::string& config_hash, Solve&& solve) {
  Checkpoint checkpoint(options.checkpoint_path, config_hash, options.checkpoint_every);
  std::vector<std::optional<RunRecord>> results(graphs.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    results[i] = checkpoint.find(graph_id(graphs[i]));
    if (!results[i]) todo.push_back(i);
  }
  parallel_for(todo.size(), options.workers, [&](std::size_t t) {
    const std::size_t i = todo[t];
    RunRecord r = solve(graphs[i]);
    checkpoint.add(r);
    results[i] = std::move(r);
  });
  checkpoint.flush();
  std::vector<RunRecord> out;
  out.reserve(results.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace

void TrainingConfig::validate() const {
  if (!is_supported_layers(layers)) {
    throw ValidationError("layers must be one of 1, 2, 4, 8 (got " + std::to_string(layers) + ")");
  }
  if (min_vertices < 2 || max_vertices > 7 || min_vertices > max_vertices) {
    throw ValidationError("training vertex range must satisfy 2 <= min <= max <= 7 (got " +
                          std::to_string(min_vertices) + ".." + std::to_string(max_vertices) + ")");
  }
  optimizer.validate();
  tqa.validate();
}

std::string TrainingConfig::hash() const {
  std::ostringstream out;
  out << "training|set=" << to_string(training_set) << "|layers=" << layers << "|range=" << min_vertices
      << ".." << max_vertices << "|seed=" << seed;
  describe(out, optimizer);
  describe(out, tqa);
  return hex64(stable_hash(out.str()));
}

void EvalConfig::validate() const {
  if (!is_supported_layers(layers)) {
    throw ValidationError("layers must be one of 1, 2, 4, 8 (got " + std::to_string(layers) + ")");
  }
  if (components < 2 || components % 2 != 0 || components > layers) {
    throw ValidationError("components must be even and in [2, layers = " + std::to_string(layers) +
                          "] (got " + std::to_string(components) + ")");
  }
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  if (eval_vertices < 2 || eval_vertices > kMaxCanonicalVertices) {
    throw ValidationError("evaluation graphs need 2..10 vertices");
  }
  if (count < 1) throw ValidationError("evaluation set size must be >= 1");
  optimizer.validate();
}

std::string EvalConfig::hash() const {
  std::ostringstream out;
  out << "eval|n=" << eval_vertices << "|count=" << count << "|layers=" << layers << "|k=" << components
      << "|restarts=" << restarts << "|seed=" << seed;
  describe(out, optimizer);
  return hex64(stable_hash(out.str()));
}

std::string graph_id(const Graph& g) { return canonical_key(g).to_string(); }
std::string graph_id(const WeightedGraph& wg) { return graph_id(wg.graph()); }

std::vector<WeightedGraph> build_training_set(const TrainingConfig& cfg) {
  if (cfg.min_vertices < 2 || cfg.max_vertices > 7 || cfg.min_vertices > cfg.max_vertices) {
    throw ValidationError("training vertex range must satisfy 2 <= min <= max <= 7");
  }
  std::vector<WeightedGraph> out;
  for (int n = cfg.min_vertices; n <= cfg.max_vertices; ++n) {
    for (Graph& g : enumerate_connected_nonisomorphic(n)) {
      if (cfg.training_set == TrainingSet::weighted) {
        const std::uint64_t seed = derive_seed(cfg.seed, "train-weights", graph_id(g), 0);
        out.push_back(assign_random_weights(g, seed));
      } else {
        out.push_back(WeightedGraph::unweighted(std::move(g)));
      }
    }
  }
  return out;
}

std::vector<WeightedGraph> build_evaluation_set(int vertices, std::size_t count, std::uint64_t seed) {
  const std::vector<Graph> graphs =
      sample_connected_nonisomorphic(vertices, count, derive_seed(seed, "eval-graphs", "", 0));
  std::vector<WeightedGraph> out;
  out.reserve(graphs.size());
  for (const Graph& g : graphs) {
    out.push_back(assign_random_weights(g, derive_seed(seed, "eval-weights", graph_id(g), 0)));
  }
  return out;
}

TrainingOutput run_training(std::span<const WeightedGraph> graphs, int layers, const TqaConfig& tqa,
                            const OptimizerConfig& optimizer, const RunOptions& options) {
  if (layers < 1) throw ValidationError("layers must be >= 1");
  tqa.validate();
  optimizer.validate();

  std::ostringstream key;
  key << "train|graphs=" << digest_graphs(graphs) << "|layers=" << layers;
  describe(key, optimizer);
  describe(key, tqa);

  TrainingOutput out;
  out.records = run_per_graph(graphs, options, hex64(stable_hash(key.str())), [&](const WeightedGraph& wg) {
    return train_graph(wg, layers, tqa, optimizer).record;
  });
  out.matrix.layers = layers;
  for (const RunRecord& r : out.records) {
    out.matrix.graph_ids.push_back(r.graph_id);
    out.matrix.rows.push_back(r.best_params);
  }
  return out;
}

TrainingOutput run_training(const TrainingConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const std::vector<WeightedGraph> graphs = build_training_set(cfg);
  return run_training(graphs, cfg.layers, cfg.tqa, cfg.optimizer, options);
}

std::vector<RunRecord> evaluate_pca(const EvalConfig& cfg, const PcaModel& model,
                                    std::span<const WeightedGraph> eval_set, const RunOptions& options) {
  cfg.validate();
  if (model.layers != cfg.layers) {
    throw ValidationError("model was fit for " + std::to_string(model.layers) + " layers, config asks for " +
                          std::to_string(cfg.layers));
  }
  if (static_cast<std::size_t>(cfg.components) > model.component_count()) {
    throw ValidationError("components must be <= " + std::to_string(model.component_count()) +
                          " (the model's component count), got " + std::to_string(cfg.components));
  }

  std::ostringstream key;
  key << "pca|" << cfg.hash() << "|model=" << digest_model(model) << "|graphs=" << digest_graphs(eval_set);

  return run_per_graph(eval_set, options, hex64(stable_hash(key.str())), [&](const WeightedGraph& wg) {
    const std::string id = graph_id(wg);
    const CostDiagonal diag = cost_diagonal(wg);
    const double cmin = brute_force_cmin(diag).cmin;
    const ScalarObjective f = [&](std::span<const double> c) { return objective(diag, expand(model, c)); };

    RunRecord best;
    bool have_best = false;
    std::vector<double> best_coeffs;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
      const std::uint64_t seed = derive_seed(cfg.seed, "pca-init", id, static_cast<std::uint64_t>(restart));
      const std::vector<double> c0 = sample_coefficients(model, cfg.components, seed);
      const OptResult run = minimize(f, c0, cfg.optimizer);
      const double ratio = approximation_ratio(run.best_value, cmin);
      if (have_best && !(ratio > best.approx_ratio)) continue;
      have_best = true;
      best.approx_ratio = ratio;
      best.evals = run.evals;
      best_coeffs = run.best_params;
    }
    best.graph_id = id;
    best.method = Method::pca;
    best.layers = cfg.layers;
    best.param_count = cfg.components;
    best.best_params = expand(model, best_coeffs).flat();
    return best;
  });
}

std::vector<RunRecord> evaluate_standard(int layers, std::span<const WeightedGraph> eval_set,
                                         const TqaConfig& tqa, const OptimizerConfig& optimizer,
                                         const RunOptions& options) {
  if (!is_supported_layers(layers)) {
    throw ValidationError("layers must be one of 1, 2, 4, 8 (got " + std::to_string(layers) + ")");
  }
  return run_training(eval_set, layers, tqa, optimizer, options).records;
}

int baseline_layers(BaselineKind kind, int layers, int components) {
  if (kind == BaselineKind::same_layers) return layers;
  if (components < 2 || components % 2 != 0) {
    throw ValidationError("same-parameter baseline needs an even component count, got " +
                          std::to_string(components));
  }
  return components / 2;
}

ComparisonRow compare(std::span<const RunRecord> pca, std::span<const RunRecord> baseline, BaselineKind kind,
                      TrainingSet training_set) {
  std::vector<std::string> offending;
  const std::size_t common = std::min(pca.size(), baseline.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (pca[i].graph_id != baseline[i].graph_id) offending.push_back(pca[i].graph_id + "/" + baseline[i].graph_id);
  }
  for (std::size_t i = common; i < pca.size(); ++i) offending.push_back(pca[i].graph_id + "/-");
  for (std::size_t i = common; i < baseline.size(); ++i) offending.push_back("-/" + baseline[i].graph_id);
  if (!offending.empty()) {
    std::string msg = "record lists are not aligned by graph_id (" + std::to_string(offending.size()) +
                      " mismatches):";
    for (std::size_t i = 0; i < offending.size() && i < 20; ++i) msg += ' ' + offending[i];
    if (offending.size() > 20) msg += " ...";
    throw ValidationError(msg);
  }
  if (pca.empty()) throw ValidationError("cannot compare empty record lists");

  PairedSample evals;
  PairedSample ratio;
  for (std::size_t i = 0; i < pca.size(); ++i) {
    evals.a.push_back(pca[i].evals);
    evals.b.push_back(baseline[i].evals);
    ratio.a.push_back(pca[i].approx_ratio);
    ratio.b.push_back(baseline[i].approx_ratio);
  }

  ComparisonRow row;
  row.training_set = training_set;
  row.layers = pca.front().layers;
  row.param_count = pca.front().param_count;
  row.baseline_kind = kind;
  row.evals = {median(evals.a), median(evals.b), wilcoxon_signed_rank(evals)};
  row.approx_ratio = {median(ratio.a), median(ratio.b), wilcoxon_signed_rank(ratio)};
  return row;
}

std::vector<TableConfig> table_configurations() {
  std::vector<TableConfig> out;
  for (const TrainingSet set : {TrainingSet::unweighted, TrainingSet::weighted}) {
    for (const int layers : {2, 4, 8}) {
      for (int k = 2; k <= layers; k *= 2) out.push_back({set, layers, k});
    }
  }
  return out;
}

}  // namespace qaoapca
