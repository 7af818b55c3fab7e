// qaoapca: command-line driver for the QAOA-PCA experiment pipeline.
//
// Exit codes: 0 success, 1 invalid arguments or malformed input, 2 runtime failure.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qaoapca/error.hpp"
#include "qaoapca/graph_io.hpp"
#include "qaoapca/pca.hpp"
#include "qaoapca/pipeline.hpp"
#include "qaoapca/records.hpp"
#include "qaoapca/report.hpp"
#include "qaoapca/seeding.hpp"
#include "qaoapca/text.hpp"

namespace fs = std::filesystem;
using namespace qaoapca;

namespace {

struct CommonOptions {
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out;
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool out_required = true) {
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->capture_default_str();
  auto* out = cmd->add_option("--out", o.out, "Output file");
  if (out_required) out->required();
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp line from outputs");
}

void add_optimizer(CLI::App* cmd, OptimizerConfig& o) {
  cmd->add_option("--initial-step", o.initial_step, "COBYLA initial trust radius")->capture_default_str();
  cmd->add_option("--final-step", o.final_step, "COBYLA final trust radius")->capture_default_str();
  cmd->add_option("--max-evals", o.max_evals, "COBYLA objective-evaluation budget")->capture_default_str();
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

// Comment lines placed at the top of every output file.
std::vector<std::string> provenance(std::string_view command, const std::string& config_hash,
                                    const CommonOptions& o) {
  std::vector<std::string> lines{"qaoapca " + std::string(command) + " config_hash=" + config_hash +
                                 " seed=" + std::to_string(o.seed)};
  if (!o.no_timestamp) lines.push_back("generated " + timestamp());
  return lines;
}

void log_run(std::string_view command, const std::string& config_hash, const CommonOptions& o) {
  std::cerr << "[qaoapca] " << command << " config_hash=" << config_hash << " seed=" << o.seed << '\n';
}

std::string file_digest(const std::string& path) { return hex64(stable_hash(text::read_file(path))); }

std::string describe(const OptimizerConfig& o) {
  return text::shortest(o.initial_step) + "," + text::shortest(o.final_step) + "," + std::to_string(o.max_evals);
}

std::string describe(const TqaConfig& t) {
  std::string s;
  for (const double dt : t.dt_grid) s += text::shortest(dt) + ";";
  return s;
}

std::string checkpoint_path(const std::string& requested, const std::string& out) {
  if (requested == "none") return {};
  return requested.empty() ? out + ".checkpoint" : requested;
}

void remove_checkpoint(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  fs::remove(path, ec);
}

// ---- gen-graphs -------------------------------------------------------------

struct GenGraphsOptions {
  CommonOptions common;
  std::string n = "5..7";
  std::size_t count = 0;
  bool weighted = false;
};

std::pair<int, int> parse_range(const std::string& range) {
  const auto dots = range.find("..");
  try {
    if (dots == std::string::npos) {
      const auto n = static_cast<int>(text::parse_int(range));
      return {n, n};
    }
    return {static_cast<int>(text::parse_int(range.substr(0, dots))),
            static_cast<int>(text::parse_int(range.substr(dots + 2)))};
  } catch (const FormatError&) {
    throw ValidationError("--n expects N or A..B, got '" + range + "'");
  }
}

void run_gen_graphs(const GenGraphsOptions& o) {
  const auto [lo, hi] = parse_range(o.n);
  std::vector<WeightedGraph> graphs;
  std::ostringstream cfg;
  cfg << "gen-graphs|n=" << lo << ".." << hi << "|count=" << o.count << "|weighted=" << o.weighted
      << "|seed=" << o.common.seed;
  const std::string hash = hex64(stable_hash(cfg.str()));
  log_run("gen-graphs", hash, o.common);

  if (o.count > 0) {
    if (lo != hi) throw ValidationError("--count samples a single vertex count; pass --n N");
    graphs = build_evaluation_set(lo, o.count, o.common.seed);
    if (!o.weighted) {
      for (WeightedGraph& wg : graphs) wg = WeightedGraph::unweighted(wg.graph());
    }
  } else {
    TrainingConfig tc;
    tc.training_set = o.weighted ? TrainingSet::weighted : TrainingSet::unweighted;
    tc.min_vertices = lo;
    tc.max_vertices = hi;
    tc.seed = o.common.seed;
    graphs = build_training_set(tc);
  }
  save_graph_set(o.common.out, graphs, provenance("gen-graphs", hash, o.common));
  std::cerr << "[qaoapca] wrote " << graphs.size() << " graphs to " << o.common.out << '\n';
}

// ---- train ------------------------------------------------------------------

struct TrainOptions {
  CommonOptions common;
  std::string graphs;
  int layers = 2;
  std::string records;
  std::string checkpoint;
  OptimizerConfig optimizer;
  TqaConfig tqa;
};

void run_train(const TrainOptions& o) {
  if (!is_supported_layers(o.layers)) throw ValidationError("--layers must be one of 1, 2, 4, 8");
  o.optimizer.validate();
  o.tqa.validate();
  const std::string hash = hex64(stable_hash("train|graphs=" + file_digest(o.graphs) + "|layers=" +
                                             std::to_string(o.layers) + "|opt=" + describe(o.optimizer) +
                                             "|tqa=" + describe(o.tqa)));
  log_run("train", hash, o.common);
  const std::vector<WeightedGraph> graphs = load_graph_set(o.graphs);

  RunOptions run;
  run.workers = o.common.workers;
  run.checkpoint_path = checkpoint_path(o.checkpoint, o.common.out);
  const TrainingOutput out = run_training(graphs, o.layers, o.tqa, o.optimizer, run);

  const auto header = provenance("train", hash, o.common);
  save_parameter_matrix(o.common.out, out.matrix, header);
  if (!o.records.empty()) save_records(o.records, out.records, header);
  remove_checkpoint(run.checkpoint_path);
  std::cerr << "[qaoapca] trained " << out.records.size() << " graphs\n";
}

// ---- fit-pca ----------------------------------------------------------------

struct FitOptions {
  CommonOptions common;
  std::string matrix;
};

void run_fit(const FitOptions& o) {
  const std::string hash = hex64(stable_hash("fit-pca|matrix=" + file_digest(o.matrix)));
  log_run("fit-pca", hash, o.common);
  const ParameterMatrix x = load_parameter_matrix(o.matrix);
  const PcaModel model = fit_pca(x);
  if (model.degenerate) std::cerr << "[qaoapca] warning: all training rows are identical\n";

  std::ostringstream body;
  for (const std::string& line : provenance("fit-pca", hash, o.common)) body << "# " << line << '\n';
  write_model(body, model);
  text::write_file(o.common.out, body.str());

  double total = 0.0;
  for (const double v : model.eigenvalues) total += v;
  std::cerr << "[qaoapca] explained variance:";
  for (const double v : model.eigenvalues) std::cerr << ' ' << text::shortest(total > 0 ? v / total : 0.0);
  std::cerr << '\n';
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateOptions {
  CommonOptions common;
  std::string graphs;
  std::string method = "pca";
  std::string model;
  int components = 0;
  int layers = 0;
  int restarts = 5;
  std::string checkpoint;
  OptimizerConfig optimizer;
  TqaConfig tqa;
};

void run_evaluate(const EvaluateOptions& o) {
  const Method method = parse_method(o.method);
  RunOptions run;
  run.workers = o.common.workers;
  run.checkpoint_path = checkpoint_path(o.checkpoint, o.common.out);

  std::vector<RunRecord> records;
  std::string hash;
  if (method == Method::pca) {
    if (o.model.empty()) throw ValidationError("--method pca requires --model");
    if (o.components < 1) throw ValidationError("--method pca requires --components");
    const PcaModel model = load_model(o.model);
    if (static_cast<std::size_t>(o.components) > model.component_count()) {
      throw ValidationError("--components must be <= " + std::to_string(model.component_count()) +
                            " (the model's component count), got " + std::to_string(o.components));
    }
    if (o.layers != 0 && o.layers != model.layers) {
      throw ValidationError("--layers " + std::to_string(o.layers) + " does not match the model's " +
                            std::to_string(model.layers) + " layers");
    }
    EvalConfig cfg;
    cfg.layers = model.layers;
    cfg.components = o.components;
    cfg.restarts = o.restarts;
    cfg.seed = o.common.seed;
    cfg.optimizer = o.optimizer;

    const std::vector<WeightedGraph> graphs = load_graph_set(o.graphs);
    if (graphs.empty()) throw ValidationError("evaluation graph set is empty");
    cfg.eval_vertices = graphs.front().vertex_count();
    cfg.count = graphs.size();
    cfg.validate();
    hash = hex64(stable_hash("evaluate|pca|" + cfg.hash() + "|model=" + file_digest(o.model) +
                             "|graphs=" + file_digest(o.graphs)));
    log_run("evaluate", hash, o.common);
    records = evaluate_pca(cfg, model, graphs, run);
  } else {
    if (!is_supported_layers(o.layers)) throw ValidationError("--method standard requires --layers in {1, 2, 4, 8}");
    o.optimizer.validate();
    o.tqa.validate();
    const std::vector<WeightedGraph> graphs = load_graph_set(o.graphs);
    if (graphs.empty()) throw ValidationError("evaluation graph set is empty");
    hash = hex64(stable_hash("evaluate|standard|layers=" + std::to_string(o.layers) + "|opt=" +
                             describe(o.optimizer) + "|tqa=" + describe(o.tqa) + "|graphs=" + file_digest(o.graphs)));
    log_run("evaluate", hash, o.common);
    records = evaluate_standard(o.layers, graphs, o.tqa, o.optimizer, run);
  }
  save_records(o.common.out, records, provenance("evaluate", hash, o.common));
  remove_checkpoint(run.checkpoint_path);
  std::cerr << "[qaoapca] wrote " << records.size() << " records to " << o.common.out << '\n';
}

// ---- compare ----------------------------------------------------------------

struct CompareOptions {
  CommonOptions common;
  std::string pca;
  std::string baseline;
  std::string baseline_kind = "same_layers";
  std::string training_set = "unweighted";
};

void run_compare(const CompareOptions& o) {
  const BaselineKind kind = parse_baseline_kind(o.baseline_kind);
  const TrainingSet set = parse_training_set(o.training_set);
  const std::string hash = hex64(stable_hash("compare|pca=" + file_digest(o.pca) + "|baseline=" +
                                             file_digest(o.baseline) + "|kind=" + o.baseline_kind +
                                             "|set=" + o.training_set));
  log_run("compare", hash, o.common);
  const ComparisonRow row = compare(load_records(o.pca), load_records(o.baseline), kind, set);

  std::ostringstream out;
  for (const std::string& line : provenance("compare", hash, o.common)) out << "<!-- " << line << " -->\n";
  out << "Training set: " << to_string(row.training_set) << ", layers: " << row.layers
      << ", parameters: " << row.param_count << ", baseline: " << to_string(row.baseline_kind) << "\n\n";
  out << "| Metric | QAOA-PCA Med. | Baseline Med. | W | P-Val. | RBC | n |\n";
  out << "|---|--:|--:|--:|--:|--:|--:|\n";
  const auto line = [&](std::string_view name, const MetricComparison& m) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "| %s | %.6g | %.6g | %.1f | %.3e | %.4f | %d |\n", std::string(name).c_str(),
                  m.median_pca, m.median_baseline, m.test.w_statistic, m.test.p_value, m.test.rbc,
                  m.test.n_effective);
    out << buf;
  };
  line("Iterations", row.evals);
  line("Approximation ratio", row.approx_ratio);
  text::write_file(o.common.out, out.str());
  std::cout << out.str();
}

// ---- report -----------------------------------------------------------------

struct ReportOptions {
  CommonOptions common;
  std::string records_dir;
  std::string scatter_dir;
};

void run_report(const ReportOptions& o) {
  // Keyed on the contents of the record files, not on where they live.
  std::string key = "report";
  const auto add = [&](const std::string& name) {
    const fs::path file = fs::path(o.records_dir) / name;
    key += "|" + name + "=" + (fs::exists(file) ? file_digest(file.string()) : "-");
  };
  for (const int layers : {1, 2, 4, 8}) add(standard_records_file(layers));
  for (const TableConfig& c : table_configurations()) add(pca_records_file(c));
  const std::string hash = hex64(stable_hash(key));
  log_run("report", hash, o.common);
  std::string scatter = o.scatter_dir;
  if (scatter.empty()) {
    scatter = fs::path(o.common.out).parent_path().string();
    if (scatter.empty()) scatter = ".";
  }
  fs::create_directories(scatter);
  const Report report = build_report(o.records_dir, scatter);

  std::ostringstream out;
  for (const std::string& line : provenance("report", hash, o.common)) out << "<!-- " << line << " -->\n";
  out << report.markdown;
  text::write_file(o.common.out, out.str());
  std::cerr << "[qaoapca] wrote " << report.rows.size() << " configurations to " << o.common.out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA-PCA experiment pipeline: graph sets, QAOA training, PCA reparameterization, evaluation and "
               "paired comparisons"};
  app.require_subcommand(1);

  GenGraphsOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-graphs", "Enumerate or sample connected non-isomorphic graphs");
  add_common(gen_cmd, gen.common);
  gen_cmd->add_option("--n", gen.n, "Vertex count N or range A..B")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Sample this many classes instead of enumerating all");
  gen_cmd->add_flag("--weighted", gen.weighted, "Draw edge weights uniformly from (0, 1]");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Optimize standard QAOA on every graph of a set");
  add_common(train_cmd, train.common);
  train_cmd->add_option("--graphs", train.graphs, "Graph-set file")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--layers", train.layers, "QAOA layers p")->required();
  train_cmd->add_option("--records", train.records, "Also write per-graph run records here");
  train_cmd->add_option("--checkpoint", train.checkpoint, "Checkpoint log (default <out>.checkpoint, 'none' disables)");
  train_cmd->add_option("--dt-grid", train.tqa.dt_grid, "TQA time steps")->capture_default_str();
  add_optimizer(train_cmd, train.optimizer);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-pca", "Fit principal components to a trained parameter matrix");
  add_common(fit_cmd, fit.common);
  fit_cmd->add_option("--matrix", fit.matrix, "Parameter-matrix CSV")->required()->check(CLI::ExistingFile);

  EvaluateOptions eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Run QAOA-PCA or standard QAOA on an evaluation set");
  add_common(eval_cmd, eval.common);
  eval_cmd->add_option("--graphs", eval.graphs, "Evaluation graph-set file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--method", eval.method, "pca or standard")->capture_default_str();
  eval_cmd->add_option("--model", eval.model, "PCA model file (method pca)");
  eval_cmd->add_option("--components", eval.components, "Number of principal components k (method pca)");
  eval_cmd->add_option("--layers", eval.layers, "QAOA layers (required for method standard)");
  eval_cmd->add_option("--restarts", eval.restarts, "Random coefficient initializations")->capture_default_str();
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "Checkpoint log (default <out>.checkpoint, 'none' disables)");
  eval_cmd->add_option("--dt-grid", eval.tqa.dt_grid, "TQA time steps (method standard)")->capture_default_str();
  add_optimizer(eval_cmd, eval.optimizer);

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Paired Wilcoxon comparison of two run-record files");
  add_common(cmp_cmd, cmp.common);
  cmp_cmd->add_option("--pca", cmp.pca, "QAOA-PCA records")->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--baseline", cmp.baseline, "Standard QAOA records")->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--baseline-kind", cmp.baseline_kind, "same_layers or same_params")->capture_default_str();
  cmp_cmd->add_option("--training-set", cmp.training_set, "unweighted or weighted")->capture_default_str();

  ReportOptions rep;
  auto* rep_cmd = app.add_subcommand("report", "Build the 12-configuration comparison table and scatter CSVs");
  add_common(rep_cmd, rep.common);
  rep_cmd->add_option("--records-dir", rep.records_dir, "Directory holding pca_*.csv and standard_p*.csv")
      ->required()
      ->check(CLI::ExistingDirectory);
  rep_cmd->add_option("--scatter-dir", rep.scatter_dir, "Where to write scatter CSVs (default: next to --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) run_gen_graphs(gen);
    if (*train_cmd) run_train(train);
    if (*fit_cmd) run_fit(fit);
    if (*eval_cmd) run_evaluate(eval);
    if (*cmp_cmd) run_compare(cmp);
    if (*rep_cmd) run_report(rep);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const FormatError& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
