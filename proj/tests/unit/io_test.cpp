#include <filesystem>
#include <random>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "oracles.hpp"
#include "qaoapca/error.hpp"
#include "qaoapca/graph_io.hpp"
#include "qaoapca/pca.hpp"
#include "qaoapca/pipeline.hpp"
#include "qaoapca/records.hpp"

using namespace qaoapca;
namespace fs = std::filesystem;

namespace {

std::vector<WeightedGraph> round_trip(const std::vector<WeightedGraph>& graphs) {
  std::stringstream buf;
  write_graph_set(buf, graphs);
  return read_graph_set(buf);
}

std::vector<WeightedGraph> parse_graphs(const std::string& text) {
  std::istringstream in(text);
  return read_graph_set(in);
}

// Line number carried by the FormatError thrown from `f`, or 0.
template <typename F>
std::size_t error_line(F&& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.line();
  }
  return 0;
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / ("qaoapca_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("graph sets round-trip bit-exactly") {
  TrainingConfig cfg;
  cfg.training_set = TrainingSet::weighted;
  cfg.seed = 42;
  const auto weighted = build_training_set(cfg);
  REQUIRE(weighted.size() == 986);
  CHECK(round_trip(weighted) == weighted);

  cfg.training_set = TrainingSet::unweighted;
  const auto unweighted = build_training_set(cfg);
  CHECK(round_trip(unweighted) == unweighted);

  std::mt19937_64 rng(1);
  std::vector<WeightedGraph> odd;
  for (int i = 0; i < 50; ++i) {
    const Graph g = gen::graph(rng, 2 + static_cast<int>(rng() % 14), 0.3);
    std::vector<double> w(g.edge_count());
    for (double& x : w) x = std::ldexp(static_cast<double>(rng() >> 11) + 1, -40);
    odd.emplace_back(g, w);
  }
  CHECK(round_trip(odd) == odd);
}

TEST_CASE("empty graph set") {
  std::stringstream buf;
  write_graph_set(buf, std::vector<WeightedGraph>{});
  CHECK_FALSE(buf.str().empty());
  CHECK(read_graph_set(buf).empty());
}

TEST_CASE("graph files and their errors") {
  CHECK(parse_graphs("# c\n3 2\n0 1 1\n2 1 0.5\n").at(0) ==
        WeightedGraph(Graph(3, {{0, 1}, {1, 2}}), {1.0, 0.5}));
  // Weights follow their edges when the file lists edges out of order.
  const auto g = parse_graphs("3 2\n1 2 0.25\n0 1 0.75\n").at(0);
  CHECK(g.weights()[0] == 0.75);
  CHECK(g.weights()[1] == 0.25);

  CHECK(error_line([] { parse_graphs("3 2\n0 1 1\n\n1 0 1\n"); }) == 3);
  CHECK(error_line([] { parse_graphs("# header\n3 3\n0 1 1\n1 2 1\n1 0 1\n"); }) == 5);
  CHECK(error_line([] { parse_graphs("3 2\n0 1 1\n"); }) == 1);
  CHECK(error_line([] { parse_graphs("3 1\n0 3 1\n"); }) == 2);
  CHECK(error_line([] { parse_graphs("3 1\n0 1 0\n"); }) == 2);
  CHECK(error_line([] { parse_graphs("3 1\n0 1 x\n"); }) == 2);
  CHECK(error_line([] { parse_graphs("3\n"); }) == 1);
  CHECK_THROWS_WITH_AS(parse_graphs("2 1\n0 1 1\n\n3 2\n0 1 1\n0 1 2\n"), doctest::Contains("line 6"), FormatError);
  CHECK_THROWS_AS(load_graph_set("/nonexistent/dir/x.graphs"), IoError);
}

TEST_CASE("run records round-trip") {
  std::vector<RunRecord> records{
      {"5:3ff", Method::standard, 2, 4, 117, 0.91234567890123456, {0.1, 0.2, 0.3, 1.0 / 3}},
      {"6:7fff", Method::pca, 2, 2, 33, 0.5, {-1e-300, 2.5, 3.14159, 4}},
  };
  std::stringstream buf;
  write_records(buf, records, std::vector<std::string>{"note"});
  CHECK(buf.str().rfind("# note\ngraph_id,method,layers,param_count,evals,approx_ratio,", 0) == 0);
  CHECK(read_records(buf) == records);
  CHECK(parse_record(format_record(records[1])) == records[1]);

  std::istringstream bad("graph_id,method,layers,param_count,evals,approx_ratio\n5:1,pca,2,2,x,0.5,1,2,3,4\n");
  CHECK(error_line([&] { read_records(bad); }) == 2);
  std::istringstream short_params("graph_id,method,layers,param_count,evals,approx_ratio\n5:1,pca,2,2,3,0.5,1,2\n");
  CHECK(error_line([&] { read_records(short_params); }) == 2);
  CHECK_THROWS_AS(parse_method("qaoa"), ValidationError);
}

TEST_CASE("parameter matrix round-trip") {
  ParameterMatrix x{2, {"5:f", "5:1f"}, {{0.1, 0.2, 0.3, 0.4}, {1.0 / 3, -2.0 / 7, 1e-17, 5}}};
  std::stringstream buf;
  write_parameter_matrix(buf, x);
  CHECK(buf.str().find("graph_id,gamma_1,gamma_2,beta_1,beta_2\n") != std::string::npos);
  const ParameterMatrix y = read_parameter_matrix(buf);
  CHECK(y.layers == 2);
  CHECK(y.graph_ids == x.graph_ids);
  CHECK(y.rows == x.rows);

  std::istringstream ragged("graph_id,gamma_1,beta_1\na,1,2\nb,1\n");
  CHECK(error_line([&] { read_parameter_matrix(ragged); }) == 3);
  std::istringstream header("id,g,b\n");
  CHECK(error_line([&] { read_parameter_matrix(header); }) == 1);
}

TEST_CASE("model files") {
  std::mt19937_64 rng(3);
  ParameterMatrix x;
  x.layers = 4;
  for (int r = 0; r < 30; ++r) x.rows.push_back(gen::angles(rng, 8));
  const PcaModel m = fit_pca(x);

  std::stringstream buf;
  write_model(buf, m);
  const std::string text = buf.str();
  const PcaModel back = read_model(buf);
  CHECK(back.layers == m.layers);
  CHECK(back.mean == m.mean);
  CHECK(back.eigenvalues == m.eigenvalues);
  CHECK(back.components == m.components);
  CHECK(back.coef_min == m.coef_min);
  CHECK(back.coef_max == m.coef_max);
  CHECK(back.training_rows == m.training_rows);
  CHECK(back.degenerate == m.degenerate);
  CHECK(expand(back, std::vector<double>{0.0, 0.0}).flat() == m.mean);

  // Truncations name the first missing field.
  const auto truncated = [&](const std::string& stop) {
    std::istringstream in(text.substr(0, text.find(stop)));
    return in;
  };
  for (const std::string field : {"layers", "mean", "eigenvalues", "coef_max", "components"}) {
    CAPTURE(field);
    auto in = truncated(field);
    CHECK_THROWS_WITH_AS(read_model(in), doctest::Contains(("missing field '" + field + "'").c_str()), FormatError);
  }
  {
    std::istringstream in(text.substr(0, text.rfind('\n', text.size() - 2) + 1));
    CHECK_THROWS_WITH_AS(read_model(in), doctest::Contains("missing field 'components'"), FormatError);
  }
  {
    std::istringstream in("format something-else 1\n");
    CHECK_THROWS_AS(read_model(in), FormatError);
  }

  const fs::path dir = temp_dir();
  save_model((dir / "m.pca").string(), m);
  CHECK(load_model((dir / "m.pca").string()).components == m.components);
  CHECK_THROWS_AS(load_model((dir / "missing.pca").string()), IoError);
  fs::remove_all(dir);
}
