#include "qaoapca/report.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "qaoapca/text.hpp"

namespace qaoapca {

std::string pca_records_file(const TableConfig& c) {
  return "pca_" + std::string(to_string(c.training_set)) + "_p" + std::to_string(c.layers) + "_k" +
         std::to_string(c.components) + ".csv";
}

std::string standard_records_file(int layers) { return "standard_p" + std::to_string(layers) + ".csv"; }

std::string scatter_file(const TableConfig& c) {
  return "scatter_" + std::string(to_string(c.training_set)) + "_p" + std::to_string(c.layers) + "_k" +
         std::to_string(c.components) + ".csv";
}

namespace {

std::string format(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

void cells(std::ostream& out, const MetricComparison& m, const char* median_fmt) {
  out << " | " << format(median_fmt, m.median_baseline) << " | " << format("%.2e", m.test.p_value) << " | "
      << format("%.2f", m.test.rbc);
}

}  // namespace

std::string render_table(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << "| Training Set | # Layers | # Param. "
         "| Iter. Med. | Same # Layers Med. | P-Val. | RBC | Same # Param. Med. | P-Val. | RBC "
         "| Ratio Med. | Same # Layers Med. | P-Val. | RBC | Same # Param. Med. | P-Val. | RBC |\n";
  out << "|---|--:|--:|--:|--:|--:|--:|--:|--:|--:|--:|--:|--:|--:|--:|--:|--:|\n";
  for (const ReportRow& r : rows) {
    out << "| " << capitalized(to_string(r.config.training_set)) << " | " << r.config.layers << " | "
        << r.config.components;
    out << " | " << format("%.1f", r.same_layers.evals.median_pca);
    cells(out, r.same_layers.evals, "%.1f");
    cells(out, r.same_params.evals, "%.1f");
    out << " | " << format("%.4f", r.same_layers.approx_ratio.median_pca);
    cells(out, r.same_layers.approx_ratio, "%.4f");
    cells(out, r.same_params.approx_ratio, "%.4f");
    out << " |\n";
  }
  return out.str();
}

void write_scatter(std::ostream& out, std::span<const RunRecord> pca, std::span<const RunRecord> same_layers,
                   std::span<const RunRecord> same_params) {
  out << "evals,approx_ratio,method\n";
  const auto emit = [&](std::span<const RunRecord> records, std::string_view label) {
    for (const RunRecord& r : records) out << r.evals << ',' << text::fixed17(r.approx_ratio) << ',' << label << '\n';
  };
  emit(pca, "pca");
  emit(same_layers, "same_layers");
  emit(same_params, "same_params");
}

Report build_report(const std::string& records_dir, const std::string& scatter_dir) {
  namespace fs = std::filesystem;
  std::map<int, std::vector<RunRecord>> standard;
  const auto standard_for = [&](int layers) -> const std::vector<RunRecord>& {
    auto it = standard.find(layers);
    if (it == standard.end()) {
      it = standard.emplace(layers, load_records((fs::path(records_dir) / standard_records_file(layers)).string()))
               .first;
    }
    return it->second;
  };

  Report report;
  for (const TableConfig& c : table_configurations()) {
    const std::vector<RunRecord> pca = load_records((fs::path(records_dir) / pca_records_file(c)).string());
    const auto& same_layers = standard_for(baseline_layers(BaselineKind::same_layers, c.layers, c.components));
    const auto& same_params = standard_for(baseline_layers(BaselineKind::same_params, c.layers, c.components));
    ReportRow row{c, compare(pca, same_layers, BaselineKind::same_layers, c.training_set),
                  compare(pca, same_params, BaselineKind::same_params, c.training_set)};
    report.rows.push_back(row);
    if (!scatter_dir.empty()) {
      std::ostringstream csv;
      write_scatter(csv, pca, same_layers, same_params);
      text::write_file((fs::path(scatter_dir) / scatter_file(c)).string(), csv.str());
    }
  }
  report.markdown = render_table(report.rows);
  return report;
}

}  // namespace qaoapca
