#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qaoapca/pipeline.hpp"

namespace qaoapca {

/// File names inside a records directory.
std::string pca_records_file(const TableConfig& c);
std::string standard_records_file(int layers);
std::string scatter_file(const TableConfig& c);

struct ReportRow {
  TableConfig config;
  ComparisonRow same_layers;
  ComparisonRow same_params;
};

/// Markdown table with one row per configuration.
std::string render_table(std::span<const ReportRow> rows);

/// evals,approx_ratio,method rows for one results panel.
void write_scatter(std::ostream& out, std::span<const RunRecord> pca,
                   std::span<const RunRecord> same_layers, std::span<const RunRecord> same_params);

struct Report {
  std::vector<ReportRow> rows;
  std::string markdown;
};

/// Loads every record file named by table_configurations() from `records_dir`,
/// compares each against both baselines, and writes one scatter CSV per
/// configuration into `scatter_dir` (skipped when empty).
Report build_report(const std::string& records_dir, const std::string& scatter_dir);

}  // namespace qaoapca
