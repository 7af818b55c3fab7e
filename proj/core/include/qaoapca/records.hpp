#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qaoapca {

enum class Method { standard, pca };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);

/// Outcome of optimizing one graph with one method.
struct RunRecord {
  std::string graph_id;
  Method method = Method::standard;
  int layers = 0;
  int param_count = 0;  ///< 2p for standard QAOA, k for QAOA-PCA
  int evals = 0;
  double approx_ratio = 0.0;
  std::vector<double> best_params;  ///< full 2p angles (gamma block, beta block)

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// Run-records CSV:
//   graph_id,method,layers,param_count,evals,approx_ratio,theta_1,...,theta_2p
// Lines starting with '#' are comments.

void write_records(std::ostream& out, std::span<const RunRecord> records,
                   std::span<const std::string> header_comments = {});
std::vector<RunRecord> read_records(std::istream& in);

void save_records(const std::string& path, std::span<const RunRecord> records,
                  std::span<const std::string> header_comments = {});
std::vector<RunRecord> load_records(const std::string& path);

/// One CSV line (no newline) and its inverse; used by the checkpoint log.
std::string format_record(const RunRecord& r);
RunRecord parse_record(std::string_view line, std::size_t line_no = 0);

}  // namespace qaoapca
