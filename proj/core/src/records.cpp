#include "qaoapca/records.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qaoapca/error.hpp"
#include "qaoapca/text.hpp"

namespace qaoapca {

std::string_view to_string(Method m) { return m == Method::standard ? "standard" : "pca"; }

Method parse_method(std::string_view s) {
  if (s == "standard") return Method::standard;
  if (s == "pca") return Method::pca;
  throw ValidationError("unknown method '" + std::string(s) + "' (expected standard or pca)");
}

namespace {

constexpr std::string_view kHeaderPrefix = "graph_id,method,layers,param_count,evals,approx_ratio";

}  // namespace

std::string format_record(const RunRecord& r) {
  std::string line = r.graph_id;
  line += ',';
  line += to_string(r.method);
  line += ',' + std::to_string(r.layers);
  line += ',' + std::to_string(r.param_count);
  line += ',' + std::to_string(r.evals);
  line += ',' + text::fixed17(r.approx_ratio);
  for (const double t : r.best_params) line += ',' + text::fixed17(t);
  return line;
}

RunRecord parse_record(std::string_view line, std::size_t line_no) {
  try {
    const auto fields = text::split(line, ',');
    if (fields.size() < 6) throw FormatError("run record needs at least 6 fields");
    RunRecord r;
    r.graph_id = std::string(text::trim(fields[0]));
    if (r.graph_id.empty()) throw FormatError("empty graph_id");
    try {
      r.method = parse_method(text::trim(fields[1]));
    } catch (const ValidationError& e) {
      throw FormatError(e.what());
    }
    r.layers = static_cast<int>(text::parse_int(fields[2]));
    r.param_count = static_cast<int>(text::parse_int(fields[3]));
    r.evals = static_cast<int>(text::parse_int(fields[4]));
    r.approx_ratio = text::parse_double(fields[5]);
    for (std::size_t i = 6; i < fields.size(); ++i) r.best_params.push_back(text::parse_double(fields[i]));
    if (r.layers < 1) throw FormatError("layers must be >= 1");
    if (!r.best_params.empty() && r.best_params.size() != static_cast<std::size_t>(2 * r.layers)) {
      throw FormatError("expected " + std::to_string(2 * r.layers) + " parameters, got " +
                        std::to_string(r.best_params.size()));
    }
    return r;
  } catch (const FormatError& e) {
    if (e.line() != 0 || line_no == 0) throw;
    throw FormatError(e.what(), line_no);
  }
}

void write_records(std::ostream& out, std::span<const RunRecord> records,
                   std::span<const std::string> header_comments) {
  for (const std::string& c : header_comments) out << "# " << c << '\n';
  std::size_t width = 0;
  for (const RunRecord& r : records) width = std::max(width, r.best_params.size());
  out << kHeaderPrefix;
  for (std::size_t i = 1; i <= width; ++i) out << ",theta_" << i;
  out << '\n';
  for (const RunRecord& r : records) out << format_record(r) << '\n';
}

std::vector<RunRecord> read_records(std::istream& in) {
  std::vector<RunRecord> records;
  std::string raw;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      if (line.substr(0, kHeaderPrefix.size()) != kHeaderPrefix) {
        throw FormatError("expected header starting with '" + std::string(kHeaderPrefix) + "'", line_no);
      }
      saw_header = true;
      continue;
    }
    records.push_back(parse_record(line, line_no));
  }
  if (in.bad()) throw IoError("error while reading run records");
  if (!saw_header) throw FormatError("run-records file has no header");
  return records;
}

void save_records(const std::string& path, std::span<const RunRecord> records,
                  std::span<const std::string> header_comments) {
  std::ostringstream out;
  write_records(out, records, header_comments);
  text::write_file(path, out.str());
}

std::vector<RunRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return read_records(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace qaoapca
