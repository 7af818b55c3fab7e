#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qaoapca/error.hpp"
#include "qaoapca/pca.hpp"
#include "qaoapca/text.hpp"

namespace qaoapca {

namespace {

constexpr std::string_view kModelTag = "qaoapca-model";
constexpr int kModelVersion = 1;

void write_values(std::ostream& out, std::string_view key, std::span<const double> values) {
  out << key;
  for (const double v : values) out << ' ' << text::shortest(v);
  out << '\n';
}

struct Line {
  std::size_t number;
  std::vector<std::string_view> fields;
};

class FieldReader {
 public:
  explicit FieldReader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  // Next line, which must begin with `key`; returns the remaining fields.
  const Line& expect(std::string_view key) {
    if (pos_ >= lines_.size()) throw FormatError("missing field '" + std::string(key) + "'");
    const Line& line = lines_[pos_++];
    if (line.fields.front() != key) {
      throw FormatError("expected field '" + std::string(key) + "', found '" +
                            std::string(line.fields.front()) + "'",
                        line.number);
    }
    return line;
  }

  std::vector<double> values(std::string_view key, std::size_t count) {
    const Line& line = expect(key);
    if (line.fields.size() - 1 != count) {
      throw FormatError("field '" + std::string(key) + "' has " + std::to_string(line.fields.size() - 1) +
                            " values, expected " + std::to_string(count),
                        line.number);
    }
    std::vector<double> out;
    for (std::size_t i = 1; i < line.fields.size(); ++i) out.push_back(parse(line, i));
    return out;
  }

  std::int64_t integer(std::string_view key) {
    const Line& line = expect(key);
    if (line.fields.size() != 2) {
      throw FormatError("field '" + std::string(key) + "' needs exactly one value", line.number);
    }
    try {
      return text::parse_int(line.fields[1]);
    } catch (const FormatError& e) {
      throw FormatError(std::string(key) + ": " + e.what(), line.number);
    }
  }

  std::vector<double> raw_row(std::size_t index, std::size_t count) {
    if (pos_ >= lines_.size()) throw FormatError("missing field 'components' row " + std::to_string(index));
    const Line& line = lines_[pos_++];
    if (line.fields.size() != count) {
      throw FormatError("component row " + std::to_string(index) + " has " +
                            std::to_string(line.fields.size()) + " values, expected " + std::to_string(count),
                        line.number);
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < line.fields.size(); ++i) out.push_back(parse(line, i));
    return out;
  }

  bool exhausted() const { return pos_ >= lines_.size(); }
  std::size_t current_line() const { return pos_ < lines_.size() ? lines_[pos_].number : 0; }

 private:
  static double parse(const Line& line, std::size_t i) {
    try {
      return text::parse_double(line.fields[i]);
    } catch (const FormatError& e) {
      throw FormatError(e.what(), line.number);
    }
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const PcaModel& model) {
  out << "format " << kModelTag << ' ' << kModelVersion << '\n';
  out << "layers " << model.layers << '\n';
  out << "rows " << model.training_rows << '\n';
  out << "degenerate " << (model.degenerate ? 1 : 0) << '\n';
  write_values(out, "mean", model.mean);
  write_values(out, "eigenvalues", model.eigenvalues);
  write_values(out, "coef_min", model.coef_min);
  write_values(out, "coef_max", model.coef_max);
  out << "components " << model.components.size() << '\n';
  for (const auto& c : model.components) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i == 0 ? "" : " ") << text::shortest(c[i]);
    out << '\n';
  }
}

PcaModel read_model(std::istream& in) {
  std::vector<std::string> storage;
  std::vector<std::size_t> numbers;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view t = text::trim(raw);
    if (t.empty() || t.front() == '#') continue;
    storage.emplace_back(t);
    numbers.push_back(line_no);
  }
  if (in.bad()) throw IoError("error while reading model");
  std::vector<Line> lines;
  for (std::size_t i = 0; i < storage.size(); ++i) lines.push_back({numbers[i], text::split_whitespace(storage[i])});
  FieldReader reader(std::move(lines));

  const Line& format = reader.expect("format");
  if (format.fields.size() != 3 || format.fields[1] != kModelTag) {
    throw FormatError("not a qaoapca model file", format.number);
  }
  if (format.fields[2] != std::to_string(kModelVersion)) {
    throw FormatError("unsupported model version '" + std::string(format.fields[2]) + "'", format.number);
  }

  PcaModel model;
  const auto layers = reader.integer("layers");
  if (layers < 1 || layers > 64) throw FormatError("field 'layers' out of range");
  model.layers = static_cast<int>(layers);
  const auto rows = reader.integer("rows");
  if (rows < 0) throw FormatError("field 'rows' is negative");
  model.training_rows = static_cast<std::size_t>(rows);
  model.degenerate = reader.integer("degenerate") != 0;

  const auto dim = static_cast<std::size_t>(model.dimension());
  model.mean = reader.values("mean", dim);
  const Line& eig_line = reader.expect("eigenvalues");
  const std::size_t m = eig_line.fields.size() - 1;
  if (m < 1 || m > dim) throw FormatError("field 'eigenvalues' must have 1..2p values", eig_line.number);
  for (std::size_t i = 1; i <= m; ++i) {
    try {
      model.eigenvalues.push_back(text::parse_double(eig_line.fields[i]));
    } catch (const FormatError& e) {
      throw FormatError(e.what(), eig_line.number);
    }
  }
  model.coef_min = reader.values("coef_min", m);
  model.coef_max = reader.values("coef_max", m);
  const auto count = reader.integer("components");
  if (count < 0 || static_cast<std::size_t>(count) != m) {
    throw FormatError("field 'components' must equal the number of eigenvalues (" + std::to_string(m) + ")");
  }
  for (std::size_t i = 0; i < m; ++i) model.components.push_back(reader.raw_row(i, dim));
  if (!reader.exhausted()) throw FormatError("unexpected trailing content", reader.current_line());
  return model;
}

void save_model(const std::string& path, const PcaModel& model) {
  std::ostringstream out;
  write_model(out, model);
  text::write_file(path, out.str());
}

PcaModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return read_model(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_parameter_matrix(std::ostream& out, const ParameterMatrix& x,
                            std::span<const std::string> header_comments) {
  x.validate();
  for (const std::string& c : header_comments) out << "# " << c << '\n';
  out << "graph_id";
  for (int i = 1; i <= x.layers; ++i) out << ",gamma_" << i;
  for (int i = 1; i <= x.layers; ++i) out << ",beta_" << i;
  out << '\n';
  for (std::size_t r = 0; r < x.rows.size(); ++r) {
    out << (x.graph_ids.empty() ? "row_" + std::to_string(r) : x.graph_ids[r]);
    for (const double v : x.rows[r]) out << ',' << text::fixed17(v);
    out << '\n';
  }
}

ParameterMatrix read_parameter_matrix(std::istream& in) {
  ParameterMatrix x;
  std::string raw;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split(line, ',');
    if (!saw_header) {
      const std::size_t width = fields.size() - 1;
      if (fields.front() != "graph_id" || width == 0 || width % 2 != 0) {
        throw FormatError("expected header graph_id,gamma_1..gamma_p,beta_1..beta_p", line_no);
      }
      x.layers = static_cast<int>(width / 2);
      for (int i = 1; i <= x.layers; ++i) {
        if (text::trim(fields[static_cast<std::size_t>(i)]) != "gamma_" + std::to_string(i) ||
            text::trim(fields[static_cast<std::size_t>(x.layers + i)]) != "beta_" + std::to_string(i)) {
          throw FormatError("expected header graph_id,gamma_1..gamma_p,beta_1..beta_p", line_no);
        }
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(x.dimension()) + 1) {
      throw FormatError("expected " + std::to_string(x.dimension() + 1) + " fields, got " +
                            std::to_string(fields.size()),
                        line_no);
    }
    x.graph_ids.emplace_back(text::trim(fields[0]));
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      try {
        row.push_back(text::parse_double(fields[i]));
      } catch (const FormatError& e) {
        throw FormatError(e.what(), line_no);
      }
    }
    x.rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("error while reading parameter matrix");
  if (!saw_header) throw FormatError("parameter matrix has no header");
  return x;
}

void save_parameter_matrix(const std::string& path, const ParameterMatrix& x,
                           std::span<const std::string> header_comments) {
  std::ostringstream out;
  write_parameter_matrix(out, x, header_comments);
  text::write_file(path, out.str());
}

ParameterMatrix load_parameter_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return read_parameter_matrix(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace qaoapca
