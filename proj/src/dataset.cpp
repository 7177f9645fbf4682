#include "phishguard/dataset.hpp"

#include "phishguard/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace phishguard {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// One CSV record; handles double-quoted fields with embedded commas and "".
// Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0;; ++i) {
    if (i == line.size()) {
      // A quoted field may span lines.
      if (!quoted || !std::getline(in, line)) break;
      ++line_no;
      field.push_back('\n');
      i = static_cast<std::size_t>(-1);
      continue;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return true;
}

std::optional<double> parse_number(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void Dataset::validate() const {
  if (features.rows() != labels.size()) {
    throw DataError("dataset has " + std::to_string(features.rows()) + " feature rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  if (static_cast<Index>(feature_names.size()) != features.cols()) {
    throw DataError("dataset has " + std::to_string(features.cols()) + " feature columns but " +
                    std::to_string(feature_names.size()) + " feature names");
  }
  if (!row_ids.empty() && static_cast<Index>(row_ids.size()) != features.rows()) {
    throw DataError("row identifier count does not match row count");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& name : feature_names) {
    if (!seen.insert(name).second) throw DataError("duplicate feature name '" + name + "'");
  }
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != kPhishing && labels[i] != kLegitimate) {
      throw DataError("label at row " + std::to_string(i) + " is not 0 or 1");
    }
  }
}

std::optional<Index> Dataset::column_index(std::string_view name) const {
  const auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) return std::nullopt;
  return static_cast<Index>(it - feature_names.begin());
}

Dataset Dataset::select_rows(std::span<const Index> rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.features.resize(static_cast<Index>(rows.size()), cols());
  out.labels.resize(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto i = static_cast<Index>(r);
    out.features.row(i) = features.row(rows[r]);
    out.labels[i] = labels[rows[r]];
    if (!row_ids.empty()) out.row_ids.push_back(row_ids[static_cast<std::size_t>(rows[r])]);
  }
  return out;
}

std::array<Index, 2> class_counts(const LabelVector& labels) {
  std::array<Index, 2> counts{0, 0};
  for (Index i = 0; i < labels.size(); ++i) ++counts[labels[i] == kPhishing ? 1 : 0];
  return counts;
}

std::optional<int> parse_label(std::string_view cell) {
  cell = trim(cell);
  if (cell == "phishing" || cell == "1") return kPhishing;
  if (cell == "legitimate" || cell == "0") return kLegitimate;
  return std::nullopt;
}

Dataset load_csv(const std::filesystem::path& path, std::string_view label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_csv(in, label_column, path.string());
}

Dataset read_csv(std::istream& in, std::string_view label_column, std::string_view source) {
  const std::string where(source);
  std::vector<std::string> header;
  std::size_t line_no = 0;
  if (!read_record(in, header, line_no)) throw DataError(where + ": empty file, no header row");
  for (auto& h : header) h = std::string(trim(h));

  std::optional<std::size_t> label_pos;
  std::optional<std::size_t> url_pos;
  std::vector<std::size_t> feature_pos;
  Dataset data;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == label_column) {
      label_pos = c;
    } else if (header[c] == kUrlColumn) {
      url_pos = c;
    } else {
      feature_pos.push_back(c);
      data.feature_names.push_back(header[c]);
    }
  }
  if (!label_pos) {
    throw DataError(where + ": label column '" + std::string(label_column) + "' not found");
  }

  std::vector<double> values;
  std::vector<int> labels;
  std::vector<std::size_t> rows_with_missing;
  std::vector<std::string> fields;
  while (read_record(in, fields, line_no)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (fields.size() != header.size()) {
      throw DataError(where + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header.size()));
    }
    const auto label = parse_label(fields[*label_pos]);
    if (!label) {
      throw DataError(where + ": line " + std::to_string(line_no) + ": unknown label value '" +
                      fields[*label_pos] + "'");
    }
    bool missing = false;
    for (std::size_t k = 0; k < feature_pos.size(); ++k) {
      const std::string& cell = fields[feature_pos[k]];
      if (trim(cell).empty()) {
        missing = true;
        continue;
      }
      const auto value = parse_number(cell);
      if (!value) {
        throw DataError(where + ": line " + std::to_string(line_no) + ", column '" +
                        data.feature_names[k] + "': non-numeric value '" + cell + "'");
      }
      values.push_back(*value);
    }
    if (missing) {
      rows_with_missing.push_back(line_no);
      // Drop whatever this row contributed.
      values.resize(labels.size() * feature_pos.size());
      continue;
    }
    labels.push_back(*label);
    if (url_pos) data.row_ids.push_back(fields[*url_pos]);
  }

  if (!rows_with_missing.empty()) {
    std::ostringstream msg;
    msg << where << ": " << rows_with_missing.size()
        << " row(s) with missing feature values (lines ";
    for (std::size_t i = 0; i < rows_with_missing.size() && i < 10; ++i) {
      msg << (i ? ", " : "") << rows_with_missing[i];
    }
    if (rows_with_missing.size() > 10) msg << ", ...";
    msg << ")";
    throw DataError(msg.str());
  }
  if (labels.empty()) throw DataError(where + ": dataset has no rows");

  const auto n = static_cast<Index>(labels.size());
  const auto d = static_cast<Index>(feature_pos.size());
  data.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                 Eigen::RowMajor>>(values.data(), n, d);
  data.labels = Eigen::Map<const LabelVector>(labels.data(), n);
  data.validate();
  return data;
}

void write_csv(const Dataset& data, std::ostream& out, std::string_view label_column) {
  const bool with_ids = !data.row_ids.empty();
  if (with_ids) out << kUrlColumn << ',';
  for (const auto& name : data.feature_names) out << csv_escape(name) << ',';
  out << label_column << '\n';
  std::ostringstream cell;
  cell.precision(17);
  for (Index i = 0; i < data.rows(); ++i) {
    if (with_ids) out << csv_escape(data.row_ids[static_cast<std::size_t>(i)]) << ',';
    for (Index j = 0; j < data.cols(); ++j) {
      cell.str({});
      cell << data.features(i, j);
      out << cell.str() << ',';
    }
    out << data.labels[i] << '\n';
  }
}

DataSplit stratified_split(const Dataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw UsageError("test fraction must lie strictly between 0 and 1, got " +
                     std::to_string(test_fraction));
  }
  data.validate();
  std::array<std::vector<Index>, 2> by_class;
  for (Index i = 0; i < data.rows(); ++i) by_class[data.labels[i] == kPhishing ? 1 : 0].push_back(i);
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2) {
      throw DataError("class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                      " row(s); stratified split needs at least 2 per class");
    }
  }

  Rng rng(seed);
  DataSplit split;
  split.seed = seed;
  split.test_fraction = test_fraction;
  for (auto& rows : by_class) {
    const auto n = static_cast<Index>(rows.size());
    Index n_test = std::llround(test_fraction * static_cast<double>(n));
    n_test = std::clamp<Index>(n_test, 1, n - 1);
    rng.shuffle(std::span<Index>(rows));
    split.test_rows.insert(split.test_rows.end(), rows.begin(), rows.begin() + n_test);
    split.train_rows.insert(split.train_rows.end(), rows.begin() + n_test, rows.end());
  }
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  split.train = data.select_rows(split.train_rows);
  split.test = data.select_rows(split.test_rows);
  return split;
}

}  // namespace phishguard
