#pragma once

#include "phishguard/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phishguard {

inline constexpr std::string_view kDefaultLabelColumn = "status";
inline constexpr std::string_view kUrlColumn = "url";

/// Numeric feature table with binary labels.
///
/// `row_ids` carries the optional "url" identifier column; it is metadata and
/// never part of `features`.
struct Dataset {
  Matrix features;
  LabelVector labels;
  std::vector<std::string> feature_names;
  std::vector<std::string> row_ids;

  Index rows() const { return features.rows(); }
  Index cols() const { return features.cols(); }

  /// Throws DataError when any structural invariant is broken.
  void validate() const;

  std::optional<Index> column_index(std::string_view name) const;

  Dataset select_rows(std::span<const Index> rows) const;
};

/// Per-class row counts, indexed by label.
std::array<Index, 2> class_counts(const LabelVector& labels);

/// Parses the label cell; accepts "phishing"/"legitimate" and "1"/"0".
std::optional<int> parse_label(std::string_view cell);

Dataset load_csv(const std::filesystem::path& path,
                 std::string_view label_column = kDefaultLabelColumn);

/// `source` only appears in error messages.
Dataset read_csv(std::istream& in, std::string_view label_column = kDefaultLabelColumn,
                 std::string_view source = "<stream>");

/// Writes labels as 1/0 under `label_column`, after the feature columns.
void write_csv(const Dataset& data, std::ostream& out,
               std::string_view label_column = kDefaultLabelColumn);

struct DataSplit {
  Dataset train;
  Dataset test;
  // Source row indices, ascending.
  std::vector<Index> train_rows;
  std::vector<Index> test_rows;
  std::uint64_t seed = 0;
  double test_fraction = 0.0;
};

/// Per-class holdout split. Each class contributes round(test_fraction * n_c)
/// rows to the test side, clamped so both sides keep at least one row.
DataSplit stratified_split(const Dataset& data, double test_fraction, std::uint64_t seed);

}  // namespace phishguard
