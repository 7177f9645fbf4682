#pragma once

#include "phishguard/dataset.hpp"
#include "phishguard/types.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phishguard {

enum class BinningStrategy { EqualFrequency, EqualWidth, CategoricalPassthrough };

std::string_view to_string(BinningStrategy strategy);
BinningStrategy parse_binning_strategy(std::string_view name);

/// How a continuous column is discretized before its information gain is
/// measured. Columns with at most `max_bins` distinct values always use one
/// bin per distinct value.
struct BinningSpec {
  int max_bins = 10;
  BinningStrategy strategy = BinningStrategy::EqualFrequency;

  void validate() const;
};

/// Shannon entropy in bits, with 0 log 0 = 0. Throws DataError on empty input.
double entropy(const LabelVector& labels);

/// Entropy of a discrete distribution given by nonnegative counts.
double entropy_from_counts(std::span<const Index> counts);

/// Bin id per row, in [0, number of bins).
std::vector<int> discretize(const Eigen::Ref<const Vector>& column, const BinningSpec& spec);

/// H(labels) minus the count-weighted entropy of the labels inside each bin.
double information_gain(const Eigen::Ref<const Vector>& column, const LabelVector& labels,
                        const BinningSpec& spec = {});

struct FeatureScore {
  Index feature_index = 0;
  std::string feature_name;
  double gain = 0.0;  // bits
  int rank = 0;       // 1-based
};

/// Descending gain; equal gains keep ascending feature index.
std::vector<FeatureScore> rank_features(const Dataset& data, const BinningSpec& spec = {});

/// Indices of the first `n` entries of `ranking`, in ranking order.
std::vector<Index> select_top_n(std::span<const FeatureScore> ranking, int n);

}  // namespace phishguard
