#include "phishguard/feature_selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace phishguard {

std::string_view to_string(BinningStrategy strategy) {
  switch (strategy) {
    case BinningStrategy::EqualFrequency: return "equal-frequency";
    case BinningStrategy::EqualWidth: return "equal-width";
    case BinningStrategy::CategoricalPassthrough: return "categorical";
  }
  return "equal-frequency";
}

BinningStrategy parse_binning_strategy(std::string_view name) {
  if (name == "equal-frequency") return BinningStrategy::EqualFrequency;
  if (name == "equal-width") return BinningStrategy::EqualWidth;
  if (name == "categorical") return BinningStrategy::CategoricalPassthrough;
  throw UsageError("unknown binning strategy '" + std::string(name) + "'");
}

void BinningSpec::validate() const {
  if (max_bins < 2) throw UsageError("max_bins must be at least 2, got " + std::to_string(max_bins));
}

double entropy_from_counts(std::span<const Index> counts) {
  Index total = 0;
  for (Index c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (Index c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double entropy(const LabelVector& labels) {
  if (labels.size() == 0) throw DataError("entropy of an empty label vector");
  const auto counts = class_counts(labels);
  return entropy_from_counts(counts);
}

std::vector<int> discretize(const Eigen::Ref<const Vector>& column, const BinningSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(column.size());
  std::vector<double> sorted(column.data(), column.data() + n);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<int> bins(n);
  const auto bins_of = [&](const std::vector<double>& cuts, auto&& locate) {
    for (std::size_t i = 0; i < n; ++i) bins[i] = static_cast<int>(locate(cuts, column[static_cast<Index>(i)]));
  };

  if (spec.strategy == BinningStrategy::CategoricalPassthrough ||
      distinct.size() <= static_cast<std::size_t>(spec.max_bins)) {
    bins_of(distinct, [](const std::vector<double>& values, double x) {
      return std::lower_bound(values.begin(), values.end(), x) - values.begin();
    });
    return bins;
  }

  if (spec.strategy == BinningStrategy::EqualWidth) {
    const double lo = distinct.front();
    const double width = (distinct.back() - lo) / spec.max_bins;
    for (std::size_t i = 0; i < n; ++i) {
      const auto b = static_cast<int>(std::floor((column[static_cast<Index>(i)] - lo) / width));
      bins[i] = std::clamp(b, 0, spec.max_bins - 1);
    }
    return bins;
  }

  // Equal frequency: cut k sits at the order statistic floor(k n / B); bin
  // membership is x >= cut, so it depends only on ranks. Repeated cuts merge.
  std::vector<double> cuts;
  for (int k = 1; k < spec.max_bins; ++k) {
    const auto pos = static_cast<std::size_t>(k) * n / static_cast<std::size_t>(spec.max_bins);
    if (sorted[pos] > sorted.front()) cuts.push_back(sorted[pos]);
  }
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  bins_of(cuts, [](const std::vector<double>& c, double x) {
    return std::upper_bound(c.begin(), c.end(), x) - c.begin();
  });
  return bins;
}

double information_gain(const Eigen::Ref<const Vector>& column, const LabelVector& labels,
                        const BinningSpec& spec) {
  if (column.size() != labels.size()) {
    throw DataError("column has " + std::to_string(column.size()) + " values but there are " +
                    std::to_string(labels.size()) + " labels");
  }
  const double total_entropy = entropy(labels);
  const std::vector<int> bins = discretize(column, spec);
  const int n_bins = bins.empty() ? 0 : *std::max_element(bins.begin(), bins.end()) + 1;

  std::vector<std::array<Index, 2>> counts(static_cast<std::size_t>(n_bins), {0, 0});
  for (std::size_t i = 0; i < bins.size(); ++i) {
    ++counts[static_cast<std::size_t>(bins[i])][labels[static_cast<Index>(i)] == kPhishing ? 1 : 0];
  }
  const auto n = static_cast<double>(labels.size());
  double conditional = 0.0;
  for (const auto& c : counts) {
    const Index in_bin = c[0] + c[1];
    if (in_bin == 0) continue;
    conditional += static_cast<double>(in_bin) / n * entropy_from_counts(c);
  }
  return std::max(0.0, total_entropy - conditional);
}

std::vector<FeatureScore> rank_features(const Dataset& data, const BinningSpec& spec) {
  data.validate();
  if (data.rows() == 0) throw DataError("cannot rank features of an empty dataset");
  spec.validate();

  std::vector<FeatureScore> scores(static_cast<std::size_t>(data.cols()));
  for (Index j = 0; j < data.cols(); ++j) {
    auto& s = scores[static_cast<std::size_t>(j)];
    s.feature_index = j;
    s.feature_name = data.feature_names[static_cast<std::size_t>(j)];
    s.gain = information_gain(data.features.col(j), data.labels, spec);
  }
  std::stable_sort(scores.begin(), scores.end(), [](const FeatureScore& a, const FeatureScore& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return a.feature_index < b.feature_index;
  });
  for (std::size_t r = 0; r < scores.size(); ++r) scores[r].rank = static_cast<int>(r + 1);
  return scores;
}

std::vector<Index> select_top_n(std::span<const FeatureScore> ranking, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > ranking.size()) {
    throw UsageError("top-n must be between 1 and " + std::to_string(ranking.size()) + ", got " +
                     std::to_string(n));
  }
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(ranking[static_cast<std::size_t>(i)].feature_index);
  return out;
}

}  // namespace phishguard
