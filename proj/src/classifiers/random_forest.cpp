#include "phishguard/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phishguard {
namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;  // sum over children of n_child * gini_child

  bool better_than(const Split& other) const {
    if (other.feature < 0) return true;
    if (score != other.score) return score < other.score;
    if (feature != other.feature) return feature < other.feature;
    return threshold < other.threshold;
  }
};

double weighted_gini(Index positives, Index total) {
  if (total == 0) return 0.0;
  const auto p = static_cast<double>(positives);
  const auto q = static_cast<double>(total - positives);
  return static_cast<double>(total) - (p * p + q * q) / static_cast<double>(total);
}

struct PendingNode {
  int node;
  std::size_t begin;
  std::size_t end;
  int depth;
};

}  // namespace

double gini(Index positives, Index total) {
  if (total == 0) return 0.0;
  return weighted_gini(positives, total) / static_cast<double>(total);
}

const DecisionTree::Node& DecisionTree::leaf_for(const Eigen::Ref<const Vector>& x) const {
  const Node* node = &nodes.front();
  while (node->feature >= 0) {
    node = &nodes[static_cast<std::size_t>(x[node->feature] <= node->threshold ? node->left : node->right)];
  }
  return *node;
}

int DecisionTree::vote(const Eigen::Ref<const Vector>& x) const {
  return leaf_for(x).phishing_fraction >= 0.5 ? kPhishing : kLegitimate;
}

int DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<int> depths(nodes.size(), 0);
  int deepest = 0;
  // Children always follow their parent in `nodes`.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    deepest = std::max(deepest, depths[i]);
    if (n.feature >= 0) {
      depths[static_cast<std::size_t>(n.left)] = depths[i] + 1;
      depths[static_cast<std::size_t>(n.right)] = depths[i] + 1;
    }
  }
  return deepest;
}

DecisionTree grow_tree(const Matrix& X, const LabelVector& y, std::span<const Index> rows,
                       const RandomForestParams& params, Rng& rng) {
  const auto d = static_cast<int>(X.cols());
  int mtry = params.features_per_split > 0
                 ? params.features_per_split
                 : static_cast<int>(std::floor(std::sqrt(static_cast<double>(d))));
  mtry = std::clamp(mtry, 1, d);

  DecisionTree tree;
  std::vector<Index> sample(rows.begin(), rows.end());
  std::vector<int> feature_order(static_cast<std::size_t>(d));
  std::vector<std::pair<double, int>> column;
  column.reserve(sample.size());

  tree.nodes.emplace_back();
  std::vector<PendingNode> stack{{0, 0, sample.size(), 0}};
  while (!stack.empty()) {
    const PendingNode pending = stack.back();
    stack.pop_back();
    const auto n = static_cast<Index>(pending.end - pending.begin);
    Index positives = 0;
    for (std::size_t i = pending.begin; i < pending.end; ++i) positives += y[sample[i]] == kPhishing;
    tree.nodes[static_cast<std::size_t>(pending.node)].phishing_fraction =
        n == 0 ? 0.0 : static_cast<double>(positives) / static_cast<double>(n);

    if (positives == 0 || positives == n || n < params.min_samples_split ||
        (params.max_depth > 0 && pending.depth >= params.max_depth)) {
      continue;
    }

    std::iota(feature_order.begin(), feature_order.end(), 0);
    Split best;
    for (int drawn = 0; drawn < d; ++drawn) {
      if (drawn >= mtry && best.feature >= 0) break;
      const auto pick = drawn + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d - drawn)));
      std::swap(feature_order[static_cast<std::size_t>(drawn)], feature_order[static_cast<std::size_t>(pick)]);
      const int f = feature_order[static_cast<std::size_t>(drawn)];

      column.clear();
      for (std::size_t i = pending.begin; i < pending.end; ++i) {
        column.emplace_back(X(sample[i], f), y[sample[i]]);
      }
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (column.front().first == column.back().first) continue;

      Index left_n = 0;
      Index left_pos = 0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        ++left_n;
        left_pos += column[i].second == kPhishing;
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (lo == hi) continue;
        double threshold = lo + (hi - lo) / 2.0;
        if (threshold >= hi) threshold = lo;
        Split candidate{f, threshold,
                        weighted_gini(left_pos, left_n) +
                            weighted_gini(positives - left_pos, n - left_n)};
        if (candidate.better_than(best)) best = candidate;
      }
    }
    if (best.feature < 0) continue;  // identical rows with mixed labels

    const auto mid = std::partition(
        sample.begin() + static_cast<std::ptrdiff_t>(pending.begin),
        sample.begin() + static_cast<std::ptrdiff_t>(pending.end),
        [&](Index r) { return X(r, best.feature) <= best.threshold; });
    const auto split_at = static_cast<std::size_t>(mid - sample.begin());

    const int left = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    auto& node = tree.nodes[static_cast<std::size_t>(pending.node)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left;
    node.right = left + 1;
    stack.push_back({left + 1, split_at, pending.end, pending.depth + 1});
    stack.push_back({left, pending.begin, split_at, pending.depth + 1});
  }
  return tree;
}

double RandomForest::predict_proba(const Eigen::Ref<const Vector>& x) const {
  if (trees.empty()) return 0.0;
  int votes = 0;
  for (const auto& tree : trees) votes += tree.vote(x);
  return static_cast<double>(votes) / static_cast<double>(trees.size());
}

RandomForest fit_random_forest(const Matrix& X, const LabelVector& y,
                               const RandomForestParams& params, std::uint64_t seed) {
  Rng master(seed);
  RandomForest forest;
  forest.trees.reserve(static_cast<std::size_t>(params.n_trees));
  std::vector<Index> rows(static_cast<std::size_t>(X.rows()));
  for (int t = 0; t < params.n_trees; ++t) {
    Rng rng(master.next());
    if (params.bootstrap) {
      for (auto& r : rows) r = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(X.rows())));
    } else {
      std::iota(rows.begin(), rows.end(), Index{0});
    }
    forest.trees.push_back(grow_tree(X, y, rows, params, rng));
  }
  return forest;
}

}  // namespace phishguard
