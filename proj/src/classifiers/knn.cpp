#include "phishguard/classifiers.hpp"

#include <algorithm>
#include <numeric>

namespace phishguard {

std::vector<Index> KNearestNeighbors::neighbors(const Eigen::Ref<const Vector>& x) const {
  const Vector distances = (train.rowwise() - x.transpose()).rowwise().squaredNorm();
  std::vector<Index> order(static_cast<std::size_t>(train.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    [&](Index a, Index b) {
                      if (distances[a] != distances[b]) return distances[a] < distances[b];
                      return a < b;
                    });
  order.resize(count);
  return order;
}

double KNearestNeighbors::predict_proba(const Eigen::Ref<const Vector>& x) const {
  const auto nearest = neighbors(x);
  if (nearest.empty()) return 0.0;
  Index votes = 0;
  for (Index i : nearest) votes += labels[i] == kPhishing;
  return static_cast<double>(votes) / static_cast<double>(nearest.size());
}

KNearestNeighbors fit_knn(const Matrix& X, const LabelVector& y, const KnnParams& params) {
  return {X, y, params.k};
}

}  // namespace phishguard
