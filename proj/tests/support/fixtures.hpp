#pragma once

// Synthetic datasets shared by the unit, integration and acceptance suites.

#include "phishguard/dataset.hpp"
#include "phishguard/random.hpp"

#include <cmath>
#include <string>

namespace phishguard::testing {

inline std::vector<std::string> numbered_names(Index d, const std::string& prefix = "f") {
  std::vector<std::string> names;
  for (Index j = 0; j < d; ++j) names.push_back(prefix + std::to_string(j));
  return names;
}

/// Two isotropic Gaussian clusters, class 0 centred at the origin and class 1
/// at (shift, ..., shift). Rows alternate by class.
inline Dataset gaussian_blobs(Index per_class, Index d, double shift, std::uint64_t seed,
                              double stddev = 1.0) {
  Rng rng(seed);
  Dataset data;
  data.features.resize(2 * per_class, d);
  data.labels.resize(2 * per_class);
  for (Index i = 0; i < 2 * per_class; ++i) {
    const int label = static_cast<int>(i % 2);
    data.labels[i] = label;
    for (Index j = 0; j < d; ++j) data.features(i, j) = rng.normal(label * shift, stddev);
  }
  data.feature_names = numbered_names(d);
  return data;
}

/// Phishing-like table: counts, binary flags, heavy-tailed large-scale
/// values and Gaussians. The first `informative` columns depend on the label.
inline Dataset synthetic_phishing(Index n, Index d, std::uint64_t seed, Index informative = 10) {
  Rng rng(seed);
  Dataset data;
  data.features.resize(n, d);
  data.labels.resize(n);
  for (Index i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    data.labels[i] = y;
    for (Index j = 0; j < d; ++j) {
      const double shift = j < informative ? 0.4 + 0.05 * static_cast<double>(j % 5) : 0.0;
      double v = 0.0;
      switch (j % 4) {
        case 0: v = std::floor(std::abs(rng.normal(3.0 + 8.0 * shift * y, 2.0))); break;
        case 1: v = rng.uniform01() < 0.3 + 0.4 * shift * y ? 1.0 : 0.0; break;
        case 2: v = std::exp(rng.normal(2.0 + shift * y, 1.0)) * 1000.0; break;
        default: v = rng.normal(shift * y, 1.0); break;
      }
      data.features(i, j) = v;
    }
  }
  data.feature_names = numbered_names(d);
  return data;
}

inline LabelVector random_labels(Index n, std::uint64_t seed, double p_phishing = 0.5) {
  Rng rng(seed);
  LabelVector y(n);
  for (Index i = 0; i < n; ++i) y[i] = rng.uniform01() < p_phishing ? kPhishing : kLegitimate;
  return y;
}

}  // namespace phishguard::testing
