#pragma once

#include "phishguard/classifiers.hpp"
#include "phishguard/dataset.hpp"
#include "phishguard/feature_selection.hpp"
#include "phishguard/metrics.hpp"
#include "phishguard/preprocessing.hpp"
#include "phishguard/url_features.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phishguard {

enum class WeightingMode { Auc, Accuracy, Uniform };

std::string_view to_string(WeightingMode mode);
WeightingMode parse_weighting_mode(std::string_view name);

/// Weighted soft-voting ensemble over the five base classifiers.
///
/// Inputs are raw rows in the original feature space (`feature_names`); the
/// model restricts them to `selected_features`, standardizes them with
/// `scaler`, and averages member probabilities with `weights`.
struct EnsembleModel {
  std::vector<TrainedClassifier> members;
  std::vector<double> weights;
  std::vector<std::string> feature_names;
  std::vector<Index> selected_features;
  ScalerParams scaler;
  double threshold = 0.5;

  void validate() const;
  std::vector<std::string> selected_names() const;
};

/// Weighted mean sum(w_i p_i) / sum(w_i).
double weighted_vote(std::span<const double> probabilities, std::span<const double> weights);

/// One weight per member: train ROC-AUC, train accuracy (as a fraction), or 1.
std::vector<double> compute_weights(std::span<const TrainedClassifier> members, const Matrix& X,
                                    const LabelVector& y, WeightingMode mode = WeightingMode::Auc);

double ensemble_predict_proba(const EnsembleModel& model, const Eigen::Ref<const Vector>& raw);
/// `selected` holds unscaled values of the selected features, in selection order.
double ensemble_predict_proba_selected(const EnsembleModel& model,
                                       const Eigen::Ref<const Vector>& selected);
/// One probability per raw row.
Vector ensemble_predict_proba_rows(const EnsembleModel& model, const Matrix& raw);
/// 1 iff the ensemble probability >= model.threshold.
int ensemble_predict(const EnsembleModel& model, const Eigen::Ref<const Vector>& raw);

struct PipelineConfig {
  std::string input;
  std::string label_column{kDefaultLabelColumn};
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  int top_n = 20;
  BinningSpec binning;
  WeightingMode weighting = WeightingMode::Auc;
  double threshold = 0.5;
  HyperParams hyper;

  void validate() const;
};

/// Seed handed to the i-th member when training with `seed`.
std::uint64_t member_seed(std::uint64_t seed, std::size_t member);

struct TrainedPipeline {
  EnsembleModel model;
  DataSplit split;
  std::vector<FeatureScore> ranking;
};

/// split -> rank on train -> top-n -> scale -> five members -> weights.
TrainedPipeline train_pipeline(const Dataset& data, const PipelineConfig& config);

struct UrlVerdict {
  double probability = 0.0;
  int verdict = kLegitimate;
};

/// Scores a raw URL. Selected features that are not lexical must come from
/// `overrides`; otherwise DataError lists every missing name.
UrlVerdict score_url(const EnsembleModel& model, std::string_view url,
                     const FeatureOverrides& overrides = {});

}  // namespace phishguard
