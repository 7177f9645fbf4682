#include "phishguard/ensemble.hpp"

#include <algorithm>
#include <set>

namespace phishguard {

std::string_view to_string(WeightingMode mode) {
  switch (mode) {
    case WeightingMode::Auc: return "auc";
    case WeightingMode::Accuracy: return "accuracy";
    case WeightingMode::Uniform: return "uniform";
  }
  return "auc";
}

WeightingMode parse_weighting_mode(std::string_view name) {
  if (name == "auc") return WeightingMode::Auc;
  if (name == "accuracy") return WeightingMode::Accuracy;
  if (name == "uniform") return WeightingMode::Uniform;
  throw UsageError("unknown weighting mode '" + std::string(name) + "' (expected auc, accuracy or uniform)");
}

void EnsembleModel::validate() const {
  if (members.size() != kAllClassifierKinds.size()) {
    throw DataError("ensemble needs exactly 5 members, has " + std::to_string(members.size()));
  }
  std::set<ClassifierKind> kinds;
  for (const auto& m : members) {
    if (!kinds.insert(m.kind()).second) throw DataError("ensemble has two members of the same kind");
    if (m.feature_count() != static_cast<Index>(selected_features.size())) {
      throw DataError("member feature count does not match the selected features");
    }
  }
  if (weights.size() != members.size()) throw DataError("ensemble weight count does not match members");
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); }) ||
      std::none_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; })) {
    throw DataError("ensemble weights must be nonnegative and not all zero");
  }
  std::set<Index> seen;
  for (Index f : selected_features) {
    if (f < 0 || f >= static_cast<Index>(feature_names.size()) || !seen.insert(f).second) {
      throw DataError("selected feature indices must be unique and within the feature count");
    }
  }
  if (scaler.size() != static_cast<Index>(selected_features.size()) || scaler.stds.size() != scaler.size()) {
    throw DataError("scaler dimension does not match the selected features");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) throw DataError("ensemble threshold must lie in (0, 1)");
}

std::vector<std::string> EnsembleModel::selected_names() const {
  std::vector<std::string> names;
  names.reserve(selected_features.size());
  for (Index f : selected_features) names.push_back(feature_names[static_cast<std::size_t>(f)]);
  return names;
}

double weighted_vote(std::span<const double> probabilities, std::span<const double> weights) {
  if (probabilities.size() != weights.size() || probabilities.empty()) {
    throw DataError("weighted vote needs one weight per probability");
  }
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    numerator += weights[i] * probabilities[i];
    denominator += weights[i];
  }
  if (!(denominator > 0.0)) throw DataError("weighted vote needs a positive total weight");
  const double lo = *std::min_element(probabilities.begin(), probabilities.end());
  const double hi = *std::max_element(probabilities.begin(), probabilities.end());
  // Rounding must not push the mean outside the members' range.
  return std::clamp(numerator / denominator, lo, hi);
}

std::vector<double> compute_weights(std::span<const TrainedClassifier> members, const Matrix& X,
                                    const LabelVector& y, WeightingMode mode) {
  if (X.rows() != y.size()) throw DataError("weight computation: rows and labels disagree");
  const auto counts = class_counts(y);
  if (counts[0] == 0 || counts[1] == 0) throw DataError("weight computation needs both classes");
  std::vector<double> weights;
  weights.reserve(members.size());
  for (const auto& m : members) {
    if (m.feature_count() != X.cols()) throw DataError("member was trained on a different feature count");
    if (mode == WeightingMode::Uniform) {
      weights.push_back(1.0);
      continue;
    }
    const Vector scores = m.predict_proba_rows(X);
    if (mode == WeightingMode::Auc) {
      weights.push_back(roc_auc(scores, y));
    } else {
      weights.push_back(evaluate(scores, y).accuracy_pct / 100.0);
    }
  }
  return weights;
}

double ensemble_predict_proba_selected(const EnsembleModel& model,
                                       const Eigen::Ref<const Vector>& selected) {
  const Vector scaled = transform_row(model.scaler, selected);
  std::vector<double> probabilities;
  probabilities.reserve(model.members.size());
  for (const auto& m : model.members) probabilities.push_back(m.predict_proba(scaled));
  return weighted_vote(probabilities, model.weights);
}

double ensemble_predict_proba(const EnsembleModel& model, const Eigen::Ref<const Vector>& raw) {
  if (raw.size() != static_cast<Index>(model.feature_names.size())) {
    throw DataError("ensemble expects " + std::to_string(model.feature_names.size()) +
                    " raw features, got " + std::to_string(raw.size()));
  }
  Vector selected(static_cast<Index>(model.selected_features.size()));
  for (std::size_t k = 0; k < model.selected_features.size(); ++k) {
    selected[static_cast<Index>(k)] = raw[model.selected_features[k]];
  }
  return ensemble_predict_proba_selected(model, selected);
}

Vector ensemble_predict_proba_rows(const EnsembleModel& model, const Matrix& raw) {
  Vector out(raw.rows());
  Vector row(raw.cols());
  for (Index i = 0; i < raw.rows(); ++i) {
    row = raw.row(i).transpose();
    out[i] = ensemble_predict_proba(model, row);
  }
  return out;
}

int ensemble_predict(const EnsembleModel& model, const Eigen::Ref<const Vector>& raw) {
  return ensemble_predict_proba(model, raw) >= model.threshold ? kPhishing : kLegitimate;
}

void PipelineConfig::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw UsageError("test fraction must lie in (0, 1)");
  if (top_n < 1) throw UsageError("top-n must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) throw UsageError("threshold must lie in (0, 1)");
  binning.validate();
  hyper.validate();
}

std::uint64_t member_seed(std::uint64_t seed, std::size_t member) {
  Rng rng(seed + 0x9E3779B97F4A7C15ULL * (member + 1));
  return rng.next();
}

TrainedPipeline train_pipeline(const Dataset& data, const PipelineConfig& config) {
  config.validate();
  data.validate();
  if (config.top_n > data.cols()) {
    throw UsageError("top-n " + std::to_string(config.top_n) + " exceeds the " +
                     std::to_string(data.cols()) + " available features");
  }
  TrainedPipeline out;
  out.split = stratified_split(data, config.test_fraction, config.seed);
  out.ranking = rank_features(out.split.train, config.binning);

  EnsembleModel& model = out.model;
  model.feature_names = data.feature_names;
  model.selected_features = select_top_n(out.ranking, config.top_n);
  model.threshold = config.threshold;

  Matrix selected(out.split.train.rows(), static_cast<Index>(model.selected_features.size()));
  for (std::size_t k = 0; k < model.selected_features.size(); ++k) {
    selected.col(static_cast<Index>(k)) = out.split.train.features.col(model.selected_features[k]);
  }
  model.scaler = fit_scaler(selected);
  const Matrix scaled = transform(model.scaler, selected);

  for (std::size_t m = 0; m < kAllClassifierKinds.size(); ++m) {
    model.members.push_back(train(kAllClassifierKinds[m], config.hyper, scaled, out.split.train.labels,
                                  member_seed(config.seed, m)));
  }
  model.weights = compute_weights(model.members, scaled, out.split.train.labels, config.weighting);
  if (std::none_of(model.weights.begin(), model.weights.end(), [](double w) { return w > 0.0; })) {
    throw DataError("every ensemble member received weight 0");
  }
  model.validate();
  return out;
}

UrlVerdict score_url(const EnsembleModel& model, std::string_view url, const FeatureOverrides& overrides) {
  const UrlFeatureVector lexical = extract_lexical(url);
  const auto names = model.selected_names();
  Vector selected(static_cast<Index>(names.size()));
  std::vector<std::string> missing;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (const auto it = overrides.find(names[k]); it != overrides.end()) {
      selected[static_cast<Index>(k)] = it->second;
      continue;
    }
    const auto pos = std::find(lexical.names.begin(), lexical.names.end(), names[k]);
    if (pos == lexical.names.end()) {
      missing.push_back(names[k]);
      continue;
    }
    selected[static_cast<Index>(k)] = lexical.values[static_cast<std::size_t>(pos - lexical.names.begin())];
  }
  if (!missing.empty()) {
    std::string msg = "model needs non-lexical feature(s) with no override: ";
    for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : "") + missing[i];
    throw DataError(msg);
  }
  UrlVerdict verdict;
  verdict.probability = ensemble_predict_proba_selected(model, selected);
  verdict.verdict = verdict.probability >= model.threshold ? kPhishing : kLegitimate;
  return verdict;
}

}  // namespace phishguard
