#include "phishguard/classifiers.hpp"

#include "phishguard/dataset.hpp"

#include <cmath>
#include <string>

namespace phishguard {

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::RF: return "RF";
    case ClassifierKind::KNN: return "KNN";
    case ClassifierKind::SVM: return "SVM";
    case ClassifierKind::LR: return "LR";
    case ClassifierKind::NB: return "NB";
  }
  return "RF";
}

ClassifierKind parse_classifier_kind(std::string_view name) {
  for (ClassifierKind kind : kAllClassifierKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw UsageError("unknown classifier '" + std::string(name) + "'");
}

void HyperParams::validate() const {
  if (rf.n_trees < 1) throw UsageError("rf.n_trees must be positive");
  if (rf.max_depth < 0) throw UsageError("rf.max_depth must be >= 0 (0 = unlimited)");
  if (rf.min_samples_split < 2) throw UsageError("rf.min_samples_split must be >= 2");
  if (rf.features_per_split < 0) throw UsageError("rf.features_per_split must be >= 0 (0 = sqrt(d))");
  if (knn.k < 1 || knn.k % 2 == 0) throw UsageError("knn.k must be a positive odd number");
  if (!(svm.lambda > 0.0)) throw UsageError("svm.lambda must be positive");
  if (svm.epochs < 1) throw UsageError("svm.epochs must be positive");
  if (!(lr.learning_rate > 0.0)) throw UsageError("lr.learning_rate must be positive");
  if (lr.epochs < 1) throw UsageError("lr.epochs must be positive");
  if (lr.l2 < 0.0) throw UsageError("lr.l2 must be >= 0");
  if (!(nb.var_smoothing > 0.0)) throw UsageError("nb.var_smoothing must be positive");
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

TrainedClassifier::TrainedClassifier(Model model, Index feature_count)
    : model_(std::move(model)), feature_count_(feature_count) {}

ClassifierKind TrainedClassifier::kind() const {
  switch (model_.index()) {
    case 0: return ClassifierKind::RF;
    case 1: return ClassifierKind::KNN;
    case 2: return ClassifierKind::SVM;
    case 3: return ClassifierKind::LR;
    default: return ClassifierKind::NB;
  }
}

double TrainedClassifier::predict_proba(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != feature_count_) {
    throw DataError(std::string(to_string(kind())) + " expects " + std::to_string(feature_count_) +
                    " features, got " + std::to_string(x.size()));
  }
  const double p = std::visit([&](const auto& m) { return m.predict_proba(x); }, model_);
  return std::clamp(p, 0.0, 1.0);
}

Vector TrainedClassifier::predict_proba_rows(const Matrix& X) const {
  Vector out(X.rows());
  Vector row(X.cols());
  for (Index i = 0; i < X.rows(); ++i) {
    row = X.row(i).transpose();
    out[i] = predict_proba(row);
  }
  return out;
}

int TrainedClassifier::predict(const Eigen::Ref<const Vector>& x, double threshold) const {
  if (!(threshold > 0.0 && threshold < 1.0)) throw UsageError("threshold must lie in (0, 1)");
  return predict_proba(x) >= threshold ? kPhishing : kLegitimate;
}

TrainedClassifier train(ClassifierKind kind, const HyperParams& hp, const Matrix& X,
                        const LabelVector& y, std::uint64_t seed) {
  hp.validate();
  if (X.rows() == 0 || X.cols() == 0) throw DataError("cannot train on an empty matrix");
  if (X.rows() != y.size()) {
    throw DataError("training matrix has " + std::to_string(X.rows()) + " rows but " +
                    std::to_string(y.size()) + " labels");
  }
  const auto counts = class_counts(y);
  if (counts[0] == 0 || counts[1] == 0) throw DataError("training labels contain a single class");

  switch (kind) {
    case ClassifierKind::RF: return {fit_random_forest(X, y, hp.rf, seed), X.cols()};
    case ClassifierKind::KNN: return {fit_knn(X, y, hp.knn), X.cols()};
    case ClassifierKind::SVM: return {fit_linear_svm(X, y, hp.svm, seed), X.cols()};
    case ClassifierKind::LR: return {fit_logistic_regression(X, y, hp.lr), X.cols()};
    case ClassifierKind::NB: return {fit_naive_bayes(X, y, hp.nb), X.cols()};
  }
  throw UsageError("unknown classifier kind");
}

}  // namespace phishguard
