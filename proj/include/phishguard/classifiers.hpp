#pragma once

#include "phishguard/random.hpp"
#include "phishguard/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace phishguard {

enum class ClassifierKind { RF, KNN, SVM, LR, NB };

inline constexpr std::array<ClassifierKind, 5> kAllClassifierKinds = {
    ClassifierKind::RF, ClassifierKind::SVM, ClassifierKind::KNN, ClassifierKind::LR,
    ClassifierKind::NB};

std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier_kind(std::string_view name);

struct RandomForestParams {
  int n_trees = 100;
  int max_depth = 0;  // 0 = unlimited
  int min_samples_split = 2;
  int features_per_split = 0;  // 0 = floor(sqrt(d))
  bool bootstrap = true;
};

struct KnnParams {
  int k = 5;
};

struct SvmParams {
  double lambda = 1e-4;
  int epochs = 50;
};

struct LogisticParams {
  double learning_rate = 0.1;
  int epochs = 300;
  double l2 = 1e-4;
};

struct NaiveBayesParams {
  // Added to every variance, relative to the largest feature variance.
  double var_smoothing = 1e-9;
};

struct HyperParams {
  RandomForestParams rf;
  KnnParams knn;
  SvmParams svm;
  LogisticParams lr;
  NaiveBayesParams nb;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Decision tree / random forest

/// Gini impurity of a node holding `positives` phishing rows out of `total`.
double gini(Index positives, Index total);

struct DecisionTree {
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;   // x[feature] <= threshold
    int right = -1;  // x[feature] > threshold
    double phishing_fraction = 0.0;
  };
  std::vector<Node> nodes;

  const Node& leaf_for(const Eigen::Ref<const Vector>& x) const;
  /// Majority vote of the reached leaf; an even leaf votes phishing.
  int vote(const Eigen::Ref<const Vector>& x) const;
  int depth() const;
};

/// CART with Gini impurity over `rows` of X (repeats allowed). At each node
/// `features_per_split` features are drawn without replacement; if none of
/// them separates the node, the remaining features are tried in draw order.
DecisionTree grow_tree(const Matrix& X, const LabelVector& y, std::span<const Index> rows,
                       const RandomForestParams& params, Rng& rng);

struct RandomForest {
  std::vector<DecisionTree> trees;

  /// Fraction of trees voting phishing.
  double predict_proba(const Eigen::Ref<const Vector>& x) const;
};

RandomForest fit_random_forest(const Matrix& X, const LabelVector& y,
                               const RandomForestParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// k-nearest neighbours

struct KNearestNeighbors {
  Matrix train;
  LabelVector labels;
  int k = 5;

  /// Training-row indices of the k nearest rows; equal distances go to the
  /// lower index.
  std::vector<Index> neighbors(const Eigen::Ref<const Vector>& x) const;
  double predict_proba(const Eigen::Ref<const Vector>& x) const;
};

KNearestNeighbors fit_knn(const Matrix& X, const LabelVector& y, const KnnParams& params);

// ---------------------------------------------------------------------------
// Linear SVM (Pegasos) with sigmoid calibration

struct LinearSvm {
  Vector weights;
  double bias = 0.0;
  double calibration_slope = 1.0;

  double margin(const Eigen::Ref<const Vector>& x) const;
  double predict_proba(const Eigen::Ref<const Vector>& x) const;
};

/// lambda/2 (|w|^2 + b^2) + mean hinge loss; labels are mapped to +-1 and the
/// bias is trained as the weight of a constant feature.
double hinge_objective(const Matrix& X, const LabelVector& y, const Vector& weights, double bias,
                       double lambda);

/// Slope a minimizing the log-loss of 1 / (1 + exp(-a m)) over the margins,
/// by 20 golden-section steps on [0.01, 100].
double fit_sigmoid_slope(const Eigen::Ref<const Vector>& margins, const LabelVector& y);

/// `epoch_objectives`, when given, receives the objective before training and
/// after every epoch.
LinearSvm fit_linear_svm(const Matrix& X, const LabelVector& y, const SvmParams& params,
                         std::uint64_t seed, std::vector<double>* epoch_objectives = nullptr);

// ---------------------------------------------------------------------------
// Logistic regression

struct LogisticRegression {
  Vector weights;
  double bias = 0.0;

  double predict_proba(const Eigen::Ref<const Vector>& x) const;
};

/// Mean log-loss plus l2/2 |w|^2 (bias unpenalized).
double logistic_loss(const Matrix& X, const LabelVector& y, const Vector& weights, double bias,
                     double l2);

struct LogisticGradient {
  Vector weights;
  double bias = 0.0;
};

LogisticGradient logistic_gradient(const Matrix& X, const LabelVector& y, const Vector& weights,
                                   double bias, double l2);

/// Full-batch gradient descent from zero.
LogisticRegression fit_logistic_regression(const Matrix& X, const LabelVector& y,
                                           const LogisticParams& params);

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

struct GaussianNaiveBayes {
  Matrix means;      // 2 x d, row = class label
  Matrix variances;  // 2 x d, smoothed, > 0
  std::array<double, 2> priors{0.5, 0.5};

  /// Normalized class posteriors {P(legitimate | x), P(phishing | x)}.
  std::array<double, 2> posteriors(const Eigen::Ref<const Vector>& x) const;
  double predict_proba(const Eigen::Ref<const Vector>& x) const { return posteriors(x)[1]; }
};

GaussianNaiveBayes fit_naive_bayes(const Matrix& X, const LabelVector& y,
                                   const NaiveBayesParams& params);

// ---------------------------------------------------------------------------

/// Any of the five fitted base models.
class TrainedClassifier {
 public:
  using Model =
      std::variant<RandomForest, KNearestNeighbors, LinearSvm, LogisticRegression, GaussianNaiveBayes>;

  TrainedClassifier(Model model, Index feature_count);

  ClassifierKind kind() const;
  Index feature_count() const { return feature_count_; }
  const Model& model() const { return model_; }

  /// P(phishing | x) in [0, 1].
  double predict_proba(const Eigen::Ref<const Vector>& x) const;
  /// One probability per row of X.
  Vector predict_proba_rows(const Matrix& X) const;
  /// 1 iff predict_proba(x) >= threshold.
  int predict(const Eigen::Ref<const Vector>& x, double threshold = 0.5) const;

 private:
  Model model_;
  Index feature_count_;
};

/// Throws DataError when X is empty, dimensions disagree, or y holds a single
/// class.
TrainedClassifier train(ClassifierKind kind, const HyperParams& hp, const Matrix& X,
                        const LabelVector& y, std::uint64_t seed);

/// Stable logistic function.
double sigmoid(double z);

}  // namespace phishguard
