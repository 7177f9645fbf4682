#include "phishguard/classifiers.hpp"

#include <cmath>

namespace phishguard {

double LogisticRegression::predict_proba(const Eigen::Ref<const Vector>& x) const {
  return sigmoid(weights.dot(x) + bias);
}

double logistic_loss(const Matrix& X, const LabelVector& y, const Vector& weights, double bias,
                     double l2) {
  const Vector scores = (X * weights).array() + bias;
  double loss = 0.0;
  for (Index i = 0; i < X.rows(); ++i) {
    // -log sigma(s) for positives, -log(1 - sigma(s)) for negatives.
    const double z = y[i] == kPhishing ? scores[i] : -scores[i];
    loss += z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
  }
  return loss / static_cast<double>(X.rows()) + 0.5 * l2 * weights.squaredNorm();
}

LogisticGradient logistic_gradient(const Matrix& X, const LabelVector& y, const Vector& weights,
                                   double bias, double l2) {
  const Vector scores = (X * weights).array() + bias;
  Vector residual(X.rows());
  for (Index i = 0; i < X.rows(); ++i) residual[i] = sigmoid(scores[i]) - (y[i] == kPhishing ? 1.0 : 0.0);
  const auto n = static_cast<double>(X.rows());
  LogisticGradient g;
  g.weights = X.transpose() * residual / n + l2 * weights;
  g.bias = residual.sum() / n;
  return g;
}

LogisticRegression fit_logistic_regression(const Matrix& X, const LabelVector& y,
                                           const LogisticParams& params) {
  LogisticRegression model;
  model.weights = Vector::Zero(X.cols());
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    const LogisticGradient g = logistic_gradient(X, y, model.weights, model.bias, params.l2);
    model.weights -= params.learning_rate * g.weights;
    model.bias -= params.learning_rate * g.bias;
  }
  return model;
}

}  // namespace phishguard
