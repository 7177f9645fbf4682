#include "phishguard/classifiers.hpp"

#include <cmath>
#include <numeric>

namespace phishguard {
namespace {

double signed_label(int label) { return label == kPhishing ? 1.0 : -1.0; }

// log(1 + exp(-z)) without overflow.
double softplus_neg(double z) {
  return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

double calibration_loss(const Eigen::Ref<const Vector>& margins, const LabelVector& y, double slope) {
  double loss = 0.0;
  for (Index i = 0; i < margins.size(); ++i) {
    loss += softplus_neg(slope * margins[i] * signed_label(y[i]));
  }
  return loss / static_cast<double>(margins.size());
}

}  // namespace

double LinearSvm::margin(const Eigen::Ref<const Vector>& x) const { return weights.dot(x) + bias; }

double LinearSvm::predict_proba(const Eigen::Ref<const Vector>& x) const {
  return sigmoid(calibration_slope * margin(x));
}

double hinge_objective(const Matrix& X, const LabelVector& y, const Vector& weights, double bias,
                       double lambda) {
  const Vector margins = (X * weights).array() + bias;
  double hinge = 0.0;
  for (Index i = 0; i < X.rows(); ++i) hinge += std::max(0.0, 1.0 - signed_label(y[i]) * margins[i]);
  return 0.5 * lambda * (weights.squaredNorm() + bias * bias) + hinge / static_cast<double>(X.rows());
}

double fit_sigmoid_slope(const Eigen::Ref<const Vector>& margins, const LabelVector& y) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.01;
  double hi = 100.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = calibration_loss(margins, y, c);
  double fd = calibration_loss(margins, y, d);
  for (int iter = 0; iter < 20; ++iter) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = calibration_loss(margins, y, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = calibration_loss(margins, y, d);
    }
  }
  return 0.5 * (lo + hi);
}

LinearSvm fit_linear_svm(const Matrix& X, const LabelVector& y, const SvmParams& params,
                         std::uint64_t seed, std::vector<double>* epoch_objectives) {
  const Index n = X.rows();
  Vector w = Vector::Zero(X.cols());
  double b = 0.0;
  const double radius = 1.0 / std::sqrt(params.lambda);
  if (epoch_objectives) epoch_objectives->push_back(hinge_objective(X, y, w, b, params.lambda));

  Rng rng(seed);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  double t = 0.0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(std::span<Index>(order));
    for (Index i : order) {
      t += 1.0;
      const double eta = 1.0 / (params.lambda * t);
      const double yi = signed_label(y[i]);
      const bool violated = yi * (X.row(i).dot(w) + b) < 1.0;
      const double shrink = 1.0 - eta * params.lambda;
      w *= shrink;
      b *= shrink;
      if (violated) {
        w += (eta * yi) * X.row(i).transpose();
        b += eta * yi;
      }
      // Project onto the ball of radius 1/sqrt(lambda).
      const double norm = std::sqrt(w.squaredNorm() + b * b);
      if (norm > radius) {
        w *= radius / norm;
        b *= radius / norm;
      }
    }
    if (epoch_objectives) epoch_objectives->push_back(hinge_objective(X, y, w, b, params.lambda));
  }

  LinearSvm svm;
  svm.weights = std::move(w);
  svm.bias = b;
  const Vector margins = (X * svm.weights).array() + svm.bias;
  svm.calibration_slope = fit_sigmoid_slope(margins, y);
  return svm;
}

}  // namespace phishguard
