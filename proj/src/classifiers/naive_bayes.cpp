#include "phishguard/classifiers.hpp"

#include <cmath>
#include <numbers>

namespace phishguard {

std::array<double, 2> GaussianNaiveBayes::posteriors(const Eigen::Ref<const Vector>& x) const {
  std::array<double, 2> log_joint{};
  for (int c = 0; c < 2; ++c) {
    const auto mu = means.row(c).transpose().array();
    const auto var = variances.row(c).transpose().array();
    log_joint[static_cast<std::size_t>(c)] =
        std::log(priors[static_cast<std::size_t>(c)]) -
        0.5 * (2.0 * std::numbers::pi * var).log().sum() -
        0.5 * ((x.array() - mu).square() / var).sum();
  }
  const double top = std::max(log_joint[0], log_joint[1]);
  const double e0 = std::exp(log_joint[0] - top);
  const double e1 = std::exp(log_joint[1] - top);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

GaussianNaiveBayes fit_naive_bayes(const Matrix& X, const LabelVector& y,
                                   const NaiveBayesParams& params) {
  const Index d = X.cols();
  const auto n = static_cast<double>(X.rows());
  const Eigen::RowVectorXd overall_mean = X.colwise().mean();
  const double max_variance =
      ((X.rowwise() - overall_mean).array().square().colwise().sum() / n).maxCoeff();
  double epsilon = params.var_smoothing * max_variance;
  if (epsilon <= 0.0) epsilon = params.var_smoothing;

  GaussianNaiveBayes nb;
  nb.means = Matrix::Zero(2, d);
  nb.variances = Matrix::Zero(2, d);
  std::array<Index, 2> counts{0, 0};
  for (Index i = 0; i < X.rows(); ++i) {
    const int c = y[i] == kPhishing ? 1 : 0;
    ++counts[static_cast<std::size_t>(c)];
    nb.means.row(c) += X.row(i);
  }
  for (int c = 0; c < 2; ++c) nb.means.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  for (Index i = 0; i < X.rows(); ++i) {
    const int c = y[i] == kPhishing ? 1 : 0;
    nb.variances.row(c).array() += (X.row(i) - nb.means.row(c)).array().square();
  }
  for (int c = 0; c < 2; ++c) {
    nb.variances.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    nb.variances.row(c).array() += epsilon;
    nb.priors[static_cast<std::size_t>(c)] = static_cast<double>(counts[static_cast<std::size_t>(c)]) / n;
  }
  return nb;
}

}  // namespace phishguard
