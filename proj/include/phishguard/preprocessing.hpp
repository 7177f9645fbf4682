#pragma once

#include "phishguard/types.hpp"

#include <string>

namespace phishguard {

/// Per-feature location and population scale fitted on training rows.
template <typename Scalar>
struct ScalerParamsT {
  VectorX<Scalar> means;
  VectorX<Scalar> stds;

  Index size() const { return means.size(); }
};

using ScalerParams = ScalerParamsT<double>;

/// Column means and divide-by-n standard deviations.
template <typename Derived>
ScalerParamsT<typename Derived::Scalar> fit_scaler(const Eigen::MatrixBase<Derived>& train) {
  using Scalar = typename Derived::Scalar;
  if (train.rows() == 0 || train.cols() == 0) throw DataError("cannot fit a scaler on an empty matrix");
  ScalerParamsT<Scalar> params;
  const auto n = static_cast<Scalar>(train.rows());
  params.means = train.colwise().sum().transpose() / n;
  params.stds.resize(train.cols());
  for (Index j = 0; j < train.cols(); ++j) {
    // The rounded mean of a constant column can differ from its value by an ulp.
    if (train.col(j).minCoeff() == train.col(j).maxCoeff()) {
      params.means[j] = train(0, j);
      params.stds[j] = Scalar(0);
      continue;
    }
    const Scalar var = (train.col(j).array() - params.means[j]).square().sum() / n;
    params.stds[j] = std::sqrt(var);
  }
  return params;
}

/// (x - mean) / std per column; zero-variance columns become all zeros.
template <typename Derived>
MatrixX<typename Derived::Scalar> transform(const ScalerParamsT<typename Derived::Scalar>& params,
                                            const Eigen::MatrixBase<Derived>& features) {
  using Scalar = typename Derived::Scalar;
  if (features.cols() != params.size()) {
    throw DataError("scaler was fitted on " + std::to_string(params.size()) +
                    " features, input has " + std::to_string(features.cols()));
  }
  MatrixX<Scalar> out(features.rows(), features.cols());
  for (Index j = 0; j < features.cols(); ++j) {
    if (params.stds[j] == Scalar(0)) {
      out.col(j).setZero();
    } else {
      out.col(j) = (features.col(j).array() - params.means[j]) / params.stds[j];
    }
  }
  return out;
}

/// Single-row form of transform().
template <typename Derived>
VectorX<typename Derived::Scalar> transform_row(const ScalerParamsT<typename Derived::Scalar>& params,
                                                const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() != params.size()) {
    throw DataError("scaler was fitted on " + std::to_string(params.size()) +
                    " features, input has " + std::to_string(x.size()));
  }
  VectorX<Scalar> out(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    out[j] = params.stds[j] == Scalar(0) ? Scalar(0) : (x(j) - params.means[j]) / params.stds[j];
  }
  return out;
}

}  // namespace phishguard
