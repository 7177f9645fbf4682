#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phishguard {

// Rows are samples, columns are features.
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using RowVector = Eigen::RowVectorXd;

// 1 = phishing, 0 = legitimate.
using LabelVector = Eigen::VectorXi;
using Index = Eigen::Index;

inline constexpr int kPhishing = 1;
inline constexpr int kLegitimate = 0;

/// Malformed or inconsistent input data (CSV content, dimensions, labels).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument supplied by a caller (ranges, option values).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model file that cannot be read back.
class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file that cannot be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phishguard
