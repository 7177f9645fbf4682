#include "phishguard/preprocessing.hpp"

#include "phishguard/random.hpp"

#include <doctest.h>

using namespace phishguard;

TEST_SUITE("preprocessing") {
  TEST_CASE("closed-form moments") {
    Matrix X(3, 3);
    X << 1, 5, -1,
         2, 5, 1,
         3, 5, -1;
    const auto p = fit_scaler(X);
    CHECK(p.means[0] == 2.0);
    CHECK(p.stds[0] == doctest::Approx(0.816496580927726).epsilon(1e-15));
    CHECK(p.means[1] == 5.0);
    CHECK(p.stds[1] == 0.0);

    Matrix sym(2, 1);
    sym << -1, 1;
    const auto q = fit_scaler(sym);
    CHECK(q.means[0] == 0.0);
    CHECK(q.stds[0] == 1.0);
  }

  TEST_CASE("transform of the fitted column and a constant column") {
    Matrix X(3, 2);
    X << 1, 5, 2, 5, 3, 5;
    const auto p = fit_scaler(X);
    const Matrix Z = transform(p, X);
    CHECK(Z(0, 0) == doctest::Approx(-1.224744871391589).epsilon(1e-14));
    CHECK(Z(1, 0) == 0.0);
    CHECK(Z(2, 0) == doctest::Approx(1.224744871391589).epsilon(1e-14));
    Matrix other(2, 2);
    other << 100, -7, 0, 42;
    CHECK(transform(p, other).col(1).isZero(0.0));
    CHECK(transform_row(p, Vector(other.row(0).transpose()))[1] == 0.0);
  }

  TEST_CASE("dimension errors") {
    const auto p = fit_scaler(Matrix::Identity(3, 3));
    CHECK_THROWS_AS(transform(p, Matrix::Zero(2, 4)), DataError);
    CHECK_THROWS_AS(transform_row(p, Vector::Zero(2)), DataError);
    CHECK_THROWS_AS(fit_scaler(Matrix(0, 3)), DataError);
  }

  TEST_CASE("works for float scalars") {
    Eigen::MatrixXf X(4, 1);
    X << 1, 2, 3, 4;
    const auto p = fit_scaler(X);
    CHECK(p.means[0] == 2.5f);
    const Eigen::MatrixXf Z = transform(p, X);
    CHECK(std::abs(Z.sum()) < 1e-6f);
  }

  TEST_CASE("property: own-fit transform gives mean 0 and variance 1") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      const Index n = 2 + static_cast<Index>(rng.uniform_index(200));
      const Index d = 1 + static_cast<Index>(rng.uniform_index(12));
      Matrix X(n, d);
      for (Index j = 0; j < d; ++j) {
        const double scale = std::pow(10.0, rng.uniform(-3, 5));
        const bool constant = rng.uniform01() < 0.15;
        for (Index i = 0; i < n; ++i) X(i, j) = constant ? scale : rng.normal(scale, scale);
      }
      const auto p = fit_scaler(X);
      const Matrix Z = transform(p, X);
      CAPTURE(seed);
      for (Index j = 0; j < d; ++j) {
        CHECK(p.stds[j] >= 0.0);
        if (p.stds[j] == 0.0) {
          CHECK(Z.col(j).isZero(0.0));
          continue;
        }
        const double mean = Z.col(j).mean();
        const double var = (Z.col(j).array() - mean).square().mean();
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(var - 1.0) < 1e-9);
      }
    }
  }
}
