#include "kridge/ridge.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

using kridge::Dataset;
using kridge::KernelMatrix;
using kridge::KernelSpec;
using kridge::Matrix;
using kridge::Vector;

namespace {

Matrix random_unit_diag_spd(int n, std::mt19937_64& rng) {
  const Matrix a = testutil::random_matrix(n, n, rng);
  Matrix s = a * a.transpose() + 0.5 * Matrix::Identity(n, n);
  const Vector scale = s.diagonal().cwiseSqrt();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) /= scale(i) * scale(j);
  s = 0.5 * (s + s.transpose());
  s.diagonal().setOnes();
  return s;
}

}  // namespace

TEST(RidgeSolve, ScalarCase) {
  const KernelMatrix k = KernelMatrix::from_raw(Matrix::Ones(1, 1));
  Matrix y(1, 1);
  y << 3.0;
  const double lambda = 0.25;
  const Matrix u = ridge_solve(k, y, lambda);
  EXPECT_NEAR(u(0, 0), 3.0 / (1.0 + lambda), 1e-15);
}

TEST(RidgeSolve, IdentityKernel) {
  const KernelMatrix k = KernelMatrix::from_raw(Matrix::Identity(2, 2));
  Matrix y(2, 2);
  y << 1.0, -2.0, 4.0, 0.5;
  // (I + 2 * 1 * I) U = Y
  EXPECT_TRUE(ridge_solve(k, y, 1.0).isApprox(y / 3.0, 1e-14));
}

TEST(RidgeSolve, MatchesExplicitInverse) {
  std::mt19937_64 rng(23);
  const int n = 5;
  const Matrix s = random_unit_diag_spd(n, rng);
  const KernelMatrix k = KernelMatrix::from_raw(s);
  const Matrix y = testutil::random_matrix(n, 3, rng);
  const double lambda = 0.07;

  Matrix system = s;
  system.diagonal().array() += n * lambda;
  const Matrix expected = system.inverse() * y;  // brute-force reference
  const Matrix got = ridge_solve(k, y, lambda);
  EXPECT_LT((got - expected).norm() / expected.norm(), 1e-10);
}

TEST(RidgeSolve, ResidualConsistency) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 8 + 4 * trial;
    const Matrix x = testutil::random_uniform(n, 1, rng);
    const KernelMatrix k = kernel_matrix(KernelSpec(1.0, 1), x);
    const Matrix y = testutil::random_matrix(n, 2, rng);
    const double lambda = std::pow(10.0, -1.0 - trial);
    const Matrix u = ridge_solve(k, y, lambda);
    Matrix system = k.values;
    system.diagonal().array() += n * lambda;
    EXPECT_LE((system * u - y).norm(), 1e-8 * y.norm());
  }
}

TEST(RidgeSolve, RejectsBadArguments) {
  const KernelMatrix k = KernelMatrix::from_raw(Matrix::Identity(2, 2));
  EXPECT_THROW(ridge_solve(k, Matrix::Zero(3, 1), 0.1),
               std::invalid_argument);
  EXPECT_THROW(ridge_solve(k, Matrix::Zero(2, 1), 0.0),
               std::invalid_argument);
  EXPECT_THROW(ridge_solve(k, Matrix::Zero(2, 1), -1.0),
               std::invalid_argument);
}

TEST(RidgeSolve, IndefiniteSystemFailsAfterJitter) {
  // Symmetric with unit diagonal but eigenvalues {3, -1}: jitter of 1e-10
  // cannot rescue the factorization.
  Matrix bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  const KernelMatrix k = KernelMatrix::from_raw(bad);
  EXPECT_THROW(ridge_solve(k, Matrix::Zero(2, 1), 1e-12),
               kridge::numerical_error);
}

TEST(RidgeSolve, JitterRetryOnSingularSystem) {
  // All-ones kernel (duplicated points) with a vanishing ridge level: the
  // first factorization fails, the jittered one succeeds.
  const KernelMatrix k = KernelMatrix::from_raw(Matrix::Ones(2, 2));
  Matrix y(2, 1);
  y << 1.0, 1.0;
  double jitter = 0.0;
  const Matrix u = ridge_solve(k, y, 1e-300, &jitter);
  EXPECT_GT(jitter, 0.0);
  EXPECT_TRUE(u.allFinite());
}

TEST(FitElementwise, UnivariateClosedForm) {
  std::mt19937_64 rng(17);
  const Matrix x = testutil::random_uniform(8, 1, rng);
  const Matrix y = testutil::random_matrix(8, 1, rng);
  const Dataset data(x, y);
  const KernelSpec spec(1.0, 1);
  const double lambda = 0.05;

  const kridge::FittedModel model = fit_elementwise(data, spec, lambda);
  EXPECT_EQ(model.coeff.rows(), 1);
  EXPECT_EQ(model.coeff.cols(), 8);

  const KernelMatrix k = kernel_matrix(spec, x);
  const Matrix u = ridge_solve(k, y, lambda);
  EXPECT_TRUE(model.coeff.transpose().isApprox(u, 1e-14));
}

TEST(FitElementwise, NearInterpolationAtTinyLambda) {
  std::mt19937_64 rng(29);
  const Matrix x = testutil::random_uniform(10, 1, rng);
  Matrix y(10, 2);
  for (int i = 0; i < 10; ++i) {
    y(i, 0) = std::sin(3.0 * x(i, 0));
    y(i, 1) = x(i, 0) * x(i, 0);
  }
  const Dataset data(x, y);
  const KernelSpec spec(1.0, 1);  // exponential kernel keeps the system sane
  const kridge::FittedModel model = fit_elementwise(data, spec, 1e-10);
  const Matrix fitted = predict(model, x);
  EXPECT_LT((fitted - y).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(FitElementwise, ZeroResponseGivesZeroCoefficients) {
  std::mt19937_64 rng(31);
  const Dataset data(testutil::random_uniform(6, 2, rng), Matrix::Zero(6, 3));
  const kridge::FittedModel model =
      fit_elementwise(data, KernelSpec(4.5, 2), 0.1);
  EXPECT_EQ(model.coeff.norm(), 0.0);
  EXPECT_EQ(model.effective_rank, 0);
}

TEST(Predict, TrainingPointsReproduceKernelProduct) {
  std::mt19937_64 rng(37);
  const Dataset data = testutil::random_dataset(7, 1, 2, rng);
  const KernelSpec spec(1.0, 1);
  const kridge::FittedModel model = fit_elementwise(data, spec, 0.2);
  const KernelMatrix k = kernel_matrix(spec, data.X);
  EXPECT_TRUE(predict(model, data.X)
                  .isApprox(k.values * model.coeff.transpose(), 1e-13));
}

TEST(Predict, ZeroCoefficientsAndSinglePoint) {
  Matrix xtrain(1, 1);
  xtrain << 0.25;
  kridge::FittedModel model{.coeff = Matrix::Zero(2, 1),
                            .Xtrain = xtrain,
                            .kernel = KernelSpec(1.0, 1),
                            .lambda = 0.1};
  Matrix xnew(3, 1);
  xnew << 0.0, 0.5, 1.0;
  EXPECT_EQ(predict(model, xnew).norm(), 0.0);

  model.coeff(0, 0) = 2.0;  // c * exp(-r) at distance r
  const double r = 0.6;
  Matrix probe(1, 1);
  probe << 0.25 + r;
  EXPECT_NEAR(predict(model, probe)(0, 0), 2.0 * std::exp(-r), 1e-14);
}

TEST(Predict, DimensionMismatchThrows) {
  std::mt19937_64 rng(41);
  const Dataset data = testutil::random_dataset(5, 2, 1, rng);
  const kridge::FittedModel model =
      fit_elementwise(data, KernelSpec(1.5, 2), 0.1);
  EXPECT_THROW(predict(model, Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST(Predict, EmptyInputGivesEmptyOutput) {
  std::mt19937_64 rng(43);
  const Dataset data = testutil::random_dataset(5, 1, 2, rng);
  const kridge::FittedModel model =
      fit_elementwise(data, KernelSpec(1.0, 1), 0.1);
  const Matrix out = predict(model, Matrix(0, 1));
  EXPECT_EQ(out.rows(), 0);
  EXPECT_EQ(out.cols(), 2);
}

TEST(FitElementwise, FittedNormShrinksWithLambda) {
  std::mt19937_64 rng(47);
  const Dataset data = testutil::random_dataset(12, 1, 3, rng);
  const KernelSpec spec(1.0, 1);
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const kridge::FittedModel model = fit_elementwise(data, spec, lambda);
    const double norm = predict(model, data.X).norm();
    EXPECT_LE(norm, prev + 1e-12) << "lambda " << lambda;
    prev = norm;
  }
}

TEST(FitElementwise, PredictionsInvariantUnderRowPermutation) {
  std::mt19937_64 rng(53);
  const Dataset data = testutil::random_dataset(9, 2, 2, rng);
  const KernelSpec spec(2.5, 2);
  const Matrix probe = testutil::random_uniform(4, 2, rng);
  const Matrix base = predict(fit_elementwise(data, spec, 0.05), probe);

  std::vector<int> perm{8, 2, 5, 0, 7, 1, 4, 6, 3};
  Matrix xp(9, 2), yp(9, 2);
  for (int i = 0; i < 9; ++i) {
    xp.row(i) = data.X.row(perm[i]);
    yp.row(i) = data.Y.row(perm[i]);
  }
  const Matrix permuted =
      predict(fit_elementwise(Dataset(xp, yp), spec, 0.05), probe);
  EXPECT_LT((base - permuted).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DatasetTest, Validation) {
  EXPECT_THROW(Dataset(Matrix(0, 1), Matrix(0, 1)), std::invalid_argument);
  EXPECT_THROW(Dataset(Matrix::Zero(3, 1), Matrix::Zero(2, 1)),
               std::invalid_argument);
  Matrix bad = Matrix::Zero(2, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Dataset(bad, Matrix::Zero(2, 1)), std::domain_error);
}
