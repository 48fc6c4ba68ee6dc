// Shared helpers for the test suites: seeded random problem generators and
// an independent reference minimizer for the nuclear-norm proximal problem.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <random>

#include "kridge/dataset.hpp"
#include "kridge/types.hpp"

namespace testutil {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

inline Eigen::MatrixXd random_uniform(Eigen::Index rows, Eigen::Index cols,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = unif(rng);
  return m;
}

inline kridge::Dataset random_dataset(Eigen::Index n, Eigen::Index d,
                                      Eigen::Index p, std::mt19937_64& rng) {
  return kridge::Dataset(random_uniform(n, d, rng),
                         random_matrix(n, p, rng));
}

// Value of the proximal objective phi(Z) = (1/2)||Z - B||_F^2 + tau |||Z|||.
inline double prox_objective(const Eigen::MatrixXd& z,
                             const Eigen::MatrixXd& b, double tau) {
  const double nuclear =
      Eigen::JacobiSVD<Eigen::MatrixXd>(z).singularValues().sum();
  return 0.5 * (z - b).squaredNorm() + tau * nuclear;
}

// Reference minimizer of phi, independent of the thresholding shortcut: the
// nuclear norm is Huber-smoothed at level mu and the smoothed objective
// (strongly convex, modulus 1, gradient Lipschitz 1 + tau/mu) is minimized
// by momentum gradient descent at the strongly-convex rate. The smoothing
// bias in the objective is at most tau * min(m1, m2) * mu / 2.
inline Eigen::MatrixXd prox_reference(const Eigen::MatrixXd& b, double tau,
                                      double mu = 1e-7,
                                      int max_iters = 400000,
                                      double grad_tol = 1e-8) {
  const double lip = 1.0 + tau / mu;
  const double sqrt_kappa = std::sqrt(lip);
  const double momentum = (sqrt_kappa - 1.0) / (sqrt_kappa + 1.0);

  auto gradient = [&](const Eigen::MatrixXd& z) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd dh = svd.singularValues();
    for (Eigen::Index i = 0; i < dh.size(); ++i)
      dh(i) = std::min(dh(i) / mu, 1.0);
    return Eigen::MatrixXd(z - b +
                           tau * svd.matrixU() * dh.asDiagonal() *
                               svd.matrixV().transpose());
  };

  Eigen::MatrixXd z = b;
  Eigen::MatrixXd z_prev = z;
  for (int iter = 0; iter < max_iters; ++iter) {
    const Eigen::MatrixXd extrap = z + momentum * (z - z_prev);
    const Eigen::MatrixXd grad = gradient(extrap);
    z_prev = z;
    z = extrap - grad / lip;
    if (iter % 64 == 0 && gradient(z).norm() <= grad_tol) break;
  }
  return z;
}

}  // namespace testutil
