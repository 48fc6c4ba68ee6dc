#include "kridge/ridge.hpp"

#include <Eigen/Cholesky>

#include <sstream>

namespace kridge {

Matrix ridge_solve(const KernelMatrix& K, const Matrix& Y, double lambda_eff,
                   double* jitter_out) {
  const Eigen::Index n = K.size();
  if (Y.rows() != n)
    throw std::invalid_argument("ridge_solve: Y has " +
                                std::to_string(Y.rows()) +
                                " rows, kernel matrix is " +
                                std::to_string(n) + "x" + std::to_string(n));
  if (!(lambda_eff > 0.0))
    throw std::invalid_argument("ridge_solve: lambda must be > 0");

  Matrix system = K.values;
  system.diagonal().array() += static_cast<double>(n) * lambda_eff;
  Eigen::LLT<Matrix> llt(system);
  double jitter = 0.0;
  if (llt.info() != Eigen::Success) {
    jitter = 1e-10 * K.trace / static_cast<double>(n);
    system.diagonal().array() += jitter;
    llt.compute(system);
    if (llt.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "ridge_solve: Cholesky factorization failed twice (n = " << n
          << ", n*lambda = " << n * lambda_eff << ", jitter = " << jitter
          << "); system is numerically indefinite";
      throw numerical_error(msg.str());
    }
  }
  if (jitter_out) *jitter_out = jitter;
  return llt.solve(Y);
}

FittedModel fit_elementwise(const KernelMatrix& K, const Dataset& data,
                            const KernelSpec& spec, double lambda) {
  const Matrix u = ridge_solve(K, data.Y, lambda);
  FittedModel model{.coeff = u.transpose(),
                    .Xtrain = data.X,
                    .kernel = spec,
                    .lambda = lambda,
                    .method = Method::elementwise};
  model.effective_rank = effective_rank(model.coeff);
  return model;
}

FittedModel fit_elementwise(const Dataset& data, const KernelSpec& spec,
                            double lambda) {
  return fit_elementwise(kernel_matrix(spec, data.X), data, spec, lambda);
}

}  // namespace kridge
