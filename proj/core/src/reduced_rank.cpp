#include "kridge/reduced_rank.hpp"

#include "kridge/ridge.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <vector>

namespace kridge {

namespace {

// Projector onto the r1 leading eigenvectors of Y^T K U, where U is the
// ridge solution (K + n lambda I)^{-1} Y. The product is symmetric in exact
// arithmetic; symmetrizing before the eigensolve removes ~1e-13 float skew.
ProjectionInfo projection_from_ridge(const KernelMatrix& K, const Matrix& Y,
                                     const Matrix& u, int r1) {
  Matrix m = Y.transpose() * (K.values * u);
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    throw numerical_error("build_projection: eigendecomposition failed");

  // Descending eigenvalue order; stable sort keeps exact ties in the
  // solver's ascending index order.
  const Eigen::Index p = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return es.eigenvalues()(a) > es.eigenvalues()(b);
                   });

  ProjectionInfo info;
  info.r1 = r1;
  info.eigvals.resize(p);
  Matrix leading(p, r1);
  for (Eigen::Index i = 0; i < p; ++i)
    info.eigvals(i) = es.eigenvalues()(order[static_cast<std::size_t>(i)]);
  for (int i = 0; i < r1; ++i)
    leading.col(i) = es.eigenvectors().col(order[static_cast<std::size_t>(i)]);
  info.projection = leading * leading.transpose();
  return info;
}

void check_r1(int r1, Eigen::Index p, const char* where) {
  if (r1 < 1 || r1 > p)
    throw std::invalid_argument(std::string(where) + ": r1 = " +
                                std::to_string(r1) + " outside [1, " +
                                std::to_string(p) + "]");
}

}  // namespace

ProjectionInfo build_projection(const KernelMatrix& K, const Matrix& Y,
                                double lambda, int r1) {
  check_r1(r1, Y.cols(), "build_projection");
  const Matrix u = ridge_solve(K, Y, lambda);
  return projection_from_ridge(K, Y, u, r1);
}

FittedModel fit_hard_rank(const KernelMatrix& K, const Dataset& data,
                          const KernelSpec& spec, double lambda, int r1) {
  check_r1(r1, data.p(), "fit_hard_rank");
  const Matrix u = ridge_solve(K, data.Y, lambda);
  const ProjectionInfo proj = projection_from_ridge(K, data.Y, u, r1);
  FittedModel model{.coeff = (u * proj.projection).transpose(),
                    .Xtrain = data.X,
                    .kernel = spec,
                    .lambda = lambda,
                    .method = Method::hard_rank};
  model.r1 = r1;
  model.effective_rank = effective_rank(model.coeff);
  return model;
}

FittedModel fit_hard_rank(const Dataset& data, const KernelSpec& spec,
                          double lambda, int r1) {
  return fit_hard_rank(kernel_matrix(spec, data.X), data, spec, lambda, r1);
}

double rank_objective(const KernelMatrix& K, const Matrix& Y,
                      const Matrix& coeff, double lambda1) {
  const double pn =
      static_cast<double>(Y.cols()) * static_cast<double>(Y.rows());
  const Matrix ak = coeff * K.values;  // p x n
  const double fit = (Y - ak.transpose()).squaredNorm() / pn;
  const double penalty = ak.cwiseProduct(coeff).sum();  // tr(A K A^T)
  return fit + lambda1 * penalty;
}

}  // namespace kridge
