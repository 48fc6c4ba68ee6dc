#pragma once

#include "kridge/types.hpp"

namespace kridge {

/// Isotropic Matern kernel Psi(r) = r^m K_m(r) / (Gamma(m) 2^{m-1}) with
/// m = nu - dim/2 and K_m the modified Bessel function of the second kind.
/// Distances enter unscaled; rescale inputs beforehand if a lengthscale is
/// wanted. Only half-integer orders m = k + 1/2 are supported, which covers
/// every smoothness used by the simulation harness (m = 7/2).
struct KernelSpec {
  KernelSpec(double nu, int dim);

  double nu;
  int dim;

  /// Bessel order m = nu - dim/2.
  double order() const { return half_order_ + 0.5; }
  /// k such that order() == k + 1/2.
  int order_index() const { return half_order_; }

 private:
  int half_order_;
};

/// Symmetric kernel Gram matrix with unit diagonal.
struct KernelMatrix {
  Matrix values;
  double trace = 0.0;
  double jitter_applied = 0.0;

  Eigen::Index size() const { return values.rows(); }

  /// Wrap an existing symmetric unit-diagonal matrix (mainly for tests).
  static KernelMatrix from_raw(Matrix values);
};

/// Kernel value at Euclidean distance r, in (0, 1] with Psi(0) = 1.
double matern_eval(const KernelSpec& spec, double r);

/// Gram matrix of the rows of X.
KernelMatrix kernel_matrix(const KernelSpec& spec, const Matrix& X);

/// Cross-kernel matrix with entry (i, j) = Psi(|xnew_i - xtrain_j|).
Matrix kernel_cross(const KernelSpec& spec, const Matrix& Xnew,
                    const Matrix& Xtrain);

}  // namespace kridge
