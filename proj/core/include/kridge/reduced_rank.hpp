#pragma once

#include "kridge/dataset.hpp"
#include "kridge/kernel.hpp"
#include "kridge/model.hpp"

namespace kridge {

/// Spectral projector onto the r1 leading eigenvectors of the symmetrized
/// matrix Y^T K (K + n lambda I)^{-1} Y. Eigenvalues are reported in
/// descending order; exact ties keep the eigensolver's ascending index
/// order, so a zero response matrix yields the projector onto the first r1
/// coordinates.
struct ProjectionInfo {
  Matrix projection;  // p x p, symmetric idempotent
  Vector eigvals;     // descending
  int r1 = 0;
};

ProjectionInfo build_projection(const KernelMatrix& K, const Matrix& Y,
                                double lambda, int r1);

/// Reduced-rank fit: the elementwise ridge coefficients post-multiplied by
/// the rank-r1 projector, so rank(coeff) <= r1.
FittedModel fit_hard_rank(const Dataset& data, const KernelSpec& spec,
                          double lambda, int r1);
FittedModel fit_hard_rank(const KernelMatrix& K, const Dataset& data,
                          const KernelSpec& spec, double lambda, int r1);

/// Training objective (1/(pn)) ||Y - K A^T||_F^2 + lambda1 tr(A K A^T)
/// for coefficient matrix A (p x n). The system-level ridge parameter maps
/// to this normalization as lambda = p * lambda1.
double rank_objective(const KernelMatrix& K, const Matrix& Y,
                      const Matrix& coeff, double lambda1);

}  // namespace kridge
