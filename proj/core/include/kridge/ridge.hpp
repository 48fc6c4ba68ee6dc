#pragma once

#include "kridge/dataset.hpp"
#include "kridge/kernel.hpp"
#include "kridge/model.hpp"

namespace kridge {

/// Solve (K + n lambda_eff I) U = Y column-by-column via Cholesky. If the
/// factorization fails, one round of diagonal jitter 1e-10 tr(K)/n is added
/// and reported through jitter_out; a second failure throws numerical_error.
Matrix ridge_solve(const KernelMatrix& K, const Matrix& Y, double lambda_eff,
                   double* jitter_out = nullptr);

/// One independent kernel ridge regression per output column.
FittedModel fit_elementwise(const Dataset& data, const KernelSpec& spec,
                            double lambda);
FittedModel fit_elementwise(const KernelMatrix& K, const Dataset& data,
                            const KernelSpec& spec, double lambda);

}  // namespace kridge
