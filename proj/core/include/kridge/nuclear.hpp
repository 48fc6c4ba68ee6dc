#pragma once

#include "kridge/dataset.hpp"
#include "kridge/kernel.hpp"
#include "kridge/model.hpp"

#include <cstdint>
#include <vector>

namespace kridge {

/// Sum of singular values.
double nuclear_norm(const Matrix& b);

/// Singular value thresholding: soft-threshold the singular values of b by
/// tau. This is the proximal operator of tau * |||.|||, i.e. the unique
/// minimizer of (1/2) ||Z - B||_F^2 + tau |||Z|||.
Matrix svt(const Matrix& b, double tau);

struct SolverOptions {
  double tol = 1e-8;   // relative objective change at the stopping check
  int max_iters = 5000;
  int starts = 1;      // extra starts beyond the first are random
  std::uint64_t seed = 0;
};

enum class StopReason { tolerance, max_iters };

std::string_view to_string(StopReason r);

struct SolverReport {
  std::vector<double> objective_trace;  // nonincreasing by construction
  int iterations = 0;
  StopReason stop_reason = StopReason::max_iters;
  int effective_rank = 0;  // of the solver variable Z = A (K + delta I)
  double final_objective = 0.0;
};

struct RelaxedFit {
  FittedModel model;
  SolverReport report;
};

/// Nuclear-norm-relaxed reduced-rank fit, solved by accelerated proximal
/// gradient with singular value thresholding.
///
/// In Z = A (K + delta I) coordinates, with delta = 1e-8 tr(K)/n, the
/// objective is
///   g(Z) + lambda2 |||Z|||,
///   g(Z) = (1/(pn)) ||Y - Z^T||_F^2 + lambda1 tr(Z (K + delta I)^{-1} Z^T),
/// which is the relaxed training objective with the jittered kernel matrix
/// substituted throughout. Gradient steps use the fixed step 1/L with
/// L = 2/(pn) + 2 lambda1 / sigma_min(K + delta I); accelerated steps that
/// would increase the objective fall back to a plain step, so the trace is
/// monotone. The run stops once the relative objective change drops below
/// opts.tol and the fixed-point residual
///   ||Z - svt(Z - (1/L) grad g(Z), lambda2/L)||_F <= 10 opts.tol ||Z||_F
/// holds, or at opts.max_iters (reported, not thrown).
///
/// The first start is the closed-form ridge solution (exact for
/// lambda2 = 0); starts beyond the first are random, seeded by opts.seed.
/// `init_coeff` (p x n) overrides the first start, e.g. to warm-start a
/// lambda2 path.
RelaxedFit fit_relaxed(const Dataset& data, const KernelSpec& spec,
                       double lambda1, double lambda2,
                       const SolverOptions& opts = {},
                       const Matrix* init_coeff = nullptr);
RelaxedFit fit_relaxed(const KernelMatrix& K, const Dataset& data,
                       const KernelSpec& spec, double lambda1, double lambda2,
                       const SolverOptions& opts = {},
                       const Matrix* init_coeff = nullptr);

/// Relaxed objective in coefficient coordinates with Q = K:
/// (1/(pn)) ||Y - K A^T||_F^2 + lambda1 tr(A K A^T) + lambda2 |||A K|||.
double relaxed_objective(const KernelMatrix& K, const Matrix& Y,
                         const Matrix& coeff, double lambda1, double lambda2);

}  // namespace kridge
