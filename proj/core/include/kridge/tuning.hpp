#pragma once

#include "kridge/dataset.hpp"
#include "kridge/kernel.hpp"
#include "kridge/nuclear.hpp"

#include <vector>

namespace kridge {

/// Hyperparameter search grid. `lambdas` are system-level ridge values (the
/// (K + n lambda I) convention); the relaxed path maps lambda1 = lambda / p
/// internally so that every method is tuned on the same scale.
struct TuneGrid {
  std::vector<double> lambdas;   // descending, all > 0
  std::vector<int> r1_values;    // ascending, hard_rank only
  std::vector<double> lambda2s;  // ascending, >= 0, relaxed only

  /// lambda in 10^linspace(-6, 1, 15); r1 in 1..min(p, 10);
  /// lambda2 in {0} union 10^linspace(-6, 0, 10).
  static TuneGrid defaults(Method method, int p);
};

struct TuneScore {
  double lambda = 0.0;
  int r1 = 0;        // 0 when unused
  double lambda2 = 0.0;
  double score = 0.0;
};

struct TuneResult {
  Method method = Method::elementwise;
  TuneScore best;
  std::vector<TuneScore> scores;  // full grid, deterministic order
};

/// Fit on `train` at every grid point, score mean squared prediction error
/// (1/(qp)) ||Yv - pred||_F^2 on `valid`, and return the argmin. Ties go to
/// the larger lambda, then the smaller r1, then the larger lambda2. A fit
/// failure at a grid point scores +inf instead of aborting the search.
TuneResult tune_validation(const Dataset& train, const Dataset& valid,
                           const KernelSpec& spec, const TuneGrid& grid,
                           Method method, const SolverOptions& solver = {});

/// Generalized cross validation for the univariate smoother (p = 1):
/// GCV(lambda) = (1/n) ||(I - S) y||^2 / ((1/n) tr(I - S))^2 with
/// S = K (K + n lambda I)^{-1}. Grid points with tr(I - S) <= 1e-12 score
/// +inf; ties go to the larger lambda.
TuneResult gcv_univariate(const Dataset& data, const KernelSpec& spec,
                          const std::vector<double>& lambdas);

}  // namespace kridge
