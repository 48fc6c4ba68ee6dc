#include "kridge/tuning.hpp"

#include "kridge/reduced_rank.hpp"
#include "kridge/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kridge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sorted_positive(const std::vector<double>& v, bool descending,
                           bool allow_zero, const char* name) {
  if (v.empty())
    throw std::invalid_argument(std::string("tuning: empty ") + name +
                                " grid");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0 || (!allow_zero && v[i] == 0.0))
      throw std::invalid_argument(std::string("tuning: invalid value in ") +
                                  name + " grid");
    if (i > 0 && (descending ? v[i] > v[i - 1] : v[i] < v[i - 1]))
      throw std::invalid_argument(std::string("tuning: ") + name +
                                  " grid must be sorted");
  }
}

// More regularization wins ties: larger lambda, then smaller r1, then
// larger lambda2.
bool better(const TuneScore& a, const TuneScore& b) {
  if (a.score != b.score) return a.score < b.score;
  if (a.lambda != b.lambda) return a.lambda > b.lambda;
  if (a.r1 != b.r1) return a.r1 < b.r1;
  return a.lambda2 > b.lambda2;
}

double checked_score(double raw) { return std::isfinite(raw) ? raw : kInf; }

}  // namespace

TuneGrid TuneGrid::defaults(Method method, int p) {
  if (p < 1) throw std::invalid_argument("TuneGrid::defaults: p must be >= 1");
  TuneGrid grid;
  for (int i = 14; i >= 0; --i)
    grid.lambdas.push_back(std::pow(10.0, -6.0 + 7.0 * i / 14.0));
  if (method == Method::hard_rank)
    for (int r = 1; r <= std::min(p, 10); ++r) grid.r1_values.push_back(r);
  if (method == Method::nuclear_relaxed) {
    grid.lambda2s.push_back(0.0);
    for (int i = 0; i < 10; ++i)
      grid.lambda2s.push_back(std::pow(10.0, -6.0 + 6.0 * i / 9.0));
  }
  return grid;
}

TuneResult tune_validation(const Dataset& train, const Dataset& valid,
                           const KernelSpec& spec, const TuneGrid& grid,
                           Method method, const SolverOptions& solver) {
  if (train.d() != valid.d() || train.p() != valid.p())
    throw std::invalid_argument(
        "tune_validation: train and validation sets must share d and p");
  check_sorted_positive(grid.lambdas, /*descending=*/true,
                        /*allow_zero=*/false, "lambda");
  if (method == Method::hard_rank) {
    if (grid.r1_values.empty())
      throw std::invalid_argument("tune_validation: empty r1 grid");
    for (std::size_t i = 0; i < grid.r1_values.size(); ++i) {
      if (grid.r1_values[i] < 1 || grid.r1_values[i] > train.p())
        throw std::invalid_argument("tune_validation: r1 outside [1, p]");
      if (i > 0 && grid.r1_values[i] < grid.r1_values[i - 1])
        throw std::invalid_argument(
            "tune_validation: r1 grid must be ascending");
    }
  }
  if (method == Method::nuclear_relaxed)
    check_sorted_positive(grid.lambda2s, /*descending=*/false,
                          /*allow_zero=*/true, "lambda2");

  const KernelMatrix K = kernel_matrix(spec, train.X);
  const Matrix cross = kernel_cross(spec, valid.X, train.X);
  const double qp =
      static_cast<double>(valid.n()) * static_cast<double>(valid.p());
  const auto mse = [&](const Matrix& coeff) {
    return checked_score((valid.Y - cross * coeff.transpose()).squaredNorm() /
                         qp);
  };

  TuneResult result;
  result.method = method;
  switch (method) {
    case Method::elementwise:
      for (double lambda : grid.lambdas) {
        TuneScore ts{lambda, 0, 0.0, kInf};
        try {
          ts.score = mse(fit_elementwise(K, train, spec, lambda).coeff);
        } catch (const std::exception&) {
        }
        result.scores.push_back(ts);
      }
      break;
    case Method::hard_rank:
      for (double lambda : grid.lambdas)
        for (int r1 : grid.r1_values) {
          TuneScore ts{lambda, r1, 0.0, kInf};
          try {
            ts.score = mse(fit_hard_rank(K, train, spec, lambda, r1).coeff);
          } catch (const std::exception&) {
          }
          result.scores.push_back(ts);
        }
      break;
    case Method::nuclear_relaxed:
      for (double lambda : grid.lambdas) {
        const double lambda1 = lambda / static_cast<double>(train.p());
        Matrix warm;  // previous solution along the ascending lambda2 path
        bool have_warm = false;
        for (double lambda2 : grid.lambda2s) {
          TuneScore ts{lambda, 0, lambda2, kInf};
          try {
            const RelaxedFit fit =
                fit_relaxed(K, train, spec, lambda1, lambda2, solver,
                            have_warm ? &warm : nullptr);
            ts.score = mse(fit.model.coeff);
            warm = fit.model.coeff;
            have_warm = true;
          } catch (const std::exception&) {
            have_warm = false;
          }
          result.scores.push_back(ts);
        }
      }
      break;
  }

  result.best = result.scores.front();
  for (const TuneScore& ts : result.scores)
    if (better(ts, result.best)) result.best = ts;
  return result;
}

TuneResult gcv_univariate(const Dataset& data, const KernelSpec& spec,
                          const std::vector<double>& lambdas) {
  if (data.p() != 1)
    throw std::invalid_argument("gcv_univariate: requires p = 1");
  check_sorted_positive(lambdas, /*descending=*/true, /*allow_zero=*/false,
                        "lambda");

  const KernelMatrix K = kernel_matrix(spec, data.X);
  const Eigen::Index n = data.n();

  // One factorization per lambda handles both the fit and the smoother
  // trace: solve (K + n lambda I) [alpha | W] = [y | K], then
  // tr(S) = tr(K (K + n lambda I)^{-1}) = tr(W).
  Matrix rhs(n, n + 1);
  rhs.col(0) = data.Y.col(0);
  rhs.rightCols(n) = K.values;

  TuneResult result;
  result.method = Method::elementwise;
  for (double lambda : lambdas) {
    TuneScore ts{lambda, 0, 0.0, kInf};
    try {
      const Matrix solved = ridge_solve(K, rhs, lambda);
      const Vector resid = data.Y.col(0) - K.values * solved.col(0);
      const double tr_complement =
          static_cast<double>(n) - solved.rightCols(n).trace();
      if (tr_complement > 1e-12) {
        const double denom = tr_complement / static_cast<double>(n);
        ts.score = checked_score((resid.squaredNorm() / static_cast<double>(n)) /
                                 (denom * denom));
      }
    } catch (const std::exception&) {
    }
    result.scores.push_back(ts);
  }

  result.best = result.scores.front();
  for (const TuneScore& ts : result.scores)
    if (better(ts, result.best)) result.best = ts;
  return result;
}

}  // namespace kridge
