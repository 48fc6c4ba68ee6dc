#pragma once

#include "kridge/kernel.hpp"
#include "kridge/types.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace kridge {

/// Kernel expansion f_k(x) = sum_j coeff(k, j) Psi(|x - xtrain_j|), one row
/// of coeff per output. `lambda` is the ridge level of the (K + n lambda I)
/// system that produced the coefficients.
struct FittedModel {
  Matrix coeff;    // p x n
  Matrix Xtrain;   // n x d
  KernelSpec kernel;
  double lambda = 0.0;
  Method method = Method::elementwise;
  int effective_rank = 0;
  std::optional<int> r1;          // hard_rank only
  std::optional<double> lambda2;  // nuclear_relaxed only
};

/// Evaluate the model at the rows of Xnew; returns a q x p matrix.
Matrix predict(const FittedModel& model, const Matrix& Xnew);

/// Count of singular values above rel_tol * sigma_max (0 for a zero matrix).
int effective_rank(const Matrix& m, double rel_tol = 1e-8);

/// JSON round trip. The document stores xtrain and coeff row-major with
/// shortest-round-trip doubles, so predictions survive exactly.
std::string model_to_json(const FittedModel& model);
FittedModel model_from_json(const std::string& text);

void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace kridge
