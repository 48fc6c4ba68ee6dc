#include "kridge/model.hpp"

#include <Eigen/SVD>

#include <stdexcept>
#include <string>

namespace kridge {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::elementwise:
      return "elementwise";
    case Method::hard_rank:
      return "hard_rank";
    case Method::nuclear_relaxed:
      return "nuclear_relaxed";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "elementwise") return Method::elementwise;
  if (name == "hard_rank") return Method::hard_rank;
  if (name == "relaxed" || name == "nuclear_relaxed")
    return Method::nuclear_relaxed;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected elementwise, hard_rank or relaxed)");
}

Matrix predict(const FittedModel& model, const Matrix& Xnew) {
  if (Xnew.cols() != model.Xtrain.cols())
    throw std::invalid_argument("predict: input has " +
                                std::to_string(Xnew.cols()) +
                                " columns, model expects " +
                                std::to_string(model.Xtrain.cols()));
  const Matrix cross = kernel_cross(model.kernel, Xnew, model.Xtrain);
  return cross * model.coeff.transpose();
}

int effective_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Vector sv = Eigen::JacobiSVD<Matrix>(m).singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  const double threshold = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++rank;
  return rank;
}

}  // namespace kridge
