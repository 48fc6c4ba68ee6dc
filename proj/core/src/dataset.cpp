#include "kridge/dataset.hpp"

#include <stdexcept>
#include <string>

namespace kridge {

Dataset::Dataset(Matrix X_in, Matrix Y_in)
    : X(std::move(X_in)), Y(std::move(Y_in)) {
  if (X.rows() < 1 || X.cols() < 1 || Y.cols() < 1)
    throw std::invalid_argument("Dataset: need n >= 1, d >= 1, p >= 1");
  if (Y.rows() != X.rows())
    throw std::invalid_argument("Dataset: X has " + std::to_string(X.rows()) +
                                " rows but Y has " + std::to_string(Y.rows()));
  if (!X.allFinite() || !Y.allFinite())
    throw std::domain_error("Dataset: non-finite entries");
}

}  // namespace kridge
