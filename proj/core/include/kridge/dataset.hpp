#pragma once

#include "kridge/types.hpp"

namespace kridge {

/// Supervised sample: row i of X is an input, row i of Y its responses.
struct Dataset {
  Dataset(Matrix X_in, Matrix Y_in);

  Matrix X;  // n x d
  Matrix Y;  // n x p

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index d() const { return X.cols(); }
  Eigen::Index p() const { return Y.cols(); }
};

}  // namespace kridge
