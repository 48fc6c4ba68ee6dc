#include "kridge/kernel.hpp"

#include <cmath>
#include <sstream>

namespace kridge {

namespace {

// Below this distance the kernel is taken at its analytic limit Psi(0) = 1;
// evaluating r^m K_m(r) directly there would cancel catastrophically.
constexpr double kZeroDistance = 1e-12;

}  // namespace

KernelSpec::KernelSpec(double nu_in, int dim_in) : nu(nu_in), dim(dim_in) {
  if (dim < 1) throw std::invalid_argument("KernelSpec: dim must be >= 1");
  if (!std::isfinite(nu) || nu <= dim / 2.0)
    throw std::invalid_argument("KernelSpec: need nu > dim/2, got nu = " +
                                std::to_string(nu) + ", dim = " +
                                std::to_string(dim));
  const double m = nu - dim / 2.0;
  const double k = std::round(m - 0.5);
  if (k < 0.0 || std::abs(m - (k + 0.5)) > 1e-9) {
    std::ostringstream msg;
    msg << "KernelSpec: order m = nu - dim/2 = " << m
        << " is not a positive half-integer; only m = k + 1/2 is supported";
    throw unsupported_order_error(msg.str());
  }
  half_order_ = static_cast<int>(k);
}

double matern_eval(const KernelSpec& spec, double r) {
  if (std::isnan(r) || r < 0.0)
    throw std::domain_error("matern_eval: distance must be >= 0");
  if (r < kZeroDistance) return 1.0;

  // Scaled Bessel b_m(r) = K_m(r) / (sqrt(pi/(2r)) e^{-r}). Both half-integer
  // seeds equal 1, and the upward recurrence b_{m+1} = b_{m-1} + (2m/r) b_m
  // has only positive terms, so it is stable.
  double below = 1.0;  // order j - 1/2
  double at = 1.0;     // order j + 1/2
  for (int j = 0; j < spec.order_index(); ++j) {
    const double next = below + ((2.0 * j + 1.0) / r) * at;
    below = at;
    at = next;
  }
  const double m = spec.order();
  const double prefactor = std::pow(r, m) * std::sqrt(M_PI / (2.0 * r)) *
                           std::exp(-r) /
                           (std::tgamma(m) * std::pow(2.0, m - 1.0));
  return prefactor * at;
}

KernelMatrix kernel_matrix(const KernelSpec& spec, const Matrix& X) {
  if (X.rows() < 1)
    throw std::invalid_argument("kernel_matrix: need at least one input row");
  if (X.cols() != spec.dim)
    throw std::invalid_argument("kernel_matrix: X has " +
                                std::to_string(X.cols()) +
                                " columns, spec.dim = " +
                                std::to_string(spec.dim));
  if (!X.allFinite())
    throw std::domain_error("kernel_matrix: non-finite input");

  const Eigen::Index n = X.rows();
  KernelMatrix K;
  K.values.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    K.values(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double v = matern_eval(spec, (X.row(j) - X.row(k)).norm());
      K.values(j, k) = v;
      K.values(k, j) = v;
    }
  }
  K.trace = static_cast<double>(n);
  return K;
}

Matrix kernel_cross(const KernelSpec& spec, const Matrix& Xnew,
                    const Matrix& Xtrain) {
  if (Xnew.cols() != Xtrain.cols())
    throw std::invalid_argument("kernel_cross: column mismatch (" +
                                std::to_string(Xnew.cols()) + " vs " +
                                std::to_string(Xtrain.cols()) + ")");
  if (Xtrain.cols() != spec.dim)
    throw std::invalid_argument("kernel_cross: inputs have " +
                                std::to_string(Xtrain.cols()) +
                                " columns, spec.dim = " +
                                std::to_string(spec.dim));
  if (!Xnew.allFinite() || !Xtrain.allFinite())
    throw std::domain_error("kernel_cross: non-finite input");

  Matrix out(Xnew.rows(), Xtrain.rows());
  for (Eigen::Index i = 0; i < Xnew.rows(); ++i)
    for (Eigen::Index j = 0; j < Xtrain.rows(); ++j)
      out(i, j) = matern_eval(spec, (Xnew.row(i) - Xtrain.row(j)).norm());
  return out;
}

KernelMatrix KernelMatrix::from_raw(Matrix values) {
  if (values.rows() != values.cols() || values.rows() < 1)
    throw std::invalid_argument("KernelMatrix::from_raw: matrix must be square");
  if (!values.allFinite())
    throw std::domain_error("KernelMatrix::from_raw: non-finite entries");
  if ((values - values.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("KernelMatrix::from_raw: matrix not symmetric");
  if ((values.diagonal().array() - 1.0).abs().maxCoeff() > 1e-10)
    throw std::invalid_argument(
        "KernelMatrix::from_raw: diagonal entries must equal 1");
  KernelMatrix K;
  K.trace = values.trace();
  K.values = std::move(values);
  return K;
}

}  // namespace kridge
