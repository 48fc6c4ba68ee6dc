#include "kridge/nuclear.hpp"

#include "kridge/ridge.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <utility>

namespace kridge {

std::string_view to_string(StopReason r) {
  return r == StopReason::tolerance ? "tolerance" : "max_iters";
}

double nuclear_norm(const Matrix& b) {
  if (!b.allFinite())
    throw std::domain_error("nuclear_norm: non-finite entries");
  if (b.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(b).singularValues().sum();
}

Matrix svt(const Matrix& b, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("svt: tau must be >= 0");
  if (!b.allFinite()) throw std::domain_error("svt: non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector s = (svd.singularValues().array() - tau).max(0.0).matrix();
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

namespace {

// The problem in Z = A (K + delta I) coordinates, where the nuclear penalty
// is a plain nuclear norm and the smooth part stays quadratic.
struct ZProblem {
  Matrix ktil;             // K + delta I
  Eigen::LLT<Matrix> llt;  // factorization of ktil
  Matrix yt;               // Y^T, p x n
  double pn = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lip = 0.0;  // 2/(pn) + 2 lambda1 / sigma_min(ktil)
  double delta = 0.0;

  // z * ktil^{-1} (ktil is symmetric)
  Matrix apply_inverse(const Matrix& z) const {
    return llt.solve(z.transpose()).transpose();
  }
  Matrix gradient(const Matrix& z) const {
    return (2.0 / pn) * (z - yt) + 2.0 * lambda1 * apply_inverse(z);
  }
  double smooth(const Matrix& z) const {
    return (z - yt).squaredNorm() / pn +
           lambda1 * apply_inverse(z).cwiseProduct(z).sum();
  }
  double objective(const Matrix& z, double z_nuclear) const {
    return smooth(z) + lambda2 * z_nuclear;
  }
};

struct ProxStep {
  Matrix z;
  Vector sv;  // post-threshold singular values of z
};

ProxStep prox_gradient_step(const ZProblem& prob, const Matrix& z) {
  const Matrix b = z - prob.gradient(z) / prob.lip;
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector s =
      (svd.singularValues().array() - prob.lambda2 / prob.lip).max(0.0)
          .matrix();
  return {svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose(), s};
}

int rank_from_singular_values(const Vector& sv) {
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  const double threshold = 1e-8 * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++rank;
  return rank;
}

struct SolveState {
  Matrix z;
  Vector sv;
  SolverReport report;
};

// Accelerated proximal gradient with a monotone safeguard: an accelerated
// step that raises the objective is replaced by a plain step from the
// current iterate (with momentum restart), and a plain step that fails to
// decrease keeps the iterate, so the trace never increases.
SolveState run_accelerated(const ZProblem& prob, Matrix z0,
                           const SolverOptions& opts) {
  SolveState st;
  st.z = std::move(z0);
  st.sv = Eigen::JacobiSVD<Matrix>(st.z).singularValues();
  double obj = prob.objective(st.z, st.sv.sum());
  st.report.objective_trace.push_back(obj);
  st.report.stop_reason = StopReason::max_iters;

  Matrix extrap = st.z;
  double t = 1.0;
  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    st.report.iterations = iter;
    ProxStep cand = prox_gradient_step(prob, extrap);
    double cand_obj = prob.objective(cand.z, cand.sv.sum());
    if (cand_obj > obj) {
      cand = prox_gradient_step(prob, st.z);
      cand_obj = prob.objective(cand.z, cand.sv.sum());
      t = 1.0;
      if (cand_obj > obj) {  // float-level stall at a fixed point
        cand.z = st.z;
        cand.sv = st.sv;
        cand_obj = obj;
      }
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    extrap = cand.z + ((t - 1.0) / t_next) * (cand.z - st.z);
    t = t_next;

    const double rel_change =
        std::abs(obj - cand_obj) / std::max(std::abs(obj), 1e-30);
    st.z = std::move(cand.z);
    st.sv = std::move(cand.sv);
    obj = cand_obj;
    st.report.objective_trace.push_back(obj);

    // Declaring convergence requires the fixed-point residual too, so a
    // crawling objective cannot masquerade as a solution. The residual costs
    // an extra prox step, hence the stride.
    if (rel_change < opts.tol && iter % 8 == 0) {
      const ProxStep fp = prox_gradient_step(prob, st.z);
      if ((st.z - fp.z).norm() <= 10.0 * opts.tol * st.z.norm()) {
        st.report.stop_reason = StopReason::tolerance;
        break;
      }
    }
  }
  st.report.final_objective = obj;
  st.report.effective_rank = rank_from_singular_values(st.sv);
  return st;
}

}  // namespace

RelaxedFit fit_relaxed(const KernelMatrix& K, const Dataset& data,
                       const KernelSpec& spec, double lambda1, double lambda2,
                       const SolverOptions& opts, const Matrix* init_coeff) {
  if (!(lambda1 > 0.0))
    throw std::invalid_argument("fit_relaxed: lambda1 must be > 0");
  if (!(lambda2 >= 0.0))
    throw std::invalid_argument("fit_relaxed: lambda2 must be >= 0");
  if (opts.max_iters < 1)
    throw std::invalid_argument("fit_relaxed: max_iters must be >= 1");
  if (!(opts.tol > 0.0))
    throw std::invalid_argument("fit_relaxed: tol must be > 0");
  if (opts.starts < 1)
    throw std::invalid_argument("fit_relaxed: starts must be >= 1");
  if (K.size() != data.n())
    throw std::invalid_argument("fit_relaxed: kernel size != n");
  if (init_coeff && (init_coeff->rows() != data.p() ||
                     init_coeff->cols() != data.n()))
    throw std::invalid_argument("fit_relaxed: init_coeff must be p x n");

  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();

  ZProblem prob;
  prob.delta = 1e-8 * K.trace / static_cast<double>(n);
  prob.ktil = K.values;
  prob.ktil.diagonal().array() += prob.delta;
  prob.llt.compute(prob.ktil);
  if (prob.llt.info() != Eigen::Success)
    throw numerical_error(
        "fit_relaxed: Cholesky of the jittered kernel matrix failed");
  prob.yt = data.Y.transpose();
  prob.pn = static_cast<double>(p) * static_cast<double>(n);
  prob.lambda1 = lambda1;
  prob.lambda2 = lambda2;

  Eigen::SelfAdjointEigenSolver<Matrix> es(prob.ktil,
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("fit_relaxed: sigma_min estimate failed");
  const double sigma_min = es.eigenvalues().minCoeff();
  if (!(sigma_min > 0.0))
    throw numerical_error(
        "fit_relaxed: jittered kernel matrix is not positive definite");
  prob.lip = 2.0 / prob.pn + 2.0 * lambda1 / sigma_min;

  // First start: supplied coefficients, or the closed-form ridge solution
  // (the exact minimizer for lambda2 = 0).
  Matrix z0;
  if (init_coeff) {
    z0 = (*init_coeff) * prob.ktil;
  } else {
    Matrix ridge_system = prob.ktil;
    ridge_system.diagonal().array() += prob.pn * lambda1;
    Eigen::LLT<Matrix> ridge_llt(ridge_system);
    if (ridge_llt.info() != Eigen::Success)
      throw numerical_error("fit_relaxed: ridge start factorization failed");
    z0 = (prob.ktil * ridge_llt.solve(data.Y)).transpose();
  }

  SolveState best = run_accelerated(prob, std::move(z0), opts);
  const double start_scale =
      std::max(data.Y.norm() / std::sqrt(prob.pn), 1e-3);
  for (int start = 1; start < opts.starts; ++start) {
    std::mt19937_64 rng(opts.seed + 0x9E3779B97F4A7C15ull *
                                        static_cast<std::uint64_t>(start));
    std::normal_distribution<double> gauss(0.0, start_scale);
    Matrix zr(p, n);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < n; ++j) zr(i, j) = gauss(rng);
    SolveState other = run_accelerated(prob, std::move(zr), opts);
    if (other.report.final_objective < best.report.final_objective)
      best = std::move(other);
  }

  FittedModel model{.coeff = prob.apply_inverse(best.z),
                    .Xtrain = data.X,
                    .kernel = spec,
                    .lambda = static_cast<double>(p) * lambda1,
                    .method = Method::nuclear_relaxed};
  model.lambda2 = lambda2;
  model.effective_rank = effective_rank(model.coeff);
  return {std::move(model), std::move(best.report)};
}

RelaxedFit fit_relaxed(const Dataset& data, const KernelSpec& spec,
                       double lambda1, double lambda2,
                       const SolverOptions& opts, const Matrix* init_coeff) {
  return fit_relaxed(kernel_matrix(spec, data.X), data, spec, lambda1,
                     lambda2, opts, init_coeff);
}

double relaxed_objective(const KernelMatrix& K, const Matrix& Y,
                         const Matrix& coeff, double lambda1, double lambda2) {
  const double pn =
      static_cast<double>(Y.cols()) * static_cast<double>(Y.rows());
  const Matrix ak = coeff * K.values;
  const double fit = (Y - ak.transpose()).squaredNorm() / pn;
  const double penalty = ak.cwiseProduct(coeff).sum();
  return fit + lambda1 * penalty + lambda2 * nuclear_norm(ak);
}

}  // namespace kridge
