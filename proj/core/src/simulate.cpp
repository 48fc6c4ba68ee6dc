#include "kridge/simulate.hpp"

#include "kridge/reduced_rank.hpp"
#include "kridge/ridge.hpp"
#include "kridge/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace kridge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double radical_inverse(int index, int base) {
  const double inv_base = 1.0 / base;
  double digit_weight = inv_base;
  double x = 0.0;
  while (index > 0) {
    x += digit_weight * (index % base);
    index /= base;
    digit_weight *= inv_base;
  }
  return x;
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
  }
  return hi;
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t master, int replicate) {
  return splitmix64(master ^
                    splitmix64(static_cast<std::uint64_t>(replicate) + 1));
}

void SimConfig::validate() const {
  if (d < 1 || d > 6)
    throw std::invalid_argument("SimConfig: d must be in [1, 6]");
  if (p < 1) throw std::invalid_argument("SimConfig: p must be >= 1");
  const int s_eff = sparsity();
  if (r < 1 || r > s_eff || s_eff > p)
    throw std::invalid_argument(
        "SimConfig: need 1 <= r <= s <= p, got r = " + std::to_string(r) +
        ", s = " + std::to_string(s_eff) + ", p = " + std::to_string(p));
  if (n < 1) throw std::invalid_argument("SimConfig: n must be >= 1");
  if (!(noise_sd >= 0.0))
    throw std::invalid_argument("SimConfig: noise_sd must be >= 0");
  if (n_test < 1) throw std::invalid_argument("SimConfig: n_test must be >= 1");
  if (replicates < 1)
    throw std::invalid_argument("SimConfig: replicates must be >= 1");
  if (methods.empty())
    throw std::invalid_argument("SimConfig: methods must be nonempty");
}

double test_function_h(int k, int d, const Vector& x) {
  if (k < 1) throw std::invalid_argument("test_function_h: k must be >= 1");
  if (x.size() != d)
    throw std::invalid_argument("test_function_h: x has wrong dimension");
  const double a = 0.5 * k;
  double s1 = 0.0;
  double s2 = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    s1 += (x(j) - 0.1 * a) * (x(j) - 0.1 * a);
    s2 += (x(j) - 0.05 * a) * (x(j) - 0.05 * a);
  }
  return 2.0 / (std::sqrt(s1) + 1.0) + 0.5 / (std::sqrt(s2) + 1.0);
}

Vector TestFunction::operator()(const Vector& x) const {
  Vector h(A.cols());
  for (Eigen::Index k = 0; k < A.cols(); ++k)
    h(k) = test_function_h(static_cast<int>(k) + 1, d, x);
  return A * h;
}

Matrix TestFunction::at_rows(const Matrix& X) const {
  Matrix out(X.rows(), A.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    out.row(i) = (*this)(X.row(i).transpose()).transpose();
  return out;
}

TestFunction build_F(const SimConfig& config, std::mt19937_64& rng) {
  config.validate();
  const int s_eff = config.sparsity();
  Matrix A = Matrix::Zero(config.p, config.r);
  A.topLeftCorner(config.r, config.r) =
      Matrix::Identity(config.r, config.r);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = config.r; i < s_eff; ++i)
    for (int j = 0; j < config.r; ++j) A(i, j) = unif(rng);
  // rows s..p-1 stay zero
  return TestFunction{std::move(A), config.d};
}

Dataset gen_data(const SimConfig& config, const TestFunction& f,
                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix X(config.n, config.d);
  for (int i = 0; i < config.n; ++i)
    for (int j = 0; j < config.d; ++j) X(i, j) = unif(rng);
  Matrix Y = f.at_rows(X);
  if (config.noise_sd > 0.0) {
    std::normal_distribution<double> gauss(0.0, config.noise_sd);
    for (Eigen::Index i = 0; i < Y.rows(); ++i)
      for (Eigen::Index k = 0; k < Y.cols(); ++k) Y(i, k) += gauss(rng);
  }
  return Dataset(std::move(X), std::move(Y));
}

Matrix halton_points(int count, int d) {
  static constexpr int kBases[] = {2, 3, 5, 7, 11, 13};
  if (d < 1 || d > 6)
    throw std::invalid_argument("halton_points: d must be in [1, 6]");
  if (count < 1)
    throw std::invalid_argument("halton_points: count must be >= 1");
  Matrix out(count, d);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < d; ++j)
      out(i, j) = radical_inverse(i + 1, kBases[j]);
  return out;
}

double l2_error(const TestFunction& f, const FittedModel& model,
                const Matrix& test_points) {
  const Matrix truth = f.at_rows(test_points);
  const Matrix pred = predict(model, test_points);
  return (truth - pred).rowwise().squaredNorm().mean();
}

const MethodStats* SimResult::stats_for(Method m) const {
  for (const auto& entry : stats)
    if (entry.first == m) return &entry.second;
  return nullptr;
}

SimResult run_experiment(const SimConfig& config) {
  config.validate();
  const KernelSpec spec(config.nu(), config.d);
  const Matrix test_points = halton_points(config.n_test, config.d);

  SimResult out;
  out.config = config;
  for (int rep = 0; rep < config.replicates; ++rep) {
    try {
      std::mt19937_64 rng(replicate_seed(config.seed, rep));
      const TestFunction f = build_F(config, rng);
      const Dataset train = gen_data(config, f, rng);
      const Dataset valid = gen_data(config, f, rng);
      const KernelMatrix K = kernel_matrix(spec, train.X);

      std::vector<ReplicateRecord> records;
      for (Method method : config.methods) {
        const TuneGrid grid = TuneGrid::defaults(method, config.p);
        const TuneResult tuned = tune_validation(train, valid, spec, grid,
                                                 method, config.solver);
        ReplicateRecord rec{rep, method, tuned.best.lambda, 0.0, 0.0};
        switch (method) {
          case Method::elementwise: {
            rec.l2 = l2_error(
                f, fit_elementwise(K, train, spec, tuned.best.lambda),
                test_points);
            break;
          }
          case Method::hard_rank: {
            rec.r1_or_lambda2 = tuned.best.r1;
            rec.l2 = l2_error(f,
                              fit_hard_rank(K, train, spec, tuned.best.lambda,
                                            tuned.best.r1),
                              test_points);
            break;
          }
          case Method::nuclear_relaxed: {
            rec.r1_or_lambda2 = tuned.best.lambda2;
            const double lambda1 =
                tuned.best.lambda / static_cast<double>(config.p);
            rec.l2 = l2_error(f,
                              fit_relaxed(K, train, spec, lambda1,
                                          tuned.best.lambda2, config.solver)
                                  .model,
                              test_points);
            break;
          }
        }
        records.push_back(rec);
      }
      out.records.insert(out.records.end(), records.begin(), records.end());
    } catch (const std::exception&) {
      ++out.failed_replicates;
    }
  }

  for (Method method : config.methods) {
    std::vector<double> errs;
    for (const ReplicateRecord& rec : out.records)
      if (rec.method == method) errs.push_back(rec.l2);
    MethodStats stats;
    stats.count = static_cast<int>(errs.size());
    if (!errs.empty()) {
      stats.mean = std::accumulate(errs.begin(), errs.end(), 0.0) /
                   static_cast<double>(errs.size());
      stats.median = median_of(std::move(errs));
    }
    out.stats.emplace_back(method, stats);
  }

  const MethodStats* eukrr = out.stats_for(Method::elementwise);
  const MethodStats* hard = out.stats_for(Method::hard_rank);
  out.difference = (eukrr && hard && eukrr->count > 0 && hard->count > 0)
                       ? eukrr->median - hard->median
                       : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace kridge
