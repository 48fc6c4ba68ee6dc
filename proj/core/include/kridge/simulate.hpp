#pragma once

#include "kridge/dataset.hpp"
#include "kridge/model.hpp"
#include "kridge/nuclear.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace kridge {

/// Synthetic-benchmark configuration. The target is F = A H with
/// H = (h_1, ..., h_r)^T built from the bump functions h_k below and a
/// p x r factor A whose top block is the identity; `s` controls how many
/// outputs are nonzero (s = p means non-sparse; 0 is shorthand for p).
struct SimConfig {
  int d = 1;
  int r = 2;
  int s = 0;  // 0 means p
  int p = 10;
  int n = 20;
  double noise_sd = 0.1;
  std::uint64_t seed = 0;
  int n_test = 200;
  int replicates = 1;
  std::vector<Method> methods = {Method::elementwise, Method::hard_rank,
                                 Method::nuclear_relaxed};
  // Relaxed fits inside the tuning grid get a capped iteration budget so a
  // full replicate sweep stays interactive; raise for standalone fits.
  SolverOptions solver{1e-7, 600, 1, 0};

  int sparsity() const { return s == 0 ? p : s; }
  double nu() const { return 3.5 + d / 2.0; }
  void validate() const;
};

/// h_k(x) = 2 / (|x - 0.1 a_k| + 1) + 0.5 / (|x - 0.05 a_k| + 1) with
/// a_k = 0.5 k, distances Euclidean over the d coordinates. Bounded by 2.5.
double test_function_h(int k, int d, const Vector& x);

/// Rank-r vector-valued target F(x) = A (h_1(x), ..., h_r(x))^T.
struct TestFunction {
  Matrix A;  // p x r, top block identity
  int d = 1;

  Vector operator()(const Vector& x) const;
  Matrix at_rows(const Matrix& X) const;  // q x p
};

/// Draw the factor A: rows r..s-1 are uniform on [0,1], rows s..p-1 zero.
TestFunction build_F(const SimConfig& config, std::mt19937_64& rng);

/// X uniform on [0,1]^d, Y = F(X) + Gaussian noise; fully seed-determined.
Dataset gen_data(const SimConfig& config, const TestFunction& f,
                 std::mt19937_64& rng);

/// First `count` Halton points (index starting at 1) with prime bases
/// 2, 3, 5, ...; supports d <= 6. Independent of any RNG.
Matrix halton_points(int count, int d);

/// Mean over test rows of the squared Euclidean distance between the true
/// and predicted output vectors.
double l2_error(const TestFunction& f, const FittedModel& model,
                const Matrix& test_points);

/// Deterministic per-replicate RNG seed (splitmix64 of master seed and
/// replicate index).
std::uint64_t replicate_seed(std::uint64_t master, int replicate);

struct ReplicateRecord {
  int replicate = 0;
  Method method = Method::elementwise;
  double lambda = 0.0;
  double r1_or_lambda2 = 0.0;  // r1 for hard_rank, lambda2 for relaxed, else 0
  double l2 = 0.0;
};

struct MethodStats {
  double median = 0.0;
  double mean = 0.0;
  int count = 0;
};

struct SimResult {
  SimConfig config;
  std::vector<ReplicateRecord> records;
  std::vector<std::pair<Method, MethodStats>> stats;  // config.methods order
  double difference = 0.0;  // median(elementwise) - median(hard_rank)
  int failed_replicates = 0;

  const MethodStats* stats_for(Method m) const;
};

/// Per replicate: draw A, a training set, and an independent validation set
/// of the same size; tune each method on the default grids by validation
/// search; fit on the training set and evaluate l2_error on the Halton test
/// grid with the Matern kernel at nu = 3.5 + d/2. Failed replicates are
/// counted and excluded from the aggregates.
SimResult run_experiment(const SimConfig& config);

}  // namespace kridge
