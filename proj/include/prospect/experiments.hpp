#pragma once

#include <cstdint>
#include <vector>

#include "prospect/solvers.hpp"
#include "prospect/table.hpp"
#include "prospect/trex.hpp"

namespace prospect {

/// Synthetic model z = X b* + sigma e with equicorrelated Gaussian rows and
/// b* alternating -1,+1 on the first m coordinates.
struct LinearModelSpec {
  long n = 100;
  long p = 20;
  long m = 5;
  double sigma = 0.5;
  double corr = 0.0;  // off-diagonal of Sigma, in [0,1)
  std::uint64_t seed = 0;
};

struct LinearModel {
  Matrix X;  // columns normalized to norm sqrt(n)
  Vector z;
  Vector b_star;
};

LinearModel gen_linear_model(const LinearModelSpec& spec);

// theta = n / (2 m log(p - m)) and its rounded inverse.
double rescaled_sample_size(long n, long p, long m);
long n_for_theta(double theta, long p, long m);

// ceil(0.4 p^{3/4}), the support size convention of the experiments.
long support_size_for_p(long p);

struct SupportMetrics {
  bool exact_recovery = false;
  long hamming = 0;
  double est_err = 0.0;   // ||b_hat - b*||^2 / n
  double pred_err = 0.0;  // ||X(b_hat - b*)||^2 / n
};

// Support read at |b_hat_j| > zero_threshold (a reporting convention, the
// solvers never threshold).
SupportMetrics support_metrics(const Vector& b_hat, const Vector& b_star,
                               const Matrix& X, double zero_threshold);

struct PhaseTransitionConfig {
  long p = 64;
  std::vector<double> theta_grid = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6};
  std::vector<double> q_list = {9.0 / 8.0, 2.0};
  std::vector<double> alpha_grid;  // empty means 0.1, 0.15, ..., 2.0
  long repetitions = 12;
  double zero_threshold = 0.05;
  double sigma = 0.5;
  double corr = 0.0;
  std::uint64_t base_seed = 1;
  int workers = 1;
  // Support metrics are read at threshold 0.05; tol 1e-5 changes estimates at
  // the 1e-3 level and cuts the sweep cost by ~3x against tol 1e-8.
  DRConfig solver = {30.0, 1.95, nullptr, 1e-5, 20000, 1};
};

// For each (theta, repetition) cell and each q: sweep the alpha grid, keep
// the alpha with the smallest Hamming distance (ties to the smaller alpha)
// and record its metrics. Identical seeds give bitwise-identical tables for
// any worker count.
ExperimentTable run_phase_transition(const PhaseTransitionConfig& config);

struct ScalingConfig {
  std::vector<long> dims = {20, 50, 100, 200, 500, 1000, 2000};
  long n = 200;
  long m = 20;
  double corr = 0.3;
  double sigma = 1.0;
  double alpha = 0.5;
  double q = 2.0;
  long repetitions = 20;
  long k0 = 50;
  std::uint64_t base_seed = 1;
  DRConfig solver;
};

// Times the j=1 subproblem pair per realization, full two-sign solve against
// DR-Sel, and appends median/mean summary rows per dimension. Runs on one
// thread so the wall-clock columns are not distorted by contention.
ExperimentTable run_scaling_benchmark(const ScalingConfig& config);

}  // namespace prospect
