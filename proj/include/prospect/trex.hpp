#pragma once

#include <vector>

#include "prospect/perspective.hpp"
#include "prospect/solvers.hpp"

namespace prospect {

/// Penalized scaled-residual regression instance. q = 1 is the Sqrt-Lasso
/// limit and is rejected by validate().
struct TrexProblem {
  Matrix X;  // n x p design
  Vector z;  // n responses
  double alpha = 0.5;
  double q = 2.0;
  bool force_general_q = false;  // route q = 2 through the general-q prox
};

void validate(const TrexProblem& problem);

struct SubproblemId {
  int j = 1;  // column index, 1-based
  int s = 1;  // sign, +1 or -1
};

inline bool operator==(const SubproblemId& a, const SubproblemId& b) {
  return a.j == b.j && a.s == b.s;
}

/// One of the 2p convex subproblems: minimize ||b||_1 plus the perspective
/// data term with scale x_j^T(Xb - z), x_j = s * X_{:j}.
struct Subproblem {
  SubproblemId id;
  Matrix M;          // (n+1) x p, first row x_j^T X, rest X
  double shift_eta;  // x_j^T z
  Vector shift_y;    // z
};

Subproblem build_subproblem(const TrexProblem& problem, SubproblemId id);

// Shifted perspective prox of the subproblem data term.
ScaledPair prox_g_trex(const TrexProblem& problem, const Subproblem& sub,
                       ProxStep step, const ScaledPair& pair);

// ||Xb-z||^q / (alpha ||X^T(Xb-z)||_inf^{q-1}) + ||b||_1; data term 0 at Xb=z,
// +inf when the denominator vanishes off the residual kernel.
double eval_trex_objective(const TrexProblem& problem, const Vector& b);

// Same with the signed subproblem denominator x_j^T(Xb-z); +inf outside its
// positivity domain.
double eval_subproblem_objective(const TrexProblem& problem, SubproblemId id,
                                 const Vector& b);

struct SubproblemSolve {
  SubproblemId id;
  Vector b;
  double objective = 0.0;  // signed-denominator objective at b
  bool converged = false;
  long iterations = 0;
  Trace trace;
  DRCompositeState state;  // resumable driver state
};

// Composite DR solve of one subproblem. `proj` may carry a prebuilt graph
// projector for sub.M (rebuilt otherwise); `init` resumes a previous state.
SubproblemSolve solve_subproblem(const TrexProblem& problem, SubproblemId id,
                                 const DRConfig& config,
                                 const GraphProjector* proj = nullptr,
                                 const DRCompositeState* init = nullptr);

struct SubproblemReport {
  SubproblemId id;
  double objective = 0.0;
  bool converged = false;
  long iterations = 0;
};

struct TrexResult {
  Vector b_hat;
  double objective = 0.0;  // eval_trex_objective at b_hat
  SubproblemId winner;
  bool winner_converged = false;
  bool any_converged = false;
  std::vector<SubproblemReport> per_subproblem;  // (j=1,+1),(j=1,-1),(j=2,+1),...
};

// Sweeps all 2p subproblems (worker pool) and keeps the argmin objective.
// Ties break to the smallest j, then s = +1.
TrexResult solve_trex_full(const TrexProblem& problem, const DRConfig& config,
                           int workers = 1);

struct DrSelResult {
  SubproblemId selected;
  SubproblemSolve solve;
  double objective_plus_k0 = 0.0;
  double objective_minus_k0 = 0.0;
};

// Online sign selection for column j: run both signs k0 iterations, keep the
// sign with the lower objective at b_{k0} (tie to +1), finish only that one.
DrSelResult dr_sel(const TrexProblem& problem, int j, const DRConfig& config,
                   long k0 = 50);

struct ConcomitantResult {
  Vector b;
  double sigma_hat = 0.0;
  bool converged = false;
  long iterations = 0;
};

// min over (sigma, b) of ||Xb-z||^2/(2 n sigma) + sigma/2 + lambda ||b||_1,
// solved by composite DR with the quadratic perspective carrying sigma.
ConcomitantResult solve_concomitant_lasso(const Matrix& X, const Vector& z,
                                          double lambda, const DRConfig& config);

}  // namespace prospect
