#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "prospect/experiments.hpp"
#include "prospect/rng.hpp"
#include "prospect/trex.hpp"
#include "oracles.hpp"

using namespace prospect;

namespace {

TrexProblem tiny_problem(unsigned long seed, double q = 2.0) {
  LinearModelSpec spec;
  spec.n = 10;
  spec.p = 3;
  spec.m = 2;
  spec.sigma = 0.5;
  spec.seed = seed;
  LinearModel model = gen_linear_model(spec);
  TrexProblem problem;
  problem.X = model.X;
  problem.z = model.z;
  problem.q = q;
  return problem;
}

}  // namespace

TEST_CASE("validate rejects degenerate problems") {
  TrexProblem problem = tiny_problem(1);
  CHECK_NOTHROW(validate(problem));

  TrexProblem bad = problem;
  bad.q = 1.0;
  CHECK_THROWS_WITH_AS(
      validate(bad),
      "TrexProblem: q = 1 is the Sqrt-Lasso limit and is not solvable by this path",
      std::invalid_argument);
  bad = problem;
  bad.q = 0.9;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = problem;
  bad.alpha = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = problem;
  bad.z = Vector::Zero(3);  // length mismatch
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("build_subproblem assembles the lifted operator") {
  TrexProblem problem = tiny_problem(2);
  const Matrix& X = problem.X;

  for (int s : {1, -1}) {
    Subproblem sub = build_subproblem(problem, {2, s});
    Vector xj = s * X.col(1);
    CHECK(sub.M.rows() == X.rows() + 1);
    CHECK(sub.M.cols() == X.cols());
    CHECK((sub.M.row(0).transpose() - X.transpose() * xj).norm() <= 1e-14);
    CHECK((sub.M.bottomRows(X.rows()) - X).norm() == 0.0);
    CHECK(sub.shift_eta == doctest::Approx(xj.dot(problem.z)).epsilon(1e-14));
    CHECK((sub.shift_y - problem.z).norm() == 0.0);
  }
}

TEST_CASE("prox_g_trex is the shifted perspective prox") {
  TrexProblem problem = tiny_problem(3);
  Subproblem sub = build_subproblem(problem, {1, 1});
  Rng rng(31);
  ProxStep step{1.7};

  for (int i = 0; i < 20; ++i) {
    ScaledPair pair{rng.uniform(-5.0, 5.0), Vector(problem.z.size())};
    for (Eigen::Index k = 0; k < pair.y.size(); ++k)
      pair.y[k] = rng.uniform(-5.0, 5.0);

    ScaledPair out = prox_g_trex(problem, sub, step, pair);

    // shift to the origin, apply the plain quadratic perspective, shift back
    ScaledPair shifted{pair.eta - sub.shift_eta, pair.y - sub.shift_y};
    ScaledPair ref = prox_perspective_quadratic(problem.alpha, 0.0, Vector(),
                                                step, shifted);
    CHECK(std::abs(out.eta - (ref.eta + sub.shift_eta)) <= 1e-12);
    CHECK((out.y - (ref.y + sub.shift_y)).norm() <= 1e-12);
  }
}

TEST_CASE("prox_g_trex: general-q route agrees at q = 2") {
  TrexProblem problem = tiny_problem(4);
  TrexProblem forced = problem;
  forced.force_general_q = true;
  Subproblem sub = build_subproblem(problem, {2, -1});
  Rng rng(32);
  ProxStep step{0.8};

  for (int i = 0; i < 20; ++i) {
    ScaledPair pair{rng.uniform(-5.0, 5.0), Vector(problem.z.size())};
    for (Eigen::Index k = 0; k < pair.y.size(); ++k)
      pair.y[k] = rng.uniform(-5.0, 5.0);
    ScaledPair a = prox_g_trex(problem, sub, step, pair);
    ScaledPair b = prox_g_trex(forced, sub, step, pair);
    CHECK(std::abs(a.eta - b.eta) <= 1e-9);
    CHECK((a.y - b.y).norm() <= 1e-9);
  }
}

TEST_CASE("trex objective is the minimum over the signed subproblems") {
  TrexProblem problem = tiny_problem(5);
  Rng rng(33);
  for (int i = 0; i < 10; ++i) {
    Vector b(3);
    for (int k = 0; k < 3; ++k) b[k] = rng.uniform(-2.0, 2.0);
    double best = oracle::kInf;
    for (int j = 1; j <= 3; ++j)
      for (int s : {1, -1})
        best = std::min(best, eval_subproblem_objective(problem, {j, s}, b));
    CHECK(eval_trex_objective(problem, b) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("solve_subproblem reaches the grid-search optimum") {
  for (double q : {2.0, 1.5}) {
    TrexProblem problem = tiny_problem(6, q);
    SubproblemId id{1, 1};
    DRConfig config;
    SubproblemSolve sol = solve_subproblem(problem, id, config);
    CHECK(sol.converged);

    Vector xj = problem.X.col(0);
    const double ref = oracle::trex_subproblem_by_grid(problem.X, problem.z,
                                                       problem.alpha, q, xj);
    CHECK(sol.objective <= ref + 1e-4);
    CHECK(sol.objective == doctest::Approx(eval_subproblem_objective(problem, id, sol.b))
                               .epsilon(1e-10));
  }
}

TEST_CASE("solve_subproblem: zero response gives the zero solution") {
  TrexProblem problem = tiny_problem(7);
  problem.z.setZero();
  SubproblemSolve sol = solve_subproblem(problem, {1, 1}, DRConfig{});
  CHECK(sol.b.norm() <= 1e-6);
}

TEST_CASE("solve_subproblem resumes exactly from a saved state") {
  TrexProblem problem = tiny_problem(8);
  SubproblemId id{2, 1};

  DRConfig fixed;
  fixed.tol = 1e-300;
  fixed.max_iter = 300;
  SubproblemSolve whole = solve_subproblem(problem, id, fixed);
  CHECK_FALSE(whole.converged);

  DRConfig head = fixed;
  head.max_iter = 120;
  SubproblemSolve part = solve_subproblem(problem, id, head);
  DRConfig tail = fixed;
  tail.max_iter = 180;
  SubproblemSolve rest = solve_subproblem(problem, id, tail, nullptr, &part.state);

  CHECK(rest.state.iteration == whole.state.iteration);
  CHECK((rest.state.x - whole.state.x).norm() == 0.0);
  CHECK((rest.state.y - whole.state.y).norm() == 0.0);
}

TEST_CASE("solve_trex_full sweeps and reports all subproblems") {
  TrexProblem problem = tiny_problem(9);
  DRConfig config;
  TrexResult res = solve_trex_full(problem, config);

  REQUIRE(res.per_subproblem.size() == 6);
  CHECK(res.per_subproblem[0].id == SubproblemId{1, 1});
  CHECK(res.per_subproblem[1].id == SubproblemId{1, -1});
  CHECK(res.per_subproblem[5].id == SubproblemId{3, -1});

  double best = oracle::kInf;
  for (const auto& r : res.per_subproblem) best = std::min(best, r.objective);
  bool winner_seen = false;
  for (const auto& r : res.per_subproblem)
    if (r.id == res.winner) {
      winner_seen = true;
      // equal up to the tie tolerance of the winner selection
      CHECK(r.objective <= best + 1e-10 * std::max(1.0, std::abs(best)));
    }
  CHECK(winner_seen);
  CHECK(res.any_converged);
  CHECK(res.objective ==
        doctest::Approx(eval_trex_objective(problem, res.b_hat)).epsilon(1e-10));
}

TEST_CASE("solve_trex_full: duplicated column ties break to the smaller j") {
  TrexProblem problem = tiny_problem(10);
  problem.X.col(2) = problem.X.col(0);  // j = 3 duplicates j = 1
  TrexResult res = solve_trex_full(problem, DRConfig{});
  CHECK(res.winner.j != 3);
}

TEST_CASE("solve_trex_full: general-q route reproduces the q = 2 answer") {
  TrexProblem problem = tiny_problem(11);
  TrexProblem forced = problem;
  forced.force_general_q = true;
  TrexResult a = solve_trex_full(problem, DRConfig{});
  TrexResult b = solve_trex_full(forced, DRConfig{});
  CHECK(a.winner == b.winner);
  CHECK(std::abs(a.objective - b.objective) <= 1e-8);
}

TEST_CASE("dr_sel picks the sign the full pair solve picks") {
  TrexProblem problem = tiny_problem(12);
  DRConfig config;
  const int j = 2;
  DrSelResult sel = dr_sel(problem, j, config);

  SubproblemSolve plus = solve_subproblem(problem, {j, 1}, config);
  SubproblemSolve minus = solve_subproblem(problem, {j, -1}, config);
  const double best = std::min(plus.objective, minus.objective);
  CHECK(sel.selected.j == j);
  CHECK(sel.solve.objective <= best + 1e-6);
  CHECK(sel.solve.iterations > 50);  // probe iterations are counted
}

TEST_CASE("dr_sel with k0 >= max_iter degenerates to the full pair") {
  TrexProblem problem = tiny_problem(13);
  DRConfig config;
  DrSelResult sel = dr_sel(problem, 1, config, config.max_iter);

  SubproblemSolve plus = solve_subproblem(problem, {1, 1}, config);
  SubproblemSolve minus = solve_subproblem(problem, {1, -1}, config);
  const bool keep_plus = plus.objective <= minus.objective;
  CHECK(sel.selected.s == (keep_plus ? 1 : -1));
  CHECK(sel.solve.objective == (keep_plus ? plus.objective : minus.objective));
  CHECK(sel.objective_plus_k0 == plus.objective);
  CHECK(sel.objective_minus_k0 == minus.objective);
}

TEST_CASE("concomitant lasso: stationarity of the scale") {
  LinearModelSpec spec;
  spec.n = 30;
  spec.p = 8;
  spec.m = 3;
  spec.sigma = 0.5;
  spec.seed = 14;
  LinearModel model = gen_linear_model(spec);

  DRConfig config;
  ConcomitantResult res = solve_concomitant_lasso(model.X, model.z, 0.2, config);
  CHECK(res.converged);
  const double resid = (model.X * res.b - model.z).norm();
  CHECK(res.sigma_hat ==
        doctest::Approx(resid / std::sqrt(double(spec.n))).epsilon(1e-6));
}

TEST_CASE("concomitant lasso: zero response and heavy penalty") {
  LinearModelSpec spec;
  spec.n = 20;
  spec.p = 5;
  spec.m = 2;
  spec.seed = 15;
  LinearModel model = gen_linear_model(spec);

  ConcomitantResult zero =
      solve_concomitant_lasso(model.X, Vector::Zero(spec.n), 0.5, DRConfig{});
  CHECK(zero.b.norm() <= 1e-8);
  CHECK(zero.sigma_hat <= 1e-8);

  // lambda above ||X^T z|| / ... kills every coefficient
  ConcomitantResult heavy = solve_concomitant_lasso(model.X, model.z, 1e4, DRConfig{});
  CHECK(heavy.b.norm() <= 1e-8);
  CHECK(heavy.sigma_hat ==
        doctest::Approx(model.z.norm() / std::sqrt(double(spec.n))).epsilon(1e-6));
}
