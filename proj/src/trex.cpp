#include "prospect/trex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "prospect/parallel.hpp"
#include "prospect/prox_core.hpp"

namespace prospect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_id(const TrexProblem& problem, SubproblemId id) {
  if (id.j < 1 || id.j > problem.X.cols())
    throw std::invalid_argument("SubproblemId: column index out of range");
  if (id.s != 1 && id.s != -1) throw std::invalid_argument("SubproblemId: sign not in {-1,+1}");
}

}  // namespace

void validate(const TrexProblem& problem) {
  if (problem.X.rows() < 1 || problem.X.cols() < 1)
    throw std::invalid_argument("TrexProblem: empty design");
  if (!problem.X.allFinite() || !problem.z.allFinite())
    throw std::invalid_argument("TrexProblem: non-finite data");
  if (problem.z.size() != problem.X.rows())
    throw std::invalid_argument("TrexProblem: response length mismatch");
  if (!(problem.alpha > 0.0)) throw std::invalid_argument("TrexProblem: alpha <= 0");
  if (problem.q == 1.0)
    throw std::invalid_argument(
        "TrexProblem: q = 1 is the Sqrt-Lasso limit and is not solvable by this path");
  if (!(problem.q > 1.0)) throw std::invalid_argument("TrexProblem: q must be > 1");
}

Subproblem build_subproblem(const TrexProblem& problem, SubproblemId id) {
  check_id(problem, id);
  const Eigen::Index n = problem.X.rows();
  const Eigen::Index p = problem.X.cols();
  Vector xj = static_cast<double>(id.s) * problem.X.col(id.j - 1);

  Subproblem sub;
  sub.id = id;
  sub.M.resize(n + 1, p);
  sub.M.row(0).noalias() = xj.transpose() * problem.X;
  sub.M.bottomRows(n) = problem.X;
  sub.shift_eta = xj.dot(problem.z);
  sub.shift_y = problem.z;
  return sub;
}

ScaledPair prox_g_trex(const TrexProblem& problem, const Subproblem& sub,
                       ProxStep step, const ScaledPair& pair) {
  ScaledPair shifted{pair.eta - sub.shift_eta, pair.y - sub.shift_y};
  ScaledPair out;
  if (problem.q == 2.0 && !problem.force_general_q) {
    out = prox_perspective_quadratic(problem.alpha, 0.0, Vector(), step, shifted);
  } else {
    PowerSpec spec;
    spec.q = problem.q;
    spec.alpha = problem.alpha;
    out = prox_perspective_power(spec, step, shifted);
  }
  return {out.eta + sub.shift_eta, out.y + sub.shift_y};
}

double eval_trex_objective(const TrexProblem& problem, const Vector& b) {
  Vector r = problem.X * b - problem.z;
  const double rn = r.norm();
  const double l1 = b.lpNorm<1>();
  if (rn == 0.0) return l1;
  const double den = (problem.X.transpose() * r).lpNorm<Eigen::Infinity>();
  if (den == 0.0) return kInf;
  return std::pow(rn, problem.q) / (problem.alpha * std::pow(den, problem.q - 1.0)) + l1;
}

double eval_subproblem_objective(const TrexProblem& problem, SubproblemId id,
                                 const Vector& b) {
  check_id(problem, id);
  Vector r = problem.X * b - problem.z;
  const double rn = r.norm();
  const double l1 = b.lpNorm<1>();
  if (rn == 0.0) return l1;
  const double u = static_cast<double>(id.s) * problem.X.col(id.j - 1).dot(r);
  if (u <= 0.0) return kInf;
  return std::pow(rn, problem.q) / (problem.alpha * std::pow(u, problem.q - 1.0)) + l1;
}

SubproblemSolve solve_subproblem(const TrexProblem& problem, SubproblemId id,
                                 const DRConfig& config, const GraphProjector* proj,
                                 const DRCompositeState* init) {
  validate(problem);
  Subproblem sub = build_subproblem(problem, id);
  GraphProjector local;
  if (!proj) {
    local = build_graph_projector(sub.M);
    proj = &local;
  }

  const Eigen::Index n = problem.X.rows();
  ProxOp prox_h = [](const Vector& v, double g) { return soft_threshold(v, g); };
  ProxOp prox_g = [&](const Vector& v, double g) {
    ScaledPair out = prox_g_trex(problem, sub, ProxStep{g}, {v[0], v.tail(n)});
    Vector w(n + 1);
    w[0] = out.eta;
    w.tail(n) = out.y;
    return w;
  };

  // Cheap per-iterate objective from the range block; tracks the best
  // recorded iterate for the non-converged return.
  double best_obj = kInf;
  Vector best_b;
  auto objective = [&](const Vector& b, const Vector& c) {
    const double l1 = b.lpNorm<1>();
    const double rn = (c.tail(n) - problem.z).norm();
    double val;
    if (rn == 0.0) {
      val = l1;
    } else {
      const double u = c[0] - sub.shift_eta;
      val = u <= 0.0 ? kInf
                     : std::pow(rn, problem.q) /
                               (problem.alpha * std::pow(u, problem.q - 1.0)) +
                           l1;
    }
    if (val < best_obj) {
      best_obj = val;
      best_b = b;
    }
    return val;
  };

  DRCompositeResult res = dr_composite(prox_h, prox_g, *proj, config, init, objective);

  SubproblemSolve out;
  out.id = id;
  out.b = res.b;
  out.converged = res.converged;
  out.iterations = res.iterations;
  out.trace = std::move(res.trace);
  out.state = std::move(res.state);
  out.objective = eval_subproblem_objective(problem, id, out.b);
  if (!out.converged && best_b.size() && best_obj < out.objective) {
    out.b = best_b;
    out.objective = eval_subproblem_objective(problem, id, out.b);
  }
  return out;
}

TrexResult solve_trex_full(const TrexProblem& problem, const DRConfig& config,
                           int workers) {
  validate(problem);
  validate(config);
  const int p = static_cast<int>(problem.X.cols());
  const long total = 2L * p;

  std::vector<SubproblemSolve> solves(total);
  parallel_for(total, workers, [&](long i) {
    SubproblemId id{static_cast<int>(i / 2) + 1, i % 2 == 0 ? 1 : -1};
    solves[i] = solve_subproblem(problem, id, config);
  });

  TrexResult result;
  result.per_subproblem.reserve(total);
  long win = 0;
  for (long i = 0; i < total; ++i) {
    const SubproblemSolve& s = solves[i];
    result.per_subproblem.push_back({s.id, s.objective, s.converged, s.iterations});
    result.any_converged = result.any_converged || s.converged;
    // near-equal objectives (duplicated or mirrored columns, shared KKT
    // faces) are a tie, kept with the earlier id so the winner does not
    // depend on last-bit solver noise
    const double tie = 1e-11 * std::max(1.0, std::abs(solves[win].objective));
    if (s.objective < solves[win].objective - tie) win = i;
  }
  result.winner = solves[win].id;
  result.winner_converged = solves[win].converged;
  result.b_hat = solves[win].b;
  result.objective = eval_trex_objective(problem, result.b_hat);
  return result;
}

DrSelResult dr_sel(const TrexProblem& problem, int j, const DRConfig& config,
                   long k0) {
  validate(problem);
  validate(config);
  if (k0 < 1) throw std::invalid_argument("dr_sel: k0 < 1");

  // k0 past the budget degenerates to solving both fully and keeping the min.
  const bool full_probe = k0 >= config.max_iter;
  DRConfig probe = config;
  if (!full_probe) {
    probe.max_iter = k0;
    probe.tol = 1e-300;  // run the full k0 iterations
  }

  SubproblemId plus{j, 1}, minus{j, -1};
  SubproblemSolve sp = solve_subproblem(problem, plus, probe);
  SubproblemSolve sm = solve_subproblem(problem, minus, probe);

  DrSelResult out;
  out.objective_plus_k0 = sp.objective;
  out.objective_minus_k0 = sm.objective;
  const bool keep_plus = sp.objective <= sm.objective;
  out.selected = keep_plus ? plus : minus;
  SubproblemSolve& head = keep_plus ? sp : sm;

  if (full_probe) {
    out.solve = std::move(head);
    return out;
  }
  DRConfig rest = config;
  rest.max_iter = config.max_iter - k0;
  out.solve = solve_subproblem(problem, out.selected, rest, nullptr, &head.state);
  out.solve.iterations += k0;
  return out;
}

ConcomitantResult solve_concomitant_lasso(const Matrix& X, const Vector& z,
                                          double lambda, const DRConfig& config) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_concomitant_lasso: lambda <= 0");
  if (z.size() != X.rows())
    throw std::invalid_argument("solve_concomitant_lasso: response length mismatch");
  validate(config);
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();

  // Driver block (sigma, b) -> (sigma, Xb); the concomitant scale rides along
  // as the perspective eta on the range side.
  Matrix M = Matrix::Zero(n + 1, p + 1);
  M(0, 0) = 1.0;
  M.block(1, 1, n, p) = X;
  GraphProjector proj = build_graph_projector(M);

  ProxOp prox_h = [&](const Vector& v, double g) {
    Vector w(v.size());
    w[0] = v[0];  // sigma unconstrained on this side
    w.tail(p) = soft_threshold(Vector(v.tail(p)), g * lambda);
    return w;
  };
  const double alpha = 2.0 * static_cast<double>(n);
  ProxOp prox_g = [&](const Vector& v, double g) {
    ScaledPair out = prox_perspective_quadratic(alpha, 0.5, Vector(), ProxStep{g},
                                                {v[0], v.tail(n) - z});
    Vector w(v.size());
    w[0] = out.eta;
    w.tail(n) = out.y + z;
    return w;
  };

  DRCompositeResult res = dr_composite(prox_h, prox_g, proj, config);

  ConcomitantResult out;
  out.b = res.b.tail(p);
  out.sigma_hat = std::max(0.0, res.b[0]);
  out.converged = res.converged;
  out.iterations = res.iterations;
  return out;
}

}  // namespace prospect
