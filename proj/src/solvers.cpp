#include "prospect/solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace prospect {

void validate(const DRConfig& config) {
  if (!(config.gamma > 0.0)) throw std::invalid_argument("DRConfig: gamma <= 0");
  if (!config.relaxation && !(config.mu > 0.0 && config.mu < 2.0))
    throw std::invalid_argument("DRConfig: mu outside ]0,2[");
  if (!(config.tol > 0.0)) throw std::invalid_argument("DRConfig: tol <= 0");
  if (config.max_iter < 1) throw std::invalid_argument("DRConfig: max_iter < 1");
  if (config.check_every < 1) throw std::invalid_argument("DRConfig: check_every < 1");
}

void Trace::record(const TraceEntry& e) {
  if (++since_last_ < stride_) return;
  since_last_ = 0;
  entries_.push_back(e);
  if (entries_.size() >= 10000) {
    std::vector<TraceEntry> kept;
    kept.reserve(entries_.size() / 2 + 1);
    for (std::size_t i = 0; i < entries_.size(); i += 2) kept.push_back(entries_[i]);
    entries_ = std::move(kept);
    stride_ *= 2;
  }
}

GraphProjector build_graph_projector(const Matrix& M) {
  if (!M.allFinite()) throw std::invalid_argument("build_graph_projector: non-finite M");
  const Eigen::Index m = M.rows();
  Matrix A = Matrix::Identity(m, m) + M * M.transpose();
  GraphProjector proj;
  proj.M = M;
  proj.R = spd_solve(A, M).transpose();  // M^T A^{-1}, A symmetric
  return proj;
}

std::pair<Vector, Vector> project_graph(const GraphProjector& proj, const Vector& b,
                                        const Vector& c) {
  if (b.size() != proj.M.cols() || c.size() != proj.M.rows())
    throw std::invalid_argument("project_graph: dimension mismatch");
  Vector v = b - proj.R * (proj.M * b - c);
  return {v, proj.M * v};
}

DRResult douglas_rachford(const ProxOp& prox_F, const ProxOp& prox_G,
                          const DRConfig& config, const Vector& init,
                          const std::function<double(const Vector&)>& objective) {
  validate(config);
  const double g = config.gamma;
  Vector y = init;
  Vector x_prev;
  DRResult result;

  for (long k = 0; k < config.max_iter; ++k) {
    Vector x = prox_G(y, g);
    Vector z = prox_F(2.0 * x - y, g);
    const double mu = config.relaxation ? config.relaxation(k) : config.mu;
    Vector y_next = y + mu * (z - x);

    const double dy = (y_next - y).norm();
    const double dx = x_prev.size() ? (x - x_prev).norm() : std::numeric_limits<double>::infinity();
    if ((k + 1) % config.check_every == 0)
      result.trace.record({k, dx, dy, (z - x).norm(),
                           objective ? objective(x) : std::numeric_limits<double>::quiet_NaN()});

    result.x = x;
    result.iterations = k + 1;
    y = std::move(y_next);
    const bool checkable = x_prev.size() > 0;  // dy can be 0 on the first step
    x_prev = std::move(x);
    if (checkable && std::min(dx, dy) <= config.tol) {
      result.converged = true;
      break;
    }
  }
  result.y_state = std::move(y);
  return result;
}

DRCompositeResult dr_composite(
    const ProxOp& prox_h, const ProxOp& prox_g, const GraphProjector& proj,
    const DRConfig& config, const DRCompositeState* init,
    const std::function<double(const Vector&, const Vector&)>& objective) {
  validate(config);
  const double g = config.gamma;
  const Eigen::Index p = proj.M.cols();
  const Eigen::Index m = proj.M.rows();

  Vector x = init ? init->x : Vector::Zero(p);
  Vector y = init ? init->y : Vector::Zero(m);
  long k0 = init ? init->iteration : 0;
  if (x.size() != p || y.size() != m)
    throw std::invalid_argument("dr_composite: state dimension mismatch");

  DRCompositeResult result;
  Vector b_prev;
  Vector q(m), b(p), c(m), z(p), t(m);

  for (long k = k0; k < k0 + config.max_iter; ++k) {
    q.noalias() = proj.M * x;
    q -= y;
    b = x;
    b.noalias() -= proj.R * q;
    c.noalias() = proj.M * b;
    z = prox_h(2.0 * b - x, g);
    t = prox_g(2.0 * c - y, g);
    const double mu = config.relaxation ? config.relaxation(k) : config.mu;

    double dy2 = 0.0, fp2 = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double d = t[i] - c[i];
      fp2 += d * d;
      y[i] += mu * d;
    }
    dy2 = mu * mu * fp2;
    double fpb2 = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) {
      const double d = z[i] - b[i];
      fpb2 += d * d;
      x[i] += mu * d;
    }

    const double dy = std::sqrt(dy2);
    const double db =
        b_prev.size() ? (b - b_prev).norm() : std::numeric_limits<double>::infinity();
    if ((k + 1) % config.check_every == 0)
      result.trace.record({k, db, dy, std::sqrt(fp2 + fpb2),
                           objective ? objective(b, c)
                                     : std::numeric_limits<double>::quiet_NaN()});

    result.iterations = k + 1 - k0;
    const bool checkable = b_prev.size() > 0;  // dy can be 0 on the first step
    b_prev = b;
    if (checkable && std::min(db, dy) <= config.tol) {
      result.converged = true;
      break;
    }
  }

  result.b = std::move(b_prev);
  result.c = std::move(c);
  result.state = {std::move(x), std::move(y), k0 + result.iterations};
  return result;
}

}  // namespace prospect
