#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "prospect/numerics.hpp"

namespace prospect {

struct DRConfig {
  double gamma = 70.0;
  double mu = 1.95;                          // constant relaxation
  std::function<double(long)> relaxation;    // optional sequence, overrides mu
  double tol = 1e-10;
  long max_iter = 100000;
  long check_every = 1;
};

void validate(const DRConfig& config);

struct TraceEntry {
  long iter;
  double delta_b;
  double delta_y;
  double fixed_point_residual;
  double objective;  // NaN when no objective callback given
};

/// Convergence trace, decimated to at most 10^4 entries.
class Trace {
 public:
  void record(const TraceEntry& e);
  const std::vector<TraceEntry>& entries() const { return entries_; }
  long stride() const { return stride_; }

 private:
  std::vector<TraceEntry> entries_;
  long stride_ = 1;
  long since_last_ = 0;
};

using ProxOp = std::function<Vector(const Vector&, double)>;  // (point, gamma)

/// Projection onto the graph V = {(b, Mb)}; R = M^T (Id + M M^T)^{-1} is
/// factored once at construction.
struct GraphProjector {
  Matrix M;
  Matrix R;
};

GraphProjector build_graph_projector(const Matrix& M);
std::pair<Vector, Vector> project_graph(const GraphProjector& proj, const Vector& b,
                                        const Vector& c);

struct DRResult {
  Vector x;
  bool converged = false;
  long iterations = 0;
  Trace trace;
  Vector y_state;
};

DRResult douglas_rachford(const ProxOp& prox_F, const ProxOp& prox_G,
                          const DRConfig& config, const Vector& init,
                          const std::function<double(const Vector&)>& objective = nullptr);

struct DRCompositeState {
  Vector x;  // driver block in R^p
  Vector y;  // driver block in R^m
  long iteration = 0;
};

struct DRCompositeResult {
  Vector b;
  Vector c;
  bool converged = false;
  long iterations = 0;
  Trace trace;
  DRCompositeState state;
};

/// Composite splitting for min h(b) + g(c) s.t. c = Mb: graph-projection
/// driver plus blockwise prox of h and g.
DRCompositeResult dr_composite(
    const ProxOp& prox_h, const ProxOp& prox_g, const GraphProjector& proj,
    const DRConfig& config, const DRCompositeState* init = nullptr,
    const std::function<double(const Vector&, const Vector&)>& objective = nullptr);

}  // namespace prospect
