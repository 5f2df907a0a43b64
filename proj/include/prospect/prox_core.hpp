#pragma once

#include <functional>
#include <utility>

#include "prospect/numerics.hpp"

namespace prospect {

/// Perspective argument (eta, y): scalar scale plus vector part.
struct ScaledPair {
  double eta = 0.0;
  Vector y;

  double norm() const { return std::sqrt(eta * eta + y.squaredNorm()); }
};

inline ScaledPair operator-(const ScaledPair& a, const ScaledPair& b) {
  return {a.eta - b.eta, a.y - b.y};
}

/// Prox scaling gamma > 0.
struct ProxStep {
  double gamma = 1.0;
};

using Projector = std::function<Vector(const Vector&)>;
using PairProjector = std::function<ScaledPair(const ScaledPair&)>;

/// Conjugate evaluator u -> phi*(u), extended-real (+inf allowed).
struct ConjugateGate {
  std::function<double(const Vector&)> conjugate_at;
};

Vector soft_threshold(const Vector& x, double gamma);
double soft_threshold(double x, double gamma);

// prox of ||.|| + sigma_D at x, with projector_onto_C projecting onto C = gamma*D.
Vector prox_norm_plus_support(const Vector& x, double gamma,
                              const Projector& projector_onto_C);

// true iff eta + gamma*phi*(y/gamma) <= 0, i.e. the perspective prox is (0,0).
bool threshold_gate(const ScaledPair& pair, ProxStep step, const ConjugateGate& gate);

// || prox_value - (input - P_{gamma C}(input)) ||, the Moreau/projection identity gap.
double moreau_residual(const ScaledPair& prox_value,
                       const PairProjector& projector_onto_gammaC,
                       const ScaledPair& input);

}  // namespace prospect
