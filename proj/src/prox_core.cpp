#include "prospect/prox_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace prospect {

double soft_threshold(double x, double gamma) {
  double m = std::abs(x) - gamma;
  return m > 0.0 ? (x > 0.0 ? m : -m) : 0.0;
}

Vector soft_threshold(const Vector& x, double gamma) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = soft_threshold(x[i], gamma);
  return out;
}

Vector prox_norm_plus_support(const Vector& x, double gamma,
                              const Projector& projector_onto_C) {
  if (!(gamma > 0.0)) throw std::invalid_argument("prox_norm_plus_support: gamma <= 0");

  // Lemma hypothesis D != {0}: probe x and the canonical directions.
  bool all_zero = projector_onto_C(x).isZero(0.0) && projector_onto_C(-x).isZero(0.0);
  if (all_zero) {
    for (Eigen::Index i = 0; i < x.size() && all_zero; ++i) {
      Vector e = Vector::Zero(x.size());
      e[i] = 1.0;
      all_zero = projector_onto_C(e).isZero(0.0) && projector_onto_C(-e).isZero(0.0);
    }
    if (all_zero)
      throw std::invalid_argument("prox_norm_plus_support: D = {0} violates the hypothesis");
  }

  Vector pc = projector_onto_C(x);
  double d = (x - pc).norm();
  if (d <= gamma) return Vector::Zero(x.size());
  return (1.0 - gamma / d) * (x - pc);
}

bool threshold_gate(const ScaledPair& pair, ProxStep step, const ConjugateGate& gate) {
  double conj = gate.conjugate_at(pair.y / step.gamma);
  if (std::isnan(conj)) throw std::domain_error("threshold_gate: conjugate is NaN");
  if (conj == std::numeric_limits<double>::infinity()) return false;
  return pair.eta + step.gamma * conj <= 0.0;
}

double moreau_residual(const ScaledPair& prox_value,
                       const PairProjector& projector_onto_gammaC,
                       const ScaledPair& input) {
  ScaledPair proj = projector_onto_gammaC(input);
  ScaledPair expected{input.eta - proj.eta, input.y - proj.y};
  return (prox_value - expected).norm();
}

}  // namespace prospect
