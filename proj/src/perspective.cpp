#include "prospect/perspective.hpp"

#include <cmath>
#include <stdexcept>

namespace prospect {

namespace {

constexpr double kApexTol = 1e-12;

Vector resolve_v(const Vector& v, Eigen::Index dim) {
  if (v.size() == 0) return Vector::Zero(dim);
  if (v.size() != dim) throw std::invalid_argument("perspective: v dimension mismatch");
  return v;
}

ScaledPair zero_pair(Eigen::Index dim) { return {0.0, Vector::Zero(dim)}; }

}  // namespace

ScaledPair prox_perspective_radial(const RadialSpec& spec, ProxStep step,
                                   const ScaledPair& pair) {
  const double g = step.gamma;
  const Vector v = resolve_v(spec.v, pair.y.size());
  const Vector d = pair.y - g * v;
  const double dn = d.norm();
  const double r = dn / g;  // ||y/gamma - v||

  if (pair.eta + g * spec.phi0_conj(r) <= g * spec.delta) return zero_pair(pair.y.size());

  if (dn < kApexTol) {
    // y = gamma*v: t = 0, p = v
    return {pair.eta - g * spec.delta, pair.y - g * v};
  }

  MonotoneRootProblem prob;
  const double eta_over_g = pair.eta / g;
  const double delta = spec.delta;
  prob.function = [&spec, eta_over_g, delta](double s) {
    return (spec.phi0_conj(s) + eta_over_g - delta) * spec.phi0_conj_deriv(s) + s;
  };
  prob.target = r;
  prob.bracket_hi = std::max(1.0, r);
  const double t = invert_monotone(prob);

  const Vector p = v + (t / dn) * d;
  return {pair.eta + g * (spec.phi0_conj(t) - spec.delta), pair.y - g * p};
}

ScaledPair prox_perspective_sqrt(ProxStep step, const ScaledPair& pair) {
  const double g = step.gamma;
  const double n = pair.y.norm();

  if (pair.eta + std::sqrt(g * g + n * n) <= 0.0) return zero_pair(pair.y.size());
  if (n == 0.0) return {pair.eta + g, pair.y};

  const double eta_over_g = pair.eta / g;
  MonotoneRootProblem prob;
  prob.function = [eta_over_g](double s) {
    return (2.0 + eta_over_g / std::sqrt(1.0 + s * s)) * s;
  };
  prob.derivative = [eta_over_g](double s) {
    return 2.0 + eta_over_g * std::pow(1.0 + s * s, -1.5);
  };
  prob.target = n / g;
  prob.bracket_hi = std::max(1.0, n / g);
  const double t = invert_monotone(prob);

  const Vector p = (t / n) * pair.y;
  return {pair.eta + g * std::sqrt(1.0 + t * t), pair.y - g * p};
}

ScaledPair prox_perspective_power(const PowerSpec& spec, ProxStep step,
                                  const ScaledPair& pair) {
  if (!(spec.q > 1.0) || !(spec.alpha > 0.0))
    throw std::invalid_argument("prox_perspective_power: need q > 1, alpha > 0");

  const double g = step.gamma;
  const double qs = spec.qstar();
  const double rho = spec.rho_const();
  const Vector v = resolve_v(spec.v, pair.y.size());
  const Vector d = pair.y - g * v;
  const double dn = d.norm();
  const double r = dn / g;

  // gate eta + gamma*phi0*(r) <= gamma*delta with phi0*(s) = rho s^{q*}/q*
  if (pair.eta + g * rho * std::pow(r, qs) / qs <= g * spec.delta)
    return zero_pair(pair.y.size());

  if (dn < kApexTol) return {pair.eta - g * spec.delta, pair.y - g * v};

  const double t = solve_power_polynomial(qs, pair.eta - g * spec.delta, g, rho, dn);
  const Vector p = v + (t / dn) * d;
  return {pair.eta + g * (rho * std::pow(t, qs) / qs - spec.delta), pair.y - g * p};
}

ScaledPair prox_perspective_quadratic(double alpha, double delta, const Vector& v,
                                      ProxStep step, const ScaledPair& pair) {
  if (!(alpha > 0.0)) throw std::invalid_argument("prox_perspective_quadratic: alpha <= 0");

  const double g = step.gamma;
  const Vector vv = resolve_v(v, pair.y.size());
  const Vector d = pair.y - g * vv;
  const double dn = d.norm();

  // gate eta + gamma * alpha ||y/gamma - v||^2 / 4 <= gamma*delta
  if (pair.eta + alpha * dn * dn / (4.0 * g) <= g * delta) return zero_pair(pair.y.size());

  if (dn < kApexTol) return {pair.eta - g * delta, pair.y - g * vv};

  const double pc = (4.0 * alpha * (pair.eta - g * delta) + 8.0 * g) / (alpha * alpha * g);
  const double qc = -8.0 * dn / (alpha * alpha * g);
  const double t = solve_depressed_cubic(pc, qc);

  return {pair.eta + g * (alpha * t * t / 4.0 - delta), (1.0 - g * t / dn) * d};
}

ScaledPair prox_perspective_distance_ball(const std::function<double(double)>& phi0_conj,
                                          const std::function<double(double)>& phi0_conj_deriv,
                                          ProxStep step, const ScaledPair& pair) {
  const double g = step.gamma;
  const double n = pair.y.norm();

  if (pair.eta >= 0.0 && n <= pair.eta) return pair;  // normal-cone region K
  if (pair.eta + n + g * phi0_conj(n / g) <= 0.0) return zero_pair(pair.y.size());

  const double eta_over_g = pair.eta / g;
  MonotoneRootProblem prob;
  prob.function = [&](double s) {
    return s + (eta_over_g + s + phi0_conj(s)) * (1.0 + phi0_conj_deriv(s));
  };
  prob.target = n / g;
  prob.bracket_hi = std::max(1.0, n / g);
  const double t = invert_monotone(prob);

  const Vector p = (t / n) * pair.y;
  return {pair.eta + g * (t + phi0_conj(t)), pair.y - g * p};
}

ScaledPair prox_perspective_sqrt_cone(const PairProjector& cone_projector,
                                      ProxStep step, const ScaledPair& pair) {
  ScaledPair proj = cone_projector(pair);
  const double n = proj.norm();
  if (n <= step.gamma) return zero_pair(pair.y.size());
  const double f = 1.0 - step.gamma / n;
  return {f * proj.eta, f * proj.y};
}

std::pair<double, double> prox_perspective_huber(const HuberSpec& spec, ProxStep step,
                                                 double eta, double y) {
  if (!(spec.rho > 0.0)) throw std::invalid_argument("prox_perspective_huber: rho <= 0");
  const double g = step.gamma;
  const double rho = spec.rho;
  const double ay = std::abs(y);
  const double sy = y >= 0.0 ? 1.0 : -1.0;

  if (eta + ay * ay / (2.0 * g) <= 0.0 && ay <= g * rho) return {0.0, 0.0};
  if (eta <= -g * rho * rho / 2.0 && ay > g * rho) return {0.0, y - g * rho * sy};
  if (eta > -g * rho * rho / 2.0 && ay > rho * eta + g * rho * (1.0 + rho * rho / 2.0))
    return {eta + g * rho * rho / 2.0, y - g * rho * sy};

  ScaledPair out = prox_perspective_quadratic(2.0, 0.0, Vector(), step,
                                              {eta, Vector::Constant(1, y)});
  return {out.eta, out.y[0]};
}

std::pair<double, double> prox_perspective_vapnik(const VapnikSpec& spec, ProxStep step,
                                                  double eta, double y) {
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("prox_perspective_vapnik: epsilon <= 0");
  const double g = step.gamma;
  const double e = spec.epsilon;
  const double ay = std::abs(y);
  const double sy = y >= 0.0 ? 1.0 : -1.0;

  if (eta + e * ay <= 0.0 && ay <= g) return {0.0, 0.0};
  if (eta <= -g * e && ay > g) return {0.0, y - g * sy};
  if (eta > -g * e && ay > e * eta + g * (1.0 + e * e)) return {eta + g * e, y - g * sy};
  if (ay > -eta / e && e * eta <= ay && ay <= e * eta + g * (1.0 + e * e)) {
    const double c = (eta + e * ay) / (1.0 + e * e);
    return {c, e * c * sy};
  }
  if (eta >= 0.0 && ay <= e * eta) return {eta, y};

  throw std::logic_error("prox_perspective_vapnik: case regions not exhaustive");
}

std::pair<Vector, Vector> prox_separable_perspective(const ScalarPerspectiveProx& scalar_prox,
                                                     ProxStep step, const Vector& x,
                                                     const Vector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("prox_separable_perspective: block shape mismatch");
  Vector p(x.size()), q(y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    auto [pi, qi] = scalar_prox(step, x[i], y[i]);
    p[i] = pi;
    q[i] = qi;
  }
  return {p, q};
}

ScaledPair prox_closed_domain_ray(const Projector& dom_projector, ProxStep step,
                                  const ScaledPair& pair) {
  const double g = step.gamma;
  Vector proj = g * dom_projector(pair.y / g);  // P_{gamma D} y = gamma P_D(y/gamma)
  return {0.0, pair.y - proj};
}

}  // namespace prospect
