#pragma once

#include <functional>
#include <utility>

#include "prospect/prox_core.hpp"

namespace prospect {

/// Radially symmetric base function phi = phi0 o ||.|| + delta + <.,v>,
/// described by its scalar conjugate phi0* and derivative.
/// Normalization: phi0*(0) = 0 and phi0*'(0) = 0.
struct RadialSpec {
  std::function<double(double)> phi0_conj;
  std::function<double(double)> phi0_conj_deriv;
  double delta = 0.0;
  Vector v;  // empty means 0
};

/// phi = |.|^q / alpha + delta + <.,v>, q > 1.
struct PowerSpec {
  double q = 2.0;
  double alpha = 1.0;
  double delta = 0.0;
  Vector v;  // empty means 0

  double qstar() const { return q / (q - 1.0); }
  double rho_const() const { return std::pow(alpha * (1.0 - 1.0 / qstar()), qstar() - 1.0); }
};

struct HuberSpec {
  double rho = 1.0;
};

struct VapnikSpec {
  double epsilon = 1.0;
};

ScaledPair prox_perspective_radial(const RadialSpec& spec, ProxStep step,
                                   const ScaledPair& pair);

ScaledPair prox_perspective_sqrt(ProxStep step, const ScaledPair& pair);

ScaledPair prox_perspective_power(const PowerSpec& spec, ProxStep step,
                                  const ScaledPair& pair);

ScaledPair prox_perspective_quadratic(double alpha, double delta, const Vector& v,
                                      ProxStep step, const ScaledPair& pair);

ScaledPair prox_perspective_distance_ball(const std::function<double(double)>& phi0_conj,
                                          const std::function<double(double)>& phi0_conj_deriv,
                                          ProxStep step, const ScaledPair& pair);

ScaledPair prox_perspective_sqrt_cone(const PairProjector& cone_projector,
                                      ProxStep step, const ScaledPair& pair);

std::pair<double, double> prox_perspective_huber(const HuberSpec& spec, ProxStep step,
                                                 double eta, double y);

std::pair<double, double> prox_perspective_vapnik(const VapnikSpec& spec, ProxStep step,
                                                  double eta, double y);

using ScalarPerspectiveProx =
    std::function<std::pair<double, double>(ProxStep, double, double)>;

// Componentwise prox of the separable sum of scalar perspectives.
std::pair<Vector, Vector> prox_separable_perspective(const ScalarPerspectiveProx& scalar_prox,
                                                     ProxStep step, const Vector& x,
                                                     const Vector& y);

// chi = 0 regime of a closed conjugate domain: (0, y - P_{gamma dom phi*} y).
ScaledPair prox_closed_domain_ray(const Projector& dom_projector, ProxStep step,
                                  const ScaledPair& pair);

}  // namespace prospect
