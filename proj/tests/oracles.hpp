#pragma once

// Implementation-independent reference answers: a shrinking-grid minimizer
// for Moreau objectives, primal perspective value functions, a bisection
// cubic solver, and a grid-search subproblem oracle.

#include <cmath>
#include <functional>
#include <limits>

#include "prospect/numerics.hpp"

namespace oracle {

using prospect::Matrix;
using prospect::Vector;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Global minimizer of an extended-real convex function by a dense grid whose
// window shrinks around the incumbent until it is below final_window.
inline Vector grid_min(const std::function<double(const Vector&)>& f, Vector center,
                       double window, double final_window = 1e-6) {
  const int pts = 11;
  const int n = static_cast<int>(center.size());
  long total = 1;
  for (int i = 0; i < n; ++i) total *= pts;

  while (true) {
    double best = kInf;
    Vector best_x = center;
    Vector x(n);
    for (long idx = 0; idx < total; ++idx) {
      long rem = idx;
      for (int i = 0; i < n; ++i) {
        const int k = static_cast<int>(rem % pts);
        rem /= pts;
        x[i] = center[i] + window * (2.0 * k / (pts - 1) - 1.0);
      }
      const double v = f(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    // extra candidate: nearby coordinates snapped to 0. Minimizers sitting
    // exactly on coordinate kinks (apex gates, l1 zeros) attract the grid
    // too slowly otherwise, and the shrinking window can outrun the creep.
    for (int i = 0; i < n; ++i)
      x[i] = std::abs(center[i]) <= window ? 0.0 : center[i];
    if (f(x) < best) best_x = x;
    center = best_x;
    if (window < final_window) return center;
    window *= 0.45;  // margin of ~2 grid spacings around the incumbent
  }
}

// ---- primal perspective values on the flat vector (eta, y) ----

// phi(y) = ||y||^q / alpha + delta + <v,y>
inline double persp_power(double q, double alpha, double delta, const Vector& v,
                          double eta, const Vector& y) {
  if (eta < 0.0) return kInf;
  if (eta == 0.0) return y.isZero(0.0) ? 0.0 : kInf;
  const double dot = v.size() ? v.dot(y) : 0.0;
  return std::pow(y.norm(), q) / (alpha * std::pow(eta, q - 1.0)) + delta * eta + dot;
}

// g(eta,y) = -sqrt(eta^2 - ||y||^2) on the cone ||y|| <= eta
inline double persp_sqrt(double eta, const Vector& y) {
  const double n = y.norm();
  if (eta > 0.0 && n <= eta) return -std::sqrt(eta * eta - n * n);
  if (eta == 0.0 && n == 0.0) return 0.0;
  return kInf;
}

// perspective of phi0(dist to unit ball), phi0(t) = t^2/alpha
inline double persp_distance_ball(double alpha, double eta, const Vector& y) {
  if (eta < 0.0) return kInf;
  const double n = y.norm();
  if (eta == 0.0) return n == 0.0 ? 0.0 : kInf;
  const double ex = std::max(n - eta, 0.0);
  return ex * ex / (alpha * eta);
}

// ||(eta,y)|| + indicator of the nonnegative orthant
inline double cone_orthant_value(double eta, const Vector& y) {
  if (eta < 0.0) return kInf;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] < 0.0) return kInf;
  return std::sqrt(eta * eta + y.squaredNorm());
}

inline double huber_base(double rho, double t) {
  return std::abs(t) <= rho ? t * t / 2.0 : rho * std::abs(t) - rho * rho / 2.0;
}

inline double persp_huber(double rho, double eta, double y) {
  if (eta < 0.0) return kInf;
  if (eta == 0.0) return rho * std::abs(y);  // recession: linear growth
  return eta * huber_base(rho, y / eta);
}

inline double vapnik_base(double eps, double t) { return std::max(std::abs(t) - eps, 0.0); }

inline double persp_vapnik(double eps, double eta, double y) {
  if (eta < 0.0) return kInf;
  if (eta == 0.0) return std::abs(y);
  return eta * vapnik_base(eps, y / eta);
}

// 1D counterpart; a convex scalar function keeps its argmin within one grid
// spacing of the incumbent, so shrinking cannot stall. The tight final
// window matters in nested use: inner argmin error enters the outer profile
// first-order at kinks, and that noise floor caps the outer accuracy.
inline double grid_min_1d(const std::function<double(double)>& f, double center,
                          double window, double final_window = 1e-11) {
  const int pts = 11;
  while (true) {
    double best = kInf, best_x = center;
    for (int k = 0; k < pts; ++k) {
      const double x = center + window * (2.0 * k / (pts - 1) - 1.0);
      const double v = f(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    // snap to 0, for minimizers sitting exactly on a kink at 0
    if (std::abs(center) <= window && f(0.0) < best) best_x = 0.0;
    center = best_x;
    if (window < final_window) return center;
    window *= 0.45;
  }
}

// Moreau objective u -> f(u) + ||u - x||^2 / (2 gamma), minimized over the
// flat space; the argmin is prox_{gamma f}(x).
inline Vector prox_by_grid(const std::function<double(const Vector&)>& value,
                           const Vector& x, double gamma,
                           double final_window = 1e-6) {
  auto objective = [&](const Vector& u) {
    const double v = value(u);
    if (v == kInf) return kInf;
    return v + (u - x).squaredNorm() / (2.0 * gamma);
  };
  const double window = 2.0 * x.norm() + 6.0 * gamma + 10.0;
  return grid_min(objective, x, window, final_window);
}

// Scalar-pair prox oracle by nested 1D searches: the outer profile
// a -> min_b objective(a, b) is convex, and each 1D grid is stall-free.
// The joint 2D grid can stall in the tilted kink valleys of the piecewise
// perspectives, so scalar kinds go through this instead.
inline std::pair<double, double> prox_by_nested_grid(
    const std::function<double(double, double)>& value, double eta, double y,
    double gamma) {
  const double window = 2.0 * std::hypot(eta, y) + 6.0 * gamma + 10.0;
  auto inner_argmin = [&](double a) {
    // center inside [0, a]: always finite for the kinds served here, so the
    // incumbent starts feasible even when the domain slice is tiny
    const double center = std::min(std::max(y, 0.0), std::max(a, 0.0));
    return grid_min_1d(
        [&](double b) {
          const double v = value(a, b);
          if (v == kInf) return kInf;
          return v + ((a - eta) * (a - eta) + (b - y) * (b - y)) / (2.0 * gamma);
        },
        center, window);
  };
  auto profile = [&](double a) {
    const double b = inner_argmin(a);
    const double v = value(a, b);
    if (v == kInf) return kInf;
    return v + ((a - eta) * (a - eta) + (b - y) * (b - y)) / (2.0 * gamma);
  };
  const double a_star = grid_min_1d(profile, eta, window);
  return {a_star, inner_argmin(a_star)};
}

// Positive root of s^3 + p s + q (q < 0) by pure bisection.
inline double cubic_by_bisection(double p, double q) {
  double lo = 0.0, hi = 1.0;
  auto f = [&](double s) { return (s * s + p) * s + q; };
  while (f(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

// Grid-search minimum of a TREX subproblem objective over b.
inline double trex_subproblem_by_grid(const Matrix& X, const Vector& z, double alpha,
                                      double q, const Vector& xj) {
  auto objective = [&](const Vector& b) {
    Vector r = X * b - z;
    const double rn = r.norm();
    const double l1 = b.lpNorm<1>();
    if (rn == 0.0) return l1;
    const double u = xj.dot(r);
    if (u <= 0.0) return kInf;
    return std::pow(rn, q) / (alpha * std::pow(u, q - 1.0)) + l1;
  };
  Vector b = grid_min(objective, Vector::Zero(X.cols()), 6.0, 1e-6);
  return objective(b);
}

}  // namespace oracle
