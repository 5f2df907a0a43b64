#include "prospect/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prospect {

Polynomial::Polynomial(std::vector<double> c) : coeffs(std::move(c)) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty() || coeffs.back() == 0.0)
    throw std::invalid_argument("Polynomial: zero leading coefficient");
}

double Polynomial::eval(double s) const {
  double r = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * s + *it;
  return r;
}

double Polynomial::deriv(double s) const {
  double r = 0.0;
  for (int k = degree(); k >= 1; --k) r = r * s + k * coeffs[k];
  return r;
}

namespace {

double cubic_residual_scale(double p, double q) {
  return std::max({1.0, std::abs(p), std::abs(q)});
}

double newton_polish_cubic(double t, double p, double q) {
  for (int i = 0; i < 4; ++i) {
    double f = (t * t + p) * t + q;
    if (std::abs(f) <= 1e-13 * cubic_residual_scale(p, q)) break;
    double df = 3.0 * t * t + p;
    if (df == 0.0) break;
    t -= f / df;
  }
  return t;
}

}  // namespace

double solve_depressed_cubic(double p, double q_const) {
  if (!std::isfinite(p) || !std::isfinite(q_const))
    throw std::invalid_argument("solve_depressed_cubic: non-finite input");

  const double half_q = q_const / 2.0;
  const double disc = half_q * half_q + (p / 3.0) * (p / 3.0) * (p / 3.0);

  double root = std::numeric_limits<double>::quiet_NaN();
  if (disc >= 0.0) {
    const double sd = std::sqrt(disc);
    root = std::cbrt(-half_q + sd) + std::cbrt(-half_q - sd);
  } else {
    // three real roots; with q_const < 0 exactly one is positive
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q_const / (p * r), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    double best_res = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      double cand = r * std::cos(theta - 2.0943951023931953 * k);
      if (cand <= 0.0) continue;
      cand = newton_polish_cubic(cand, p, q_const);
      double res = std::abs((cand * cand + p) * cand + q_const);
      if (cand > 0.0 && res < best_res) {
        best_res = res;
        root = cand;
      }
    }
  }

  if (!std::isfinite(root)) throw std::domain_error("solve_depressed_cubic: no positive root");
  root = newton_polish_cubic(root, p, q_const);
  if (root <= 0.0) throw std::domain_error("solve_depressed_cubic: no positive root");
  return root;
}

double invert_monotone(const MonotoneRootProblem& problem) {
  const auto& f = problem.function;
  const double target = problem.target;
  const double tol = 1e-13 * std::max(1.0, std::abs(target));

  auto value = [&](double s) {
    double v = f(s);
    if (std::isnan(v)) throw std::domain_error("invert_monotone: non-finite evaluation");
    return v;
  };

  double f0 = value(0.0);
  if (f0 >= target) return 0.0;

  double hi = problem.bracket_hi > 0.0 ? problem.bracket_hi : 1.0;
  double fhi = value(hi);
  while (fhi < target) {
    hi *= 2.0;
    if (hi > 0x1p60)
      throw std::runtime_error("invert_monotone: bracket expansion exceeded 2^60");
    fhi = value(hi);
  }

  double lo = 0.0;
  double t = hi / 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    double ft = value(t);
    if (std::abs(ft - target) <= tol) return t;
    if (ft < target)
      lo = t;
    else
      hi = t;

    double next = std::numeric_limits<double>::quiet_NaN();
    if (problem.derivative) {
      double d = problem.derivative(t);
      if (std::isfinite(d) && d != 0.0) next = t - (ft - target) / d;
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * std::max(1.0, hi)) return 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

double solve_power_polynomial(double qstar, double eta_shift, double gamma,
                              double rho_const, double rhs_norm) {
  if (!(qstar > 1.0) || !(gamma > 0.0) || !(rho_const > 0.0) ||
      !std::isfinite(eta_shift) || !std::isfinite(rhs_norm))
    throw std::invalid_argument("solve_power_polynomial: bad input");

  const double a = qstar * eta_shift / (gamma * rho_const);
  const double b = qstar / (rho_const * rho_const);
  const double c = qstar * rhs_norm / (gamma * rho_const * rho_const);

  if (std::abs(qstar - 2.0) <= 1e-12) return solve_depressed_cubic(a + b, -c);

  const double k_hi = 2.0 * qstar - 1.0;
  const double k_lo = qstar - 1.0;
  const bool integral = std::abs(qstar - std::round(qstar)) <= 1e-9;

  MonotoneRootProblem prob;
  if (integral) {
    const int ih = static_cast<int>(std::lround(k_hi));
    const int il = static_cast<int>(std::lround(k_lo));
    std::vector<double> coef(static_cast<std::size_t>(ih) + 1, 0.0);
    coef[static_cast<std::size_t>(ih)] = 1.0;
    coef[static_cast<std::size_t>(il)] += a;
    coef[1] += b;
    Polynomial poly(std::move(coef));
    prob.function = [poly](double s) { return poly.eval(s); };
    prob.derivative = [poly](double s) { return poly.deriv(s); };
  } else {
    prob.function = [=](double s) {
      return std::pow(s, k_hi) + a * std::pow(s, k_lo) + b * s;
    };
    prob.derivative = [=](double s) {
      return k_hi * std::pow(s, k_hi - 1.0) + a * k_lo * std::pow(s, k_lo - 1.0) + b;
    };
  }
  prob.target = c;
  prob.bracket_hi = std::max(1.0, rhs_norm);
  return invert_monotone(prob);
}

Matrix spd_solve(const Matrix& A, const Matrix& B) {
  if (A.rows() != A.cols() || A.rows() != B.rows())
    throw std::invalid_argument("spd_solve: dimension mismatch");
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("spd_solve: matrix is not SPD");
  return llt.solve(B);
}

}  // namespace prospect
