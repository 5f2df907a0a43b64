#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace prospect {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Real polynomial, coefficients in ascending degree order.
struct Polynomial {
  std::vector<double> coeffs;

  explicit Polynomial(std::vector<double> c);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double s) const;
  double deriv(double s) const;
};

/// Root problem for a function with a single upward crossing of `target`
/// on [0,+inf[. `derivative` may be null (bisection-only refinement).
struct MonotoneRootProblem {
  std::function<double(double)> function;
  std::function<double(double)> derivative;  // optional
  double target = 0.0;
  double bracket_hi = 1.0;
};

// Unique positive root of s^3 + p*s + q_const (gate conditions of the
// calling prox guarantee existence). Cardano closed form, Newton polished.
double solve_depressed_cubic(double p, double q_const);

// Smallest t >= 0 with psi(t) = target; bracket expanded by doubling.
double invert_monotone(const MonotoneRootProblem& problem);

// Positive root of s^{2q*-1} + (q* eta_shift/(g rho)) s^{q*-1}
//   + (q*/rho^2) s - q* rhs_norm/(g rho^2) = 0.
// q* = 2 goes through Cardano, otherwise bracketed Newton.
double solve_power_polynomial(double qstar, double eta_shift, double gamma,
                              double rho_const, double rhs_norm);

// A^{-1} B via Cholesky. Throws if A is not SPD.
Matrix spd_solve(const Matrix& A, const Matrix& B);

}  // namespace prospect
