#include "prospect/selftest.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "prospect/prox_core.hpp"
#include "prospect/rng.hpp"

namespace prospect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Inst {
  std::string params;
  int n = 2;  // flat dimension, (eta, y) packed as one vector
  std::function<Vector(const Vector&, double)> prox;
  std::function<double(const Vector&)> conj_y;  // null: no gate form
  double conj_domain_radius = 0.0;  // dom phi* radius for the scalar kinds
};

Vector pack(const ScaledPair& p) {
  Vector v(p.y.size() + 1);
  v[0] = p.eta;
  v.tail(p.y.size()) = p.y;
  return v;
}

ScaledPair unpack(const Vector& v) { return {v[0], v.tail(v.size() - 1)}; }

Vector rand_vec(Rng& rng, int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

std::string describe(double gamma, const Vector& x, const std::string& params) {
  std::ostringstream os;
  os << "gamma=" << gamma << " x=[";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << "] " << params;
  return os.str();
}

Inst make_instance(const std::string& kind, int d, Rng& rng) {
  Inst inst;
  inst.n = d + 1;
  std::ostringstream ps;

  if (kind == "radial" || kind == "power") {
    PowerSpec spec;
    const double qs_menu[3] = {1.5, 2.0, 3.0};
    spec.q = qs_menu[rng.next_u64() % 3];
    spec.alpha = rng.uniform(0.5, 4.0);
    spec.delta = rng.uniform(-1.0, 1.0);
    spec.v = rand_vec(rng, d, -1.0, 1.0);
    ps << kind << " q=" << spec.q << " alpha=" << spec.alpha << " delta=" << spec.delta;
    const double qs = spec.qstar();
    const double rho = spec.rho_const();
    Vector v = spec.v;
    const double delta = spec.delta;
    inst.conj_y = [=](const Vector& u) {
      return rho * std::pow((u - v).norm(), qs) / qs - delta;
    };
    if (kind == "power") {
      inst.prox = [spec](const Vector& x, double g) {
        return pack(prox_perspective_power(spec, ProxStep{g}, unpack(x)));
      };
    } else {
      RadialSpec rs;
      rs.phi0_conj = [=](double s) { return rho * std::pow(s, qs) / qs; };
      rs.phi0_conj_deriv = [=](double s) { return rho * std::pow(s, qs - 1.0); };
      rs.delta = spec.delta;
      rs.v = spec.v;
      inst.prox = [rs](const Vector& x, double g) {
        return pack(prox_perspective_radial(rs, ProxStep{g}, unpack(x)));
      };
    }
  } else if (kind == "sqrt") {
    ps << "sqrt";
    inst.prox = [](const Vector& x, double g) {
      return pack(prox_perspective_sqrt(ProxStep{g}, unpack(x)));
    };
    // base phi(s) = -sqrt(1-s^2) on [-1,1]; phi* = sqrt(1+s^2)
    inst.conj_y = [](const Vector& u) { return std::sqrt(1.0 + u.squaredNorm()); };
  } else if (kind == "quadratic") {
    const double alpha = rng.uniform(0.5, 4.0);
    const double delta = rng.uniform(-1.0, 1.0);
    Vector v = rand_vec(rng, d, -1.0, 1.0);
    ps << "quadratic alpha=" << alpha << " delta=" << delta;
    inst.prox = [=](const Vector& x, double g) {
      return pack(prox_perspective_quadratic(alpha, delta, v, ProxStep{g}, unpack(x)));
    };
    inst.conj_y = [=](const Vector& u) {
      return alpha * (u - v).squaredNorm() / 4.0 - delta;
    };
  } else if (kind == "distance_ball") {
    const double alpha = rng.uniform(0.5, 4.0);
    ps << "distance_ball alpha=" << alpha;
    auto conj = [alpha](double s) { return alpha * s * s / 4.0; };
    auto dconj = [alpha](double s) { return alpha * s / 2.0; };
    inst.prox = [=](const Vector& x, double g) {
      return pack(prox_perspective_distance_ball(conj, dconj, ProxStep{g}, unpack(x)));
    };
    inst.conj_y = [=](const Vector& u) { return u.norm() + conj(u.norm()); };
  } else if (kind == "cone_orthant") {
    ps << "cone_orthant";
    PairProjector orthant = [](const ScaledPair& p) {
      ScaledPair out{std::max(0.0, p.eta), p.y};
      for (Eigen::Index i = 0; i < out.y.size(); ++i) out.y[i] = std::max(0.0, out.y[i]);
      return out;
    };
    inst.prox = [orthant](const Vector& x, double g) {
      return pack(prox_perspective_sqrt_cone(orthant, ProxStep{g}, unpack(x)));
    };
  } else if (kind == "huber") {
    HuberSpec spec{rng.uniform(0.3, 3.0)};
    ps << "huber rho=" << spec.rho;
    inst.n = 2;
    inst.prox = [spec](const Vector& x, double g) {
      auto [e, y] = prox_perspective_huber(spec, ProxStep{g}, x[0], x[1]);
      return Vector{{e, y}};
    };
    inst.conj_y = [spec](const Vector& u) {
      return std::abs(u[0]) <= spec.rho ? u[0] * u[0] / 2.0 : kInf;
    };
    inst.conj_domain_radius = spec.rho;
  } else if (kind == "vapnik") {
    VapnikSpec spec{rng.uniform(0.3, 3.0)};
    ps << "vapnik epsilon=" << spec.epsilon;
    inst.n = 2;
    inst.prox = [spec](const Vector& x, double g) {
      auto [e, y] = prox_perspective_vapnik(spec, ProxStep{g}, x[0], x[1]);
      return Vector{{e, y}};
    };
    inst.conj_y = [spec](const Vector& u) {
      return std::abs(u[0]) <= 1.0 ? spec.epsilon * std::abs(u[0]) : kInf;
    };
    inst.conj_domain_radius = 1.0;
  } else {  // separable (componentwise Huber)
    HuberSpec spec{rng.uniform(0.3, 3.0)};
    const int dd = std::max(2, d);
    ps << "separable huber rho=" << spec.rho << " d=" << dd;
    inst.n = 2 * dd;
    inst.prox = [spec, dd](const Vector& x, double g) {
      ScalarPerspectiveProx scalar = [&spec](ProxStep st, double e, double y) {
        return prox_perspective_huber(spec, st, e, y);
      };
      auto [p, q] =
          prox_separable_perspective(scalar, ProxStep{g}, x.head(dd), x.tail(dd));
      Vector out(2 * dd);
      out.head(dd) = p;
      out.tail(dd) = q;
      return out;
    };
  }
  inst.params = ps.str();
  return inst;
}

const char* kKinds[] = {"radial",       "sqrt",  "power",  "quadratic", "distance_ball",
                        "cone_orthant", "huber", "vapnik", "separable"};

// Projection of x onto gamma*C, C = {(mu,u): mu + phi*(u) <= 0}, by a
// shrinking grid over the second coordinate (the distance is convex in it).
Vector project_support_set_2d(const Vector& x, double gamma,
                              const std::function<double(double)>& conj,
                              double u_max) {
  double center = 0.0, window = gamma * u_max;
  double best_b = 0.0, best_a = 0.0, best_d = kInf;
  for (int pass = 0; pass < 20; ++pass) {
    for (int i = 0; i <= 40; ++i) {
      double b = center - window + 2.0 * window * i / 40.0;
      b = std::clamp(b, -gamma * u_max, gamma * u_max);
      const double cap = -gamma * conj(b / gamma);
      const double a = std::min(x[0], cap);
      const double dist =
          (x[0] - a) * (x[0] - a) + (x[1] - b) * (x[1] - b);
      if (dist < best_d) {
        best_d = dist;
        best_a = a;
        best_b = b;
      }
    }
    center = best_b;
    window /= 5.0;
    if (window < 1e-10 * std::max(1.0, gamma * u_max)) break;
  }
  return Vector{{best_a, best_b}};
}

}  // namespace

std::vector<SelftestReport> run_prox_selftest(long draws_per_kind, std::uint64_t seed) {
  std::vector<SelftestReport> reports;

  // firm nonexpansiveness
  for (int k = 0; k < 9; ++k) {
    Rng rng(seed, 0xf1a3, k);
    SelftestReport rep;
    rep.suite = std::string("firm_nonexpansiveness/") + kKinds[k];
    rep.draws = draws_per_kind;
    for (long i = 0; i < draws_per_kind; ++i) {
      const int d = 1 + static_cast<int>(rng.next_u64() % 3);
      Inst inst = make_instance(kKinds[k], d, rng);
      const double g = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      Vector u = rand_vec(rng, inst.n, -6.0, 6.0);
      Vector v = rand_vec(rng, inst.n, -6.0, 6.0);
      Vector pu = inst.prox(u, g), pv = inst.prox(v, g);
      const double viol = (pu - pv).squaredNorm() - (pu - pv).dot(u - v);
      if (viol > rep.max_violation) {
        rep.max_violation = viol;
        rep.worst_input = describe(g, u, inst.params);
      }
    }
    rep.pass = rep.max_violation <= 1e-10;
    reports.push_back(std::move(rep));
  }

  // threshold-gate equivalence; violation counts case disagreements away
  // from the gate boundary
  for (int k = 0; k < 9; ++k) {
    if (std::string(kKinds[k]) == "cone_orthant" || std::string(kKinds[k]) == "separable")
      continue;
    Rng rng(seed, 0x6a7e, k);
    SelftestReport rep;
    rep.suite = std::string("gate_equivalence/") + kKinds[k];
    rep.draws = draws_per_kind;
    for (long i = 0; i < draws_per_kind; ++i) {
      const int d = 1 + static_cast<int>(rng.next_u64() % 3);
      Inst inst = make_instance(kKinds[k], d, rng);
      const double g = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      Vector x = rand_vec(rng, inst.n, -6.0, 6.0);
      ScaledPair pair = unpack(x);
      const bool gate = threshold_gate(pair, ProxStep{g}, {inst.conj_y});
      const double conj = inst.conj_y(pair.y / g);
      if (std::isfinite(conj) &&
          std::abs(pair.eta + g * conj) <= 1e-9 * std::max(1.0, std::abs(pair.eta)))
        continue;  // boundary draw, both answers acceptable
      Vector px = inst.prox(x, g);
      const bool zero = px.isZero(0.0);
      if (gate != zero) {
        rep.max_violation += 1.0;
        if (rep.worst_input.empty()) rep.worst_input = describe(g, x, inst.params);
      }
    }
    rep.pass = rep.max_violation == 0.0;
    reports.push_back(std::move(rep));
  }

  // positive homogeneity
  for (int k = 0; k < 9; ++k) {
    Rng rng(seed, 0x40e0, k);
    SelftestReport rep;
    rep.suite = std::string("homogeneity/") + kKinds[k];
    rep.draws = draws_per_kind;
    for (long i = 0; i < draws_per_kind; ++i) {
      const int d = 1 + static_cast<int>(rng.next_u64() % 3);
      Inst inst = make_instance(kKinds[k], d, rng);
      const double g = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      Vector x = rand_vec(rng, inst.n, -6.0, 6.0);
      Vector base = inst.prox(x, g);
      for (double lam : {0.5, 2.0, 10.0}) {
        Vector scaled = inst.prox(lam * x, lam * g);
        const double err =
            (scaled - lam * base).norm() / std::max(1.0, lam * base.norm());
        if (err > rep.max_violation) {
          rep.max_violation = err;
          rep.worst_input = describe(g, x, inst.params);
        }
      }
    }
    rep.pass = rep.max_violation <= 1e-9;
    reports.push_back(std::move(rep));
  }

  // Moreau/projection identity on the scalar kinds
  for (const char* kind : {"huber", "vapnik"}) {
    Rng rng(seed, 0x3028, kind[0]);
    SelftestReport rep;
    rep.suite = std::string("moreau_identity/") + kind;
    rep.draws = draws_per_kind;
    for (long i = 0; i < draws_per_kind; ++i) {
      Inst inst = make_instance(kind, 1, rng);
      const double g = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      Vector x = rand_vec(rng, 2, -6.0, 6.0);
      Vector px = inst.prox(x, g);
      auto conj = [&](double s) { return inst.conj_y(Vector::Constant(1, s)); };
      Vector proj = project_support_set_2d(x, g, conj, inst.conj_domain_radius);
      const double resid = (px - (x - proj)).norm();
      if (resid > rep.max_violation) {
        rep.max_violation = resid;
        rep.worst_input = describe(g, x, inst.params);
      }
    }
    rep.pass = rep.max_violation <= 1e-6;
    reports.push_back(std::move(rep));
  }

  return reports;
}

}  // namespace prospect
