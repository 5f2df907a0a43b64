#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prospect/experiments.hpp"
#include "prospect/perspective.hpp"
#include "prospect/selftest.hpp"
#include "prospect/table.hpp"
#include "prospect/trex.hpp"

using json = nlohmann::json;
using namespace prospect;

namespace {

int log_level() {
  const char* e = std::getenv("PROSPECT_LOG");
  if (!e) return 0;
  std::string s(e);
  if (s == "info") return 1;
  if (s == "trace") return 2;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[prospect] " << msg << "\n";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const char* b = tok.data();
    double v = 0.0;
    auto [p, ec] = std::from_chars(b, b + tok.size(), v);
    if (ec != std::errc() || p != b + tok.size())
      throw std::invalid_argument("bad number in list: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

json vec_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CSV file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    try {
      row = parse_list(line);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(path + ": malformed CSV at line " +
                                  std::to_string(lineno));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument(path + ": ragged CSV at line " +
                                  std::to_string(lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument(path + ": empty CSV");
  Matrix M(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return M;
}

// Flat JSON config; flags given on the command line win. Unknown keys reject.
struct ConfigKey {
  std::string name;
  const CLI::Option* opt;  // null: always apply
  std::function<void(const json&)> apply;
};

void apply_config_file(const std::string& path, const std::vector<ConfigKey>& keys) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config parse error: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (auto& [key, value] : cfg.items()) {
    const ConfigKey* hit = nullptr;
    for (const ConfigKey& k : keys)
      if (k.name == key) {
        hit = &k;
        break;
      }
    if (!hit) throw std::invalid_argument("unknown config key: " + key);
    if (hit->opt && hit->opt->count() > 0) continue;
    hit->apply(value);
  }
}

struct SolverFlags {
  double gamma = 70.0;
  double mu = 1.95;
  double tol = 1e-10;
  long max_iter = 100000;
  CLI::Option *o_gamma = nullptr, *o_mu = nullptr, *o_tol = nullptr, *o_max = nullptr;

  void attach(CLI::App* cmd) {
    o_gamma = cmd->add_option("--gamma", gamma, "DR prox scale");
    o_mu = cmd->add_option("--mu", mu, "DR relaxation in ]0,2[");
    o_tol = cmd->add_option("--tol", tol, "DR stopping tolerance");
    o_max = cmd->add_option("--max-iter", max_iter, "DR iteration cap");
  }
  DRConfig config() const { return {gamma, mu, nullptr, tol, max_iter, 1}; }
  void keys(std::vector<ConfigKey>& out) {
    out.push_back({"gamma", o_gamma, [this](const json& v) { gamma = v.get<double>(); }});
    out.push_back({"mu", o_mu, [this](const json& v) { mu = v.get<double>(); }});
    out.push_back({"tol", o_tol, [this](const json& v) { tol = v.get<double>(); }});
    out.push_back({"max_iter", o_max, [this](const json& v) { max_iter = v.get<long>(); }});
  }
  json echo() const {
    return {{"gamma", gamma}, {"mu", mu}, {"tol", tol}, {"max_iter", max_iter}};
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

// ---------------------------------------------------------------- prox-eval

int cmd_prox_eval(const std::string& kind, double gamma, const std::string& eta_s,
                  const std::string& y_s, double alpha, double q, double delta,
                  double rho, double epsilon, const std::string& v_s,
                  const std::string& base) {
  ProxStep step{gamma};
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  std::vector<double> etas = parse_list(eta_s);
  Vector y = to_vector(parse_list(y_s));
  Vector v = v_s.empty() ? Vector() : to_vector(parse_list(v_s));

  json echo = {{"kind", kind},   {"gamma", gamma}, {"eta", etas},
               {"y", vec_json(y)}, {"alpha", alpha}, {"q", q},
               {"delta", delta}, {"rho", rho},     {"epsilon", epsilon},
               {"base", base}};
  if (v.size()) echo["v"] = vec_json(v);

  json out = {{"input", echo}};
  if (kind == "separable") {
    if (etas.size() != static_cast<std::size_t>(y.size()))
      throw std::invalid_argument("separable: eta and y need equal lengths");
    ScalarPerspectiveProx scalar;
    if (base == "huber") {
      HuberSpec spec{rho};
      scalar = [spec](ProxStep st, double e, double yy) {
        return prox_perspective_huber(spec, st, e, yy);
      };
    } else if (base == "vapnik") {
      VapnikSpec spec{epsilon};
      scalar = [spec](ProxStep st, double e, double yy) {
        return prox_perspective_vapnik(spec, st, e, yy);
      };
    } else {
      throw std::invalid_argument("separable: base must be huber or vapnik");
    }
    auto [p, qq] = prox_separable_perspective(scalar, step, to_vector(etas), y);
    out["eta"] = vec_json(p);
    out["y"] = vec_json(qq);
  } else {
    if (etas.size() != 1) throw std::invalid_argument("eta must be a single number");
    ScaledPair pair{etas[0], y};
    ScaledPair res;
    if (kind == "sqrt") {
      res = prox_perspective_sqrt(step, pair);
    } else if (kind == "power") {
      PowerSpec spec{q, alpha, delta, v};
      res = prox_perspective_power(spec, step, pair);
    } else if (kind == "quadratic") {
      res = prox_perspective_quadratic(alpha, delta, v, step, pair);
    } else if (kind == "radial") {
      PowerSpec ps{q, alpha, delta, v};
      const double qs = ps.qstar(), rc = ps.rho_const();
      RadialSpec spec;
      spec.phi0_conj = [=](double s) { return rc * std::pow(s, qs) / qs; };
      spec.phi0_conj_deriv = [=](double s) { return rc * std::pow(s, qs - 1.0); };
      spec.delta = delta;
      spec.v = v;
      res = prox_perspective_radial(spec, step, pair);
    } else if (kind == "distance-ball") {
      res = prox_perspective_distance_ball(
          [alpha](double s) { return alpha * s * s / 4.0; },
          [alpha](double s) { return alpha * s / 2.0; }, step, pair);
    } else if (kind == "cone-orthant") {
      PairProjector orthant = [](const ScaledPair& p) {
        ScaledPair o{std::max(0.0, p.eta), p.y};
        for (Eigen::Index i = 0; i < o.y.size(); ++i) o.y[i] = std::max(0.0, o.y[i]);
        return o;
      };
      res = prox_perspective_sqrt_cone(orthant, step, pair);
    } else if (kind == "huber") {
      auto [e, yy] = prox_perspective_huber(HuberSpec{rho}, step, pair.eta, y[0]);
      res = {e, Vector::Constant(1, yy)};
    } else if (kind == "vapnik") {
      auto [e, yy] = prox_perspective_vapnik(VapnikSpec{epsilon}, step, pair.eta, y[0]);
      res = {e, Vector::Constant(1, yy)};
    } else {
      throw std::invalid_argument("unknown kind: " + kind);
    }
    out["eta"] = res.eta;
    out["y"] = vec_json(res.y);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perspective-function proximal toolbox"};
  app.require_subcommand(1);

  // prox-eval
  auto* pe = app.add_subcommand("prox-eval", "evaluate one perspective prox");
  std::string pe_kind, pe_eta = "0", pe_y = "0", pe_v, pe_base = "huber";
  double pe_gamma = 1.0, pe_alpha = 2.0, pe_q = 2.0, pe_delta = 0.0, pe_rho = 1.0,
         pe_eps = 1.0;
  pe->add_option("--kind", pe_kind,
                 "radial|sqrt|power|quadratic|distance-ball|cone-orthant|huber|vapnik|"
                 "separable")
      ->required();
  pe->add_option("--gamma", pe_gamma, "prox scale");
  pe->add_option("--eta", pe_eta, "scale input (list for separable)");
  pe->add_option("--y", pe_y, "vector input, comma separated");
  pe->add_option("--alpha", pe_alpha, "power/quadratic scale");
  pe->add_option("--q", pe_q, "power exponent");
  pe->add_option("--delta", pe_delta, "constant offset");
  pe->add_option("--rho", pe_rho, "huber threshold");
  pe->add_option("--epsilon", pe_eps, "vapnik insensitivity");
  pe->add_option("--v", pe_v, "linear shift vector");
  pe->add_option("--base", pe_base, "separable base: huber|vapnik");

  // trex
  auto* tx = app.add_subcommand("trex", "solve a (generalized) TREX instance");
  std::string tx_config, tx_xcsv, tx_zcsv, tx_out = "trex_result";
  long tx_n = 0, tx_p = 0, tx_m = 0;
  double tx_sigma = 0.5, tx_corr = 0.0, tx_alpha = 0.5, tx_q = 2.0;
  std::uint64_t tx_seed = 1;
  int tx_parallel = 1;
  SolverFlags tx_solver;
  tx->add_option("--config", tx_config, "flat JSON config; flags override");
  auto* o_xcsv = tx->add_option("--x-csv", tx_xcsv, "design matrix, headerless CSV");
  auto* o_zcsv = tx->add_option("--z-csv", tx_zcsv, "response, one column CSV");
  auto* o_n = tx->add_option("--n", tx_n, "generated model: samples");
  auto* o_p = tx->add_option("--p", tx_p, "generated model: dimension");
  auto* o_m = tx->add_option("--m", tx_m, "generated model: support size");
  auto* o_sigma = tx->add_option("--sigma", tx_sigma, "generated model: noise scale");
  auto* o_corr = tx->add_option("--corr", tx_corr, "generated model: equicorrelation");
  auto* o_alpha = tx->add_option("--alpha", tx_alpha, "TREX scale");
  auto* o_q = tx->add_option("--q", tx_q, "residual exponent, > 1");
  auto* o_seed = tx->add_option("--seed", tx_seed, "model seed");
  auto* o_par = tx->add_option("--parallel", tx_parallel, "worker count");
  auto* o_out = tx->add_option("--out", tx_out, "output prefix");
  tx_solver.attach(tx);

  // phase-transition
  auto* pt = app.add_subcommand("phase-transition", "support-recovery experiment");
  std::string pt_config, pt_theta, pt_qlist, pt_agrid, pt_out = "phase_transition.csv",
                          pt_json;
  PhaseTransitionConfig pt_cfg;
  SolverFlags pt_solver;
  pt_solver.gamma = pt_cfg.solver.gamma;
  pt_solver.tol = pt_cfg.solver.tol;
  pt_solver.max_iter = pt_cfg.solver.max_iter;
  pt->add_option("--config", pt_config, "flat JSON config; flags override");
  auto* pt_o_p = pt->add_option("--p", pt_cfg.p, "dimension");
  auto* pt_o_reps = pt->add_option("--reps", pt_cfg.repetitions, "repetitions per cell");
  auto* pt_o_sigma = pt->add_option("--sigma", pt_cfg.sigma, "noise scale");
  auto* pt_o_corr = pt->add_option("--corr", pt_cfg.corr, "equicorrelation");
  auto* pt_o_zt = pt->add_option("--zero-threshold", pt_cfg.zero_threshold,
                                 "support threshold");
  auto* pt_o_seed = pt->add_option("--seed", pt_cfg.base_seed, "base seed");
  auto* pt_o_par = pt->add_option("--parallel", pt_cfg.workers, "worker count");
  auto* pt_o_tg = pt->add_option("--theta-grid", pt_theta, "comma list");
  auto* pt_o_ql = pt->add_option("--q-list", pt_qlist, "comma list");
  auto* pt_o_ag = pt->add_option("--alpha-grid", pt_agrid, "comma list");
  auto* pt_o_out = pt->add_option("--out", pt_out, "output CSV path");
  pt->add_option("--json", pt_json, "optional nested JSON output path");
  pt_solver.attach(pt);

  // scaling
  auto* sc = app.add_subcommand("scaling", "DR vs DR-Sel timing benchmark");
  std::string sc_config, sc_dims, sc_out = "scaling.csv";
  ScalingConfig sc_cfg;
  SolverFlags sc_solver;
  sc->add_option("--config", sc_config, "flat JSON config; flags override");
  auto* sc_o_dims = sc->add_option("--dims", sc_dims, "comma list of dimensions");
  auto* sc_o_n = sc->add_option("--n", sc_cfg.n, "samples");
  auto* sc_o_m = sc->add_option("--m", sc_cfg.m, "support size");
  auto* sc_o_reps = sc->add_option("--reps", sc_cfg.repetitions, "repetitions");
  auto* sc_o_k0 = sc->add_option("--k0", sc_cfg.k0, "DR-Sel probe length");
  auto* sc_o_alpha = sc->add_option("--alpha", sc_cfg.alpha, "TREX scale");
  auto* sc_o_q = sc->add_option("--q", sc_cfg.q, "residual exponent");
  auto* sc_o_sigma = sc->add_option("--sigma", sc_cfg.sigma, "noise scale");
  auto* sc_o_corr = sc->add_option("--corr", sc_cfg.corr, "equicorrelation");
  auto* sc_o_seed = sc->add_option("--seed", sc_cfg.base_seed, "base seed");
  auto* sc_o_out = sc->add_option("--out", sc_out, "output CSV path");
  sc_solver.attach(sc);

  // prox-selftest
  auto* st = app.add_subcommand("prox-selftest", "run the prox property suites");
  long st_draws = 10000;
  std::uint64_t st_seed = 42;
  st->add_option("--draws", st_draws, "draws per kind");
  st->add_option("--seed", st_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (pe->parsed())
      return cmd_prox_eval(pe_kind, pe_gamma, pe_eta, pe_y, pe_alpha, pe_q, pe_delta,
                           pe_rho, pe_eps, pe_v, pe_base);

    if (tx->parsed()) {
      if (!tx_config.empty()) {
        std::vector<ConfigKey> keys;
        keys.push_back({"x_csv", o_xcsv, [&](const json& v) { tx_xcsv = v.get<std::string>(); }});
        keys.push_back({"z_csv", o_zcsv, [&](const json& v) { tx_zcsv = v.get<std::string>(); }});
        keys.push_back({"n", o_n, [&](const json& v) { tx_n = v.get<long>(); }});
        keys.push_back({"p", o_p, [&](const json& v) { tx_p = v.get<long>(); }});
        keys.push_back({"m", o_m, [&](const json& v) { tx_m = v.get<long>(); }});
        keys.push_back({"sigma", o_sigma, [&](const json& v) { tx_sigma = v.get<double>(); }});
        keys.push_back({"corr", o_corr, [&](const json& v) { tx_corr = v.get<double>(); }});
        keys.push_back({"alpha", o_alpha, [&](const json& v) { tx_alpha = v.get<double>(); }});
        keys.push_back({"q", o_q, [&](const json& v) { tx_q = v.get<double>(); }});
        keys.push_back({"seed", o_seed, [&](const json& v) { tx_seed = v.get<std::uint64_t>(); }});
        keys.push_back({"parallel", o_par, [&](const json& v) { tx_parallel = v.get<int>(); }});
        keys.push_back({"out", o_out, [&](const json& v) { tx_out = v.get<std::string>(); }});
        tx_solver.keys(keys);
        apply_config_file(tx_config, keys);
      }

      TrexProblem problem;
      json model_echo;
      if (!tx_xcsv.empty() || !tx_zcsv.empty()) {
        if (tx_xcsv.empty() || tx_zcsv.empty())
          throw std::invalid_argument("need both --x-csv and --z-csv");
        problem.X = read_matrix_csv(tx_xcsv);
        Matrix zm = read_matrix_csv(tx_zcsv);
        if (zm.cols() != 1)
          throw std::invalid_argument(tx_zcsv + ": response must be one column");
        problem.z = zm.col(0);
        model_echo = {{"x_csv", tx_xcsv}, {"z_csv", tx_zcsv}};
      } else {
        if (tx_n < 1 || tx_p < 1)
          throw std::invalid_argument("need --x-csv/--z-csv or --n/--p");
        LinearModelSpec spec;
        spec.n = tx_n;
        spec.p = tx_p;
        spec.m = tx_m > 0 ? tx_m : std::min<long>(tx_p, support_size_for_p(tx_p));
        spec.sigma = tx_sigma;
        spec.corr = tx_corr;
        spec.seed = tx_seed;
        LinearModel model = gen_linear_model(spec);
        problem.X = std::move(model.X);
        problem.z = std::move(model.z);
        model_echo = {{"n", spec.n},         {"p", spec.p},       {"m", spec.m},
                      {"sigma", spec.sigma}, {"corr", spec.corr}, {"seed", spec.seed}};
      }
      problem.alpha = tx_alpha;
      problem.q = tx_q;
      validate(problem);

      log_info("trex: solving " + std::to_string(2 * problem.X.cols()) +
               " subproblems with " + std::to_string(tx_parallel) + " workers");
      TrexResult result = solve_trex_full(problem, tx_solver.config(), tx_parallel);

      json out;
      // worker count deliberately left out of the echo: outputs are
      // byte-identical for any --parallel value
      out["config"] = {{"model", model_echo},
                       {"alpha", tx_alpha},
                       {"q", tx_q},
                       {"seed", tx_seed},
                       {"solver", tx_solver.echo()}};
      out["winner"] = {{"j", result.winner.j}, {"s", result.winner.s}};
      out["objective"] = result.objective;
      out["winner_converged"] = result.winner_converged;
      out["any_converged"] = result.any_converged;
      out["b_hat"] = vec_json(result.b_hat);
      out["per_subproblem"] = json::array();
      for (const SubproblemReport& r : result.per_subproblem)
        out["per_subproblem"].push_back({{"j", r.id.j},
                                         {"s", r.id.s},
                                         {"objective", r.objective},
                                         {"converged", r.converged},
                                         {"iterations", r.iterations}});
      write_file(tx_out + ".json", out.dump(2) + "\n");
      std::ostringstream bs;
      for (Eigen::Index i = 0; i < result.b_hat.size(); ++i)
        bs << format_double(result.b_hat[i]) << "\n";
      write_file(tx_out + "_b.csv", bs.str());
      std::cout << out.dump(2) << "\n";
      return result.winner_converged ? 0 : 3;
    }

    if (pt->parsed()) {
      if (!pt_config.empty()) {
        std::vector<ConfigKey> keys;
        keys.push_back({"p", pt_o_p, [&](const json& v) { pt_cfg.p = v.get<long>(); }});
        keys.push_back({"reps", pt_o_reps, [&](const json& v) { pt_cfg.repetitions = v.get<long>(); }});
        keys.push_back({"sigma", pt_o_sigma, [&](const json& v) { pt_cfg.sigma = v.get<double>(); }});
        keys.push_back({"corr", pt_o_corr, [&](const json& v) { pt_cfg.corr = v.get<double>(); }});
        keys.push_back({"zero_threshold", pt_o_zt, [&](const json& v) { pt_cfg.zero_threshold = v.get<double>(); }});
        keys.push_back({"seed", pt_o_seed, [&](const json& v) { pt_cfg.base_seed = v.get<std::uint64_t>(); }});
        keys.push_back({"parallel", pt_o_par, [&](const json& v) { pt_cfg.workers = v.get<int>(); }});
        keys.push_back({"theta_grid", pt_o_tg, [&](const json& v) { pt_cfg.theta_grid = v.get<std::vector<double>>(); }});
        keys.push_back({"q_list", pt_o_ql, [&](const json& v) { pt_cfg.q_list = v.get<std::vector<double>>(); }});
        keys.push_back({"alpha_grid", pt_o_ag, [&](const json& v) { pt_cfg.alpha_grid = v.get<std::vector<double>>(); }});
        keys.push_back({"out", pt_o_out, [&](const json& v) { pt_out = v.get<std::string>(); }});
        pt_solver.keys(keys);
        apply_config_file(pt_config, keys);
      }
      if (!pt_theta.empty()) pt_cfg.theta_grid = parse_list(pt_theta);
      if (!pt_qlist.empty()) pt_cfg.q_list = parse_list(pt_qlist);
      if (!pt_agrid.empty()) pt_cfg.alpha_grid = parse_list(pt_agrid);
      pt_cfg.solver = pt_solver.config();

      log_info("phase-transition: " + std::to_string(pt_cfg.theta_grid.size()) +
               " thetas x " + std::to_string(pt_cfg.repetitions) + " reps");
      ExperimentTable table = run_phase_transition(pt_cfg);
      std::ostringstream cs;
      table.write_csv(cs);
      write_file(pt_out, cs.str());
      if (!pt_json.empty()) write_file(pt_json, table.to_json().dump(2) + "\n");
      std::cout << "wrote " << pt_out << " (" << table.rows().size() << " rows)\n";
      return 0;
    }

    if (sc->parsed()) {
      if (!sc_config.empty()) {
        std::vector<ConfigKey> keys;
        keys.push_back({"dims", sc_o_dims, [&](const json& v) {
                          sc_cfg.dims = v.get<std::vector<long>>();
                        }});
        keys.push_back({"n", sc_o_n, [&](const json& v) { sc_cfg.n = v.get<long>(); }});
        keys.push_back({"m", sc_o_m, [&](const json& v) { sc_cfg.m = v.get<long>(); }});
        keys.push_back({"reps", sc_o_reps, [&](const json& v) { sc_cfg.repetitions = v.get<long>(); }});
        keys.push_back({"k0", sc_o_k0, [&](const json& v) { sc_cfg.k0 = v.get<long>(); }});
        keys.push_back({"alpha", sc_o_alpha, [&](const json& v) { sc_cfg.alpha = v.get<double>(); }});
        keys.push_back({"q", sc_o_q, [&](const json& v) { sc_cfg.q = v.get<double>(); }});
        keys.push_back({"sigma", sc_o_sigma, [&](const json& v) { sc_cfg.sigma = v.get<double>(); }});
        keys.push_back({"corr", sc_o_corr, [&](const json& v) { sc_cfg.corr = v.get<double>(); }});
        keys.push_back({"seed", sc_o_seed, [&](const json& v) { sc_cfg.base_seed = v.get<std::uint64_t>(); }});
        keys.push_back({"out", sc_o_out, [&](const json& v) { sc_out = v.get<std::string>(); }});
        sc_solver.keys(keys);
        apply_config_file(sc_config, keys);
      }
      if (!sc_dims.empty()) {
        sc_cfg.dims.clear();
        for (double d : parse_list(sc_dims)) sc_cfg.dims.push_back(std::lround(d));
      }
      sc_cfg.solver = sc_solver.config();

      log_info("scaling: " + std::to_string(sc_cfg.dims.size()) + " dimensions x " +
               std::to_string(sc_cfg.repetitions) + " reps");
      ExperimentTable table = run_scaling_benchmark(sc_cfg);
      std::ostringstream cs;
      table.write_csv(cs);
      write_file(sc_out, cs.str());
      std::cout << "wrote " << sc_out << " (" << table.rows().size() << " rows)\n";
      return 0;
    }

    if (st->parsed()) {
      auto reports = run_prox_selftest(st_draws, st_seed);
      json out = json::array();
      bool all_pass = true;
      for (const SelftestReport& r : reports) {
        all_pass = all_pass && r.pass;
        json j = {{"suite", r.suite},
                  {"draws", r.draws},
                  {"max_violation", r.max_violation},
                  {"pass", r.pass}};
        if (!r.pass) j["worst_input"] = r.worst_input;
        out.push_back(std::move(j));
      }
      std::cout << out.dump(2) << "\n";
      return all_pass ? 0 : 3;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
