// ffrclone: optimal two-state probabilistic cloning at a fixed failure rate.
//
// Subcommands: solve, curve, frio, asymptotic, phase-scan, simulate, verify.
// Machine-readable output (JSON or CSV) goes to --output (default stdout);
// diagnostics go to stderr. Exit codes: 0 success, 2 domain/validation error,
// 3 internal-consistency failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "ffr/asymptotic.hpp"
#include "ffr/errors.hpp"
#include "ffr/frio.hpp"
#include "ffr/neumark.hpp"
#include "ffr/oracle.hpp"
#include "ffr/parametric.hpp"
#include "ffr/problem.hpp"
#include "ffr/version.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitConsistency = 3;

struct RunConfig {
  std::string command;
  double s = 0.0;
  std::optional<double> eta1;
  std::optional<double> delta;
  int m = 1;
  std::string n = "inf";  // integer or "inf"
  std::optional<double> q;
  int points = 200;
  double step = 1e-3;
  long shots = 100000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int cases = 500;
  double tol = 1e-6;
  std::string grid = "default";
  std::string format = "json";
  std::string output = "-";
};

int parse_n(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "infinity")
    return ffr::CloningProblem::kInfiniteClones;
  size_t pos = 0;
  const int value = std::stoi(text, &pos);
  if (pos != text.size())
    throw ffr::domain_error("--n must be a positive integer or 'inf'");
  return value;
}

ffr::CloningProblem problem_from(const RunConfig& cfg, bool allow_infinite) {
  if (cfg.eta1.has_value() == cfg.delta.has_value())
    throw ffr::domain_error("exactly one of --eta1/--delta must be given");
  const int n = parse_n(cfg.n);
  if (n == ffr::CloningProblem::kInfiniteClones && !allow_infinite)
    throw ffr::domain_error("--n inf is only valid for asymptotic/phase-scan/frio");
  if (cfg.eta1)
    return ffr::make_problem(cfg.s, *cfg.eta1, n, cfg.m);
  return ffr::make_problem_delta(cfg.s, *cfg.delta, n, cfg.m);
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* regime_name(ffr::SolutionRegime r) {
  switch (r) {
    case ffr::SolutionRegime::kTangent: return "tangent";
    case ffr::SolutionRegime::kSegment: return "segment";
    case ffr::SolutionRegime::kPerfect: return "perfect";
  }
  return "?";
}

const char* regime_name(ffr::FrioRegime r) {
  return r == ffr::FrioRegime::kPovm ? "povm" : "projective";
}

const char* regime_name(ffr::AsymptoticRegime r) {
  return r == ffr::AsymptoticRegime::kVertexTangent ? "vertex-tangent" : "segment-top";
}

json config_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["s"] = cfg.s;
  if (cfg.eta1) j["eta1"] = *cfg.eta1;
  if (cfg.delta) j["delta"] = *cfg.delta;
  j["m"] = cfg.m;
  j["n"] = cfg.n;
  if (cfg.q) j["q"] = *cfg.q;
  if (cfg.command == "curve" || cfg.command == "frio" || cfg.command == "asymptotic")
    j["points"] = cfg.points;
  if (cfg.command == "phase-scan") j["step"] = cfg.step;
  if (cfg.command == "simulate") {
    j["shots"] = cfg.shots;
    j["seed"] = cfg.seed;
  }
  if (cfg.command == "verify") {
    j["grid"] = cfg.grid;
    j["cases"] = cfg.cases;
    j["seed"] = cfg.seed;
    j["tol"] = cfg.tol;
  }
  j["format"] = cfg.format;
  j["output"] = cfg.output;
  return j;
}

json point_json(const ffr::SolutionPoint& pt) {
  json j;
  j["Q"] = pt.Q;
  j["phi"] = pt.phi;
  j["zeta_min"] = pt.zeta_min;
  j["fidelity"] = pt.fidelity;
  j["q1"] = pt.q1_star;
  j["q2"] = pt.q2_star;
  j["u"] = pt.u_star;
  j["v"] = pt.v_star;
  j["s_prime"] = pt.s_prime;
  j["regime"] = regime_name(pt.regime);
  return j;
}

void write_point_csv_row(std::ostream& os, const ffr::SolutionPoint& pt) {
  os << fmt17(pt.Q) << ',' << fmt17(pt.phi) << ',' << fmt17(pt.zeta_min) << ','
     << fmt17(pt.fidelity) << ',' << fmt17(pt.q1_star) << ',' << fmt17(pt.q2_star)
     << ',' << fmt17(pt.s_prime) << ',' << regime_name(pt.regime) << '\n';
}

constexpr const char* kPointCsvHeader = "Q,phi,zeta_min,fidelity,q1,q2,s_prime,regime";

struct Report {
  json body;          // JSON form
  std::string csv;    // CSV form (empty if the command is JSON-only)
  int exit_code = kExitOk;
};

Report run_solve(const RunConfig& cfg) {
  const auto problem = problem_from(cfg, false);
  if (!cfg.q) throw ffr::domain_error("solve: --q is required");
  const auto pt = ffr::solve_at_Q(problem, *cfg.q);
  Report rep;
  rep.body["results"] = point_json(pt);
  std::ostringstream os;
  os << kPointCsvHeader << '\n';
  write_point_csv_row(os, pt);
  rep.csv = os.str();
  return rep;
}

Report run_curve(const RunConfig& cfg) {
  const auto problem = problem_from(cfg, false);
  const auto curve = ffr::tradeoff_curve(problem, cfg.points);
  Report rep;
  rep.body["results"]["q_pc"] = curve.q_pc;
  rep.body["results"]["q_ud"] = curve.q_ud;
  rep.body["results"]["points"] = json::array();
  std::ostringstream os;
  os << kPointCsvHeader << '\n';
  for (const auto& pt : curve.points) {
    rep.body["results"]["points"].push_back(point_json(pt));
    write_point_csv_row(os, pt);
  }
  rep.csv = os.str();
  return rep;
}

Report run_frio(const RunConfig& cfg) {
  const auto problem = problem_from(cfg, true);
  Report rep;
  const double q_ud = ffr::q_unambiguous(problem);
  rep.body["results"]["q_0"] = ffr::q_zero(problem);
  rep.body["results"]["q_th"] = ffr::q_threshold(problem);
  rep.body["results"]["q_ud"] = q_ud;
  rep.body["results"]["q_1"] = ffr::q_one(problem);
  rep.body["results"]["povm_only"] = ffr::povm_only(problem);
  rep.body["results"]["points"] = json::array();
  std::ostringstream os;
  os << "Q,p_tilde_s,regime\n";
  const auto add = [&](double q) {
    const auto f = ffr::frio_success(problem, q);
    json p;
    p["Q"] = q;
    p["p_tilde_s"] = f.p_tilde_s;
    p["regime"] = regime_name(f.regime);
    rep.body["results"]["points"].push_back(p);
    os << fmt17(q) << ',' << fmt17(f.p_tilde_s) << ',' << regime_name(f.regime)
       << '\n';
  };
  if (cfg.q) {
    add(*cfg.q);
  } else {
    for (int i = 0; i < cfg.points; ++i) add(q_ud * i / (cfg.points - 1));
  }
  rep.csv = os.str();
  return rep;
}

constexpr const char* kAsymCsvHeader = "Q,regime,zeta_min,fidelity,p_tilde_s,gap";

Report run_asymptotic(const RunConfig& cfg) {
  const auto problem = problem_from(cfg, true);
  if (!problem.infinite_clones())
    throw ffr::domain_error("asymptotic: requires --n inf");
  Report rep;
  const double q_ud = ffr::q_unambiguous(problem);
  rep.body["results"]["q_th"] = ffr::q_threshold(problem);
  rep.body["results"]["q_ud"] = q_ud;
  rep.body["results"]["points"] = json::array();
  std::ostringstream os;
  os << kAsymCsvHeader << '\n';
  for (int i = 0; i < cfg.points; ++i) {
    const double q = q_ud * i / (cfg.points - 1);
    const auto sol = ffr::asymptotic_solution(problem, q);
    const auto f = ffr::frio_success(problem, q);
    json p;
    p["Q"] = q;
    p["regime"] = regime_name(sol.regime);
    p["zeta_min"] = sol.zeta_min;
    p["fidelity"] = sol.fidelity;
    p["p_tilde_s"] = f.p_tilde_s;
    rep.body["results"]["points"].push_back(p);
    os << fmt17(q) << ',' << regime_name(sol.regime) << ',' << fmt17(sol.zeta_min)
       << ',' << fmt17(sol.fidelity) << ',' << fmt17(f.p_tilde_s) << ",nan\n";
  }
  rep.csv = os.str();
  return rep;
}

Report run_phase_scan(const RunConfig& cfg) {
  const auto problem = problem_from(cfg, true);
  const auto scan = ffr::phase_transition_scan(problem, cfg.step);
  Report rep;
  auto& res = rep.body["results"];
  res["unbalanced"] = scan.unbalanced;
  res["q_th"] = scan.q_th;
  res["q_ud"] = scan.q_ud;
  res["transition_detected"] = scan.transition_detected;
  res["detected_q"] = scan.detected_q;
  res["gap_estimate"] = scan.gap_estimate;
  res["noise_estimate"] = scan.noise_estimate;
  res["samples"] = json::array();
  std::ostringstream os;
  os << kAsymCsvHeader << '\n';
  for (const auto& s : scan.samples) {
    json j;
    j["Q"] = s.q;
    j["step"] = s.step;
    j["d2_left"] = s.d2_left;
    j["d2_right"] = s.d2_right;
    j["gap"] = s.gap;
    res["samples"].push_back(j);
    const auto f = ffr::frio_success(problem, s.q);
    double zeta, fid;
    if (problem.infinite_clones()) {
      const auto sol = ffr::asymptotic_solution(problem, s.q);
      zeta = sol.zeta_min;
      fid = sol.fidelity;
    } else {
      const auto sol = ffr::solve_at_Q(problem, s.q);
      zeta = sol.zeta_min;
      fid = sol.fidelity;
    }
    os << fmt17(s.q) << ',' << regime_name(f.regime) << ',' << fmt17(zeta) << ','
       << fmt17(fid) << ',' << fmt17(f.p_tilde_s) << ',' << fmt17(s.gap) << '\n';
  }
  rep.csv = os.str();
  return rep;
}

Report run_simulate(const RunConfig& cfg) {
  const auto problem = problem_from(cfg, false);
  if (!cfg.q) throw ffr::domain_error("simulate: --q is required");
  if (!cfg.seed_given) throw ffr::domain_error("simulate: --seed is required");
  const auto pt = ffr::solve_at_Q(problem, *cfg.q);
  const auto realization = ffr::build_realization(problem, pt);
  const auto mc = ffr::monte_carlo(realization, problem, cfg.shots, cfg.seed);
  Report rep;
  auto& res = rep.body["results"];
  res["analytic"] = point_json(pt);
  res["realization"]["theta"] = realization.theta;
  res["realization"]["theta_prime"] = realization.theta_prime;
  res["realization"]["omega"] = realization.omega;
  res["realization"]["gram_residual"] = realization.gram_residual;
  res["realization"]["isometry"] = json::array();
  for (int row = 0; row < 4; ++row)
    res["realization"]["isometry"].push_back(
        {realization.isometry(row, 0), realization.isometry(row, 1)});
  res["observed"]["shots"] = mc.shots;
  res["observed"]["seed"] = mc.seed;
  res["observed"]["Q"] = mc.observed_q;
  res["observed"]["Q_err"] = mc.observed_q_err;
  res["observed"]["fidelity"] = mc.observed_f;
  res["observed"]["fidelity_err"] = mc.observed_f_err;
  res["observed"]["q1"] = mc.q1_hat;
  res["observed"]["q1_err"] = mc.q1_err;
  res["observed"]["q2"] = mc.q2_hat;
  res["observed"]["q2_err"] = mc.q2_err;
  res["observed"]["failures"] = mc.failures;
  res["observed"]["draws_1"] = mc.draws_1;
  res["observed"]["draws_2"] = mc.draws_2;
  return rep;
}

Report run_verify(const RunConfig& cfg) {
  if (cfg.grid != "default")
    throw ffr::domain_error("verify: unknown --grid (only 'default' is defined)");
  std::mt19937_64 rng(cfg.seed);
  const auto uniform = [&rng](double a, double b) {
    return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  const int n_choices[4] = {2, 3, 5, 10};

  Report rep;
  std::ostringstream os;
  os << "s,delta,n,Q,zeta_parametric,zeta_oracle,abs_diff\n";
  double max_diff = 0.0;
  json worst;
  int done = 0;
  while (done < cfg.cases) {
    const double s = uniform(0.1, 0.95);
    const double delta = (done % 20 == 0) ? 0.0 : uniform(0.01, 0.9);
    const int n = n_choices[rng() % 4];
    const auto problem = ffr::make_problem_delta(s, delta, n);
    const double q_pc = ffr::q_perfect_cloning(problem);
    if (q_pc <= 1e-6) continue;
    const double q = uniform(0.0, 1.0) * q_pc * 0.999;
    const auto pt = ffr::solve_at_Q(problem, q);
    const auto oracle = ffr::brute_force_zeta_min(problem, q);
    const double diff = std::abs(pt.zeta_min - oracle.zeta_min);
    os << fmt17(s) << ',' << fmt17(delta) << ',' << n << ',' << fmt17(q) << ','
       << fmt17(pt.zeta_min) << ',' << fmt17(oracle.zeta_min) << ',' << fmt17(diff)
       << '\n';
    if (diff > max_diff) {
      max_diff = diff;
      worst = {{"s", s}, {"delta", delta}, {"n", n}, {"Q", q}};
    }
    ++done;
  }
  rep.body["results"]["cases"] = cfg.cases;
  rep.body["results"]["max_abs_diff"] = max_diff;
  rep.body["results"]["tolerance"] = cfg.tol;
  rep.body["results"]["worst_case"] = worst;
  rep.body["results"]["pass"] = max_diff <= cfg.tol;
  rep.csv = os.str();
  if (max_diff > cfg.tol) {
    std::cerr << "verify: max |zeta_parametric - zeta_oracle| = " << max_diff
              << " exceeds tolerance " << cfg.tol << "\n";
    rep.exit_code = kExitConsistency;
  } else {
    std::cerr << "verify: " << cfg.cases << " cases, max deviation " << max_diff
              << " (tolerance " << cfg.tol << ")\n";
  }
  return rep;
}

Report dispatch(const RunConfig& cfg) {
  if (cfg.command == "solve") return run_solve(cfg);
  if (cfg.command == "curve") return run_curve(cfg);
  if (cfg.command == "frio") return run_frio(cfg);
  if (cfg.command == "asymptotic") return run_asymptotic(cfg);
  if (cfg.command == "phase-scan") return run_phase_scan(cfg);
  if (cfg.command == "simulate") return run_simulate(cfg);
  if (cfg.command == "verify") return run_verify(cfg);
  throw ffr::domain_error("unknown command: " + cfg.command);
}

int emit(const RunConfig& cfg, Report rep) {
  std::string text;
  if (cfg.format == "json") {
    json out;
    out["version"] = ffr::kVersion;
    out["config"] = config_json(cfg);
    out["results"] = rep.body["results"];
    text = out.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    if (rep.csv.empty())
      throw ffr::domain_error(cfg.command + ": csv output is not defined");
    text = rep.csv;
  } else {
    throw ffr::domain_error("--format must be json or csv");
  }

  std::string path = cfg.output;
  if (path != "-" && !path.empty() && path.front() != '/') {
    if (const char* dir = std::getenv("FFRCLONE_OUTPUT_DIR"))
      path = std::string(dir) + "/" + path;
  }
  if (path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(path);
    if (!out) throw ffr::domain_error("cannot open output file: " + path);
    out << text;
  }
  return rep.exit_code;
}

void load_config(const std::string& file, RunConfig& cfg) {
  std::ifstream in(file);
  if (!in) throw ffr::domain_error("cannot open config file: " + file);
  json j = json::parse(in);
  const json& c = j.contains("config") ? j["config"] : j;
  cfg.command = c.at("command").get<std::string>();
  cfg.s = c.at("s").get<double>();
  if (c.contains("eta1")) cfg.eta1 = c["eta1"].get<double>();
  if (c.contains("delta")) cfg.delta = c["delta"].get<double>();
  cfg.m = c.value("m", 1);
  cfg.n = c.value("n", std::string("inf"));
  if (c.contains("q")) cfg.q = c["q"].get<double>();
  cfg.points = c.value("points", 200);
  cfg.step = c.value("step", 1e-3);
  cfg.shots = c.value("shots", 100000L);
  if (c.contains("seed")) {
    cfg.seed = c["seed"].get<std::uint64_t>();
    cfg.seed_given = true;
  }
  cfg.cases = c.value("cases", 500);
  cfg.tol = c.value("tol", 1e-6);
  cfg.grid = c.value("grid", std::string("default"));
  cfg.format = c.value("format", std::string("json"));
  cfg.output = c.value("output", std::string("-"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal two-state probabilistic cloning at a fixed failure rate"};
  app.set_version_flag("--version", ffr::kVersion);

  RunConfig cfg;
  std::string config_file;
  app.add_option("--config", config_file,
                 "re-run from a previous JSON report (its resolved config)");

  const auto add_problem_opts = [&cfg](CLI::App* sub, bool need_s = true) {
    auto* s = sub->add_option("--s", cfg.s, "overlap of the two input states");
    if (need_s) s->required();
    sub->add_option("--eta1", cfg.eta1, "prior of state 1");
    sub->add_option("--delta", cfg.delta, "prior gap eta2 - eta1");
    sub->add_option("--m", cfg.m, "input copies (default 1)");
    sub->add_option("--n", cfg.n, "clone count, or 'inf'");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--output", cfg.output,
                    "output path, '-' for stdout; relative paths resolve under "
                    "FFRCLONE_OUTPUT_DIR");
  };

  auto* solve = app.add_subcommand("solve", "optimal cloner at one failure rate");
  add_problem_opts(solve);
  solve->add_option("--q", cfg.q, "failure rate Q");

  auto* curve = app.add_subcommand("curve", "fidelity tradeoff curve F(Q)");
  add_problem_opts(curve);
  curve->add_option("--points", cfg.points, "samples on the optimal branch");

  auto* frio = app.add_subcommand("frio", "discrimination success-probability table");
  add_problem_opts(frio);
  frio->add_option("--q", cfg.q, "single inconclusive rate (else a grid)");
  frio->add_option("--points", cfg.points, "grid size over [0, Q_UD]");

  auto* asym = app.add_subcommand("asymptotic", "many-clone limit over [0, Q_UD]");
  add_problem_opts(asym);
  asym->add_option("--points", cfg.points, "grid size");

  auto* scan = app.add_subcommand("phase-scan",
                                  "second-derivative discontinuity probe at Q_th");
  add_problem_opts(scan);
  scan->add_option("--step", cfg.step, "finite-difference step");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo validation of the cloner");
  add_problem_opts(sim);
  sim->add_option("--q", cfg.q, "failure rate Q");
  sim->add_option("--shots", cfg.shots, "number of samples");
  sim->add_option("--seed", cfg.seed, "RNG seed (required)");

  auto* verify = app.add_subcommand("verify", "parametric-vs-oracle sweep");
  verify->add_option("--grid", cfg.grid, "sweep grid name (default)");
  verify->add_option("--cases", cfg.cases, "number of random cases");
  verify->add_option("--seed", cfg.seed, "sweep RNG seed");
  verify->add_option("--tol", cfg.tol, "max allowed |zeta - zeta_oracle|");
  verify->add_option("--format", cfg.format, "json or csv");
  verify->add_option("--output", cfg.output, "output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  try {
    if (!config_file.empty()) {
      load_config(config_file, cfg);
    } else {
      for (auto* sub : {solve, curve, frio, asym, scan, sim, verify})
        if (sub->parsed()) cfg.command = sub->get_name();
      if (cfg.command.empty()) {
        std::cerr << app.help();
        return kExitDomain;
      }
      cfg.seed_given = sim->count("--seed") > 0 || verify->count("--seed") > 0;
      if (cfg.command == "verify" && !cfg.seed_given) {
        cfg.seed = 20240817u;
        cfg.seed_given = true;
      }
    }
    return emit(cfg, dispatch(cfg));
  } catch (const ffr::consistency_error& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const ffr::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
