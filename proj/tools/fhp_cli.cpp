// Command-line front end: instance generation, the reduction pipeline,
// solver dispatch, studies, and artifact verification.
//
// Exit codes: 0 success, 2 input error, 3 convergence error, 4 invariant
// violation (including failed verify checks).

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fhp/fhp.hpp"

namespace {

using namespace fhp;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_convergence = 3;
constexpr int exit_invariant = 4;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void emit(const Report& report, const std::string& out_path) {
  if (out_path.empty()) {
    report.render(std::cout);
  } else {
    save_report(out_path, report);
    std::cerr << "wrote " << out_path << "\n";
  }
}

std::string labeling_string(const std::vector<std::int8_t>& labels) {
  std::string s;
  s.reserve(labels.size());
  for (std::int8_t v : labels) s += (v > 0 ? '+' : '-');
  return s;
}

struct SolveFlags {
  std::string in, out;
  std::uint64_t seed = 0;
  bool perturb = false;
  double tol_feas = fhp::tol_feas;
  double tol_mnp = fhp::tol_mnp;
  std::uint64_t budget = 0;
  double theta_lower = 0.0;
  double c_rh = 4.0;
  double alpha = 0.1;
  std::uint64_t trials = 64;
};

MinNormOptions mnp_of(const SolveFlags& f) {
  MinNormOptions m;
  m.feas_tol = f.tol_feas;
  m.gap_tol = f.tol_mnp;
  return m;
}

void add_common_solve_head(Report& rep, const char* solver, const SolveFlags& f,
                           const PointSet& ps) {
  rep.add("command", std::string("solve"));
  rep.add("solver", std::string(solver));
  rep.add("in", f.in);
  rep.add("seed", f.seed);
  rep.add("tol_feas", f.tol_feas);
  rep.add("tol_mnp", f.tol_mnp);
  rep.add("n", ps.size());
  rep.add("d", ps.dim());
  rep.add("scale", ps.scale());
}

void add_solve_result(Report& rep, const SolveResult& r, const PointSet& ps) {
  rep.add("margin", r.margin);
  rep.add("margin_raw", r.margin * ps.scale());
  if (r.best.witness) rep.add_vector("witness", r.best.witness->normal);
  rep.add("labeling", labeling_string(r.best.labels));
  rep.add("labelings_explored", r.labelings_explored);
  rep.add("samples_drawn", r.samples_drawn);
  rep.add("certified", r.certified);
}

int run_solve(const std::string& solver, const SolveFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const PointSet ps = load_point_set(f.in);
  Report rep;
  if (solver == "bfs") {
    EnumerateOptions opt{.seed = f.seed, .perturb = f.perturb, .mnp = mnp_of(f)};
    const SolveResult r = solve_exact_bfs(ps, opt);
    add_common_solve_head(rep, "bfs", f, ps);
    rep.add("perturb", f.perturb);
    add_solve_result(rep, r, ps);
  } else if (solver == "net") {
    EpsNetOptions opt{.mnp = mnp_of(f)};
    if (f.budget > 0) opt.max_net_points = f.budget;
    const SolveResult r = solve_eps_net(ps, opt);
    add_common_solve_head(rep, "net", f, ps);
    rep.add("budget", std::uint64_t(opt.max_net_points));
    add_solve_result(rep, r, ps);
  } else if (solver == "random") {
    SampleBudget budget = f.theta_lower > 0.0
                              ? SampleBudget::from_theta_lower(ps.size(), f.theta_lower,
                                                               f.seed, f.c_rh)
                              : SampleBudget::fixed(f.budget > 0 ? f.budget : 1024, f.seed);
    RandomHyperplaneOptions opt{.mnp = mnp_of(f)};
    const SolveResult r = solve_random_hyperplane(ps, budget, opt);
    add_common_solve_head(rep, "random", f, ps);
    rep.add("budget", budget.samples);
    rep.add("theta_lower", f.theta_lower);
    rep.add("c_rh", f.c_rh);
    add_solve_result(rep, r, ps);
  } else if (solver == "approx") {
    ApproxParams params{.alpha = f.alpha,
                        .trials = f.trials,
                        .seed = f.seed};
    const ApproxResult r = approx_solve(ps, params);
    add_common_solve_head(rep, "approx", f, ps);
    rep.add("alpha", f.alpha);
    rep.add("trials", f.trials);
    rep.add("m", r.m);
    rep.add("iterations", std::uint64_t(r.trace.iterations));
    rep.add("best_trial", r.best_trial);
    rep.add("margin_at_m", r.rows[r.best_trial].level_at_m);
    rep.add("margin_full", r.best.achieved_margin);
    rep.add_vector("witness", r.best.normal);
    for (const CoverageRow& row : r.rows) {
      std::ostringstream line;
      line << fmt17(row.w_prime_norm) << ' ' << fmt17(row.level_at_m);
      rep.add("trial_" + std::to_string(row.trial), line.str());
    }
  } else if (solver == "mmc") {
    EnumerateOptions inner{.mnp = mnp_of(f)};
    const AffineSeparation sep =
        solve_mmc(ps, bfs_inner_solver(inner), MmcOptions{.seed = f.seed});
    add_common_solve_head(rep, "mmc", f, ps);
    rep.add("margin", sep.margin);
    rep.add("margin_raw", sep.margin * ps.scale());
    rep.add_vector("witness", sep.normal);
    rep.add("offset", sep.offset);
    rep.add_vector("center", sep.center);
    rep.add("pair", std::to_string(sep.pair_i) + " " + std::to_string(sep.pair_j));
  } else {
    throw input_error("unknown solver: " + solver);
  }
  rep.add_volatile("walltime_ms", elapsed_ms(t0));
  emit(rep, f.out);
  return exit_ok;
}

int run_gen_gaussian(std::uint64_t n, std::uint64_t d, std::uint64_t seed,
                     const std::string& out, const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const PointSet ps = gen_gaussian(n, d, seed);
  save_point_set(out, ps);
  Report rep;
  rep.add("command", std::string("gen"));
  rep.add("kind", std::string("gaussian"));
  rep.add("n", n);
  rep.add("d", d);
  rep.add("seed", seed);
  rep.add("out", out);
  rep.add("scale", ps.scale());
  rep.add_volatile("walltime_ms", elapsed_ms(t0));
  emit(rep, report_path);
  return exit_ok;
}

int run_gen_circle(std::uint64_t n, const std::string& out, const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const PointSet ps = gen_circle(n);
  save_point_set(out, ps);
  Report rep;
  rep.add("command", std::string("gen"));
  rep.add("kind", std::string("circle"));
  rep.add("n", n);
  rep.add("out", out);
  rep.add_volatile("walltime_ms", elapsed_ms(t0));
  emit(rep, report_path);
  return exit_ok;
}

struct ReductionChecks {
  bool clause_count = false;
  bool occurrence_bound = false;
  bool sym_structure = false;
  bool norm_range = false;
  bool unit_vectors = false;
  bool expander_certificate = false;
};

ReductionChecks check_reduction(const SymFormula& psi, const PointSet& pts,
                                std::size_t m, int degree, double lambda2) {
  ReductionChecks c;
  c.clause_count = psi.clauses.size() == (static_cast<std::size_t>(degree) + 2) * m;
  c.occurrence_bound = psi.max_occurrence() <= 30;
  c.sym_structure = sym_structure_violation(psi).empty();
  const double lo = 1.0 / std::sqrt(12.0);
  c.norm_range = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double nr = norm(pts.point(i));
    if (nr < lo - 1e-12 || nr > 1.0 + 1e-12) c.norm_range = false;
  }
  const std::size_t dims = static_cast<std::size_t>(psi.num_vars());
  c.unit_vectors = pts.size() == psi.clauses.size() + dims;
  if (c.unit_vectors) {
    for (std::size_t j = 0; j < dims && c.unit_vectors; ++j) {
      auto x = pts.point(psi.clauses.size() + j);
      for (std::size_t k = 0; k < dims; ++k) {
        const double expect = (j == k) ? 1.0 / pts.scale() : 0.0;
        if (std::fabs(x[k] - expect) > 1e-15) c.unit_vectors = false;
      }
    }
  }
  c.expander_certificate = (static_cast<double>(degree) - lambda2) / 2.0 > degree / 5.0;
  return c;
}

int run_reduce(const std::string& cnf_path, std::uint64_t seed, const std::string& out,
               const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const CnfFormula phi = load_dimacs(cnf_path);
  const ReductionArtifacts art = reduce_3sat_to_fhp(phi, seed);

  save_point_set(out, art.points);
  const std::string sym_path = out + ".sym.cnf";
  const std::string pairs_path = out + ".pairs";
  {
    CnfFormula as_cnf;
    as_cnf.num_vars = art.sym.num_vars();
    as_cnf.clauses = art.sym.clauses;
    save_dimacs(sym_path, as_cnf, "symmetric formula; sidecar: " + pairs_path);
    std::ofstream pairs(pairs_path, std::ios::binary);
    if (!pairs) throw input_error("cannot open for writing: " + pairs_path);
    write_sym_sidecar(pairs, art.sym);
  }

  const auto checks = check_reduction(art.sym, art.points, phi.num_clauses(),
                                      art.expander.degree, art.expander.lambda2);
  Report rep;
  rep.add("command", std::string("reduce"));
  rep.add("cnf", cnf_path);
  rep.add("seed", seed);
  rep.add("out", out);
  rep.add("sym_out", sym_path);
  rep.add("pairs_out", pairs_path);
  rep.add("m", phi.num_clauses());
  rep.add("base_vars", phi.num_vars);
  rep.add("pair_vars", art.sym.pair_vars);
  rep.add("clause_count", art.sym.clauses.size());
  rep.add("occurrence_max", art.sym.max_occurrence());
  rep.add("expander_degree", art.expander.degree);
  rep.add("expander_lambda2", art.expander.lambda2);
  rep.add("expander_expansion_lb", art.expander.expansion_lb);
  rep.add("points_n", art.points.size());
  rep.add("points_d", art.points.dim());
  rep.add("scale", art.points.scale());
  rep.add("check_clause_count", checks.clause_count ? std::string("pass") : std::string("fail"));
  rep.add("check_occurrence_bound", checks.occurrence_bound ? std::string("pass") : std::string("fail"));
  rep.add("check_sym_structure", checks.sym_structure ? std::string("pass") : std::string("fail"));
  rep.add("check_norm_range", checks.norm_range ? std::string("pass") : std::string("fail"));
  rep.add("check_unit_vectors", checks.unit_vectors ? std::string("pass") : std::string("fail"));
  rep.add("check_expander_certificate", checks.expander_certificate ? std::string("pass") : std::string("fail"));
  rep.add_volatile("walltime_ms", elapsed_ms(t0));
  emit(rep, report_path);
  const bool all = checks.clause_count && checks.occurrence_bound && checks.sym_structure &&
                   checks.norm_range && checks.unit_vectors && checks.expander_certificate;
  return all ? exit_ok : exit_invariant;
}

int run_gap_demo(std::uint64_t n, const std::string& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const GapReport g = sdp_gap_demo(n);
  Report rep;
  rep.add("command", std::string("gap-demo"));
  rep.add("n", n);
  rep.add("sdp_feasible_value", g.sdp_feasible_value);
  rep.add("integral_theta", g.integral_theta);
  rep.add("ratio", g.ratio);
  rep.add_volatile("walltime_ms", elapsed_ms(t0));
  emit(rep, out);
  return exit_ok;
}

int run_study(std::uint64_t n, std::uint64_t d, std::uint64_t trials, std::uint64_t seed,
              double c_low, double c_high, const std::string& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const RandomModelReport r =
      random_margin_study(n, d, trials, seed, RandomModelOptions{c_low, c_high});
  Report rep;
  rep.add("command", std::string("study-random-margin"));
  rep.add("n", n);
  rep.add("d", d);
  rep.add("trials", trials);
  rep.add("seed", seed);
  rep.add("c_low", r.c_low);
  rep.add("c_high", r.c_high);
  rep.add("band_lo", r.band_lo);
  rep.add("band_hi", r.band_hi);
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    std::ostringstream line;
    line << fmt17(r.rows[k].lower_cert) << ' ' << fmt17(r.rows[k].upper_cert) << ' '
         << (r.rows[k].inside_band ? 1 : 0);
    rep.add("trial_" + std::to_string(k), line.str());
  }
  rep.add("inside_count", r.inside_count);
  rep.add("frequency_inside", r.frequency_inside);
  rep.add_volatile("walltime_ms", elapsed_ms(t0));
  emit(rep, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckList {
  int failures = 0;
  void report(const std::string& name, bool ok, const std::string& detail = {}) {
    std::cout << "check " << name << ": " << (ok ? std::string("pass") : std::string("fail"));
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

void verify_instance_checks(const PointSet& ps, CheckList& checks) {
  bool norms_ok = true;
  double max_norm = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double nr = norm(ps.point(i));
    max_norm = std::max(max_norm, nr);
    if (nr > 1.0 + 1e-9) norms_ok = false;
  }
  checks.report("norms_in_unit_ball", norms_ok, "max " + fmt17(max_norm));
  checks.report("scale_positive", ps.scale() > 0.0);
}

void verify_reduction_sidecars(const std::string& points_path, const PointSet& pts,
                               CheckList& checks) {
  const std::string sym_path = points_path + ".sym.cnf";
  const std::string pairs_path = points_path + ".pairs";
  if (!std::filesystem::exists(sym_path) || !std::filesystem::exists(pairs_path)) return;
  std::ifstream dimacs(sym_path), pairs(pairs_path);
  const SymFormula psi = read_sym(dimacs, pairs);
  const std::size_t m = static_cast<std::size_t>(psi.pair_vars);
  checks.report("sym_clause_count_16m", psi.clauses.size() == 16 * m,
                std::to_string(psi.clauses.size()) + " clauses, m=" + std::to_string(m));
  checks.report("sym_occurrence_bound", psi.max_occurrence() <= 30,
                "max " + std::to_string(psi.max_occurrence()));
  const std::string violation = sym_structure_violation(psi);
  checks.report("sym_negation_pairs", violation.empty(), violation);
  const PointSet rebuilt = points_from_sym(psi);
  checks.report("points_match_formula",
                rebuilt.size() == pts.size() && rebuilt.dim() == pts.dim() &&
                    rebuilt.data() == pts.data());
  double lambda2 = 0.0;
  bool expander_ok = false;
  if (!psi.expander_edges.empty()) {
    lambda2 = adjacency_lambda2(m, psi.expander_edges);
    expander_ok = (14.0 - lambda2) / 2.0 > 14.0 / 5.0;
  }
  checks.report("expander_certificate", expander_ok, "lambda2 " + fmt17(lambda2));
}

void verify_solve_report(const Report& rep, CheckList& checks) {
  const PointSet ps = load_point_set(rep.require("in"));
  const std::string& solver = rep.require("solver");
  const Vec witness = parse_vector(rep.require("witness"));
  checks.report("witness_unit_norm", is_unit(witness, 1e-12), fmt17(norm(witness)));
  // Margins are recomputed directly (not through margin_of) so a non-unit
  // witness still gets a full pass/fail listing instead of aborting.
  auto abs_margin = [&](const Vec& w) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ps.size(); ++i)
      m = std::min(m, std::fabs(dot(w, ps.point(i))));
    return m;
  };
  if (solver == "mmc") {
    const double offset = std::stod(rep.require("offset"));
    double margin = std::numeric_limits<double>::infinity();
    std::size_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double v = dot(witness, ps.point(i)) + offset;
      margin = std::min(margin, std::fabs(v));
      (v >= 0 ? pos : neg) += 1;
    }
    checks.report("witness_margin", fmt17(margin) == rep.require("margin"),
                  "recomputed " + fmt17(margin));
    checks.report("clusters_nonempty", pos > 0 && neg > 0);
  } else {
    const double margin = abs_margin(witness);
    const std::string& claimed =
        solver == "approx" ? rep.require("margin_full") : rep.require("margin");
    checks.report("witness_margin", fmt17(margin) == claimed, "recomputed " + fmt17(margin));
    if (const std::string* labeling = rep.find("labeling")) {
      const auto signs = signs_of(witness, ps);
      bool ok = labeling->size() == ps.size();
      for (std::size_t i = 0; ok && i < ps.size(); ++i)
        if (std::fabs(dot(witness, ps.point(i))) > fhp::tol_feas)
          ok = ((*labeling)[i] == '+') == (signs[i] > 0);
      checks.report("labeling_consistent", ok);
    }
  }
}

void verify_study_report(const Report& rep, CheckList& checks) {
  const double freq = std::stod(rep.require("frequency_inside"));
  checks.report("frequency_in_unit_interval", freq >= 0.0 && freq <= 1.0, fmt17(freq));
  const std::uint64_t trials = std::stoull(rep.require("trials"));
  std::uint64_t inside = 0;
  bool rows_ok = true;
  for (std::uint64_t k = 0; k < trials; ++k) {
    const std::string* row = rep.find("trial_" + std::to_string(k));
    if (!row) {
      rows_ok = false;
      break;
    }
    const Vec vals = parse_vector(*row);
    if (vals.size() != 3 || vals[0] > vals[1] + 1e-12) rows_ok = false;
    inside += vals.size() == 3 && vals[2] != 0.0 ? 1 : 0;
  }
  checks.report("trial_rows_consistent", rows_ok);
  checks.report("inside_count_matches", inside == std::stoull(rep.require("inside_count")));
}

void verify_gap_report(const Report& rep, CheckList& checks) {
  const double feasible = std::stod(rep.require("sdp_feasible_value"));
  const double theta = std::stod(rep.require("integral_theta"));
  const double ratio = std::stod(rep.require("ratio"));
  checks.report("sdp_feasible_value_half", feasible == 0.5);
  checks.report("ratio_consistent", std::fabs(ratio - feasible / (theta * theta)) <=
                                        1e-9 * std::max(1.0, ratio));
  const std::uint64_t n = std::stoull(rep.require("n"));
  const double expected = std::sin(M_PI / static_cast<double>(n));
  checks.report("integral_theta_matches_circle", std::fabs(theta - expected) <= 1e-9,
                "expected " + fmt17(expected));
}

int run_verify(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw input_error("cannot open: " + path);
  std::string first_line;
  std::getline(probe, first_line);
  probe.close();

  CheckList checks;
  if (first_line.rfind("fhp v1 ", 0) == 0) {
    const PointSet ps = load_point_set(path);
    verify_instance_checks(ps, checks);
    verify_reduction_sidecars(path, ps, checks);
  } else if (first_line == "fhp report v1") {
    const Report rep = load_report(path);
    const std::string& command = rep.require("command");
    if (command == "solve") {
      verify_solve_report(rep, checks);
    } else if (command == "study-random-margin") {
      verify_study_report(rep, checks);
    } else if (command == "gap-demo") {
      verify_gap_report(rep, checks);
    } else if (command == "reduce") {
      const PointSet pts = load_point_set(rep.require("out"));
      verify_instance_checks(pts, checks);
      verify_reduction_sidecars(rep.require("out"), pts, checks);
    } else if (command == "gen") {
      const PointSet ps = load_point_set(rep.require("out"));
      verify_instance_checks(ps, checks);
    } else {
      throw input_error("verify: unknown report command: " + command);
    }
  } else {
    throw input_error("verify: unrecognized artifact header: " + first_line);
  }
  std::cout << (checks.failures == 0 ? "verify: all checks passed"
                                     : "verify: " + std::to_string(checks.failures) +
                                           " check(s) failed")
            << "\n";
  return checks.failures == 0 ? exit_ok : exit_invariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Furthest-hyperplane solvers, instance generators, and certificate checkers"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  std::uint64_t gen_n = 20, gen_d = 2, gen_seed = 0;
  std::string gen_out, gen_report;
  auto* gaussian = gen->add_subcommand("gaussian", "isotropic Gaussian instance");
  gaussian->add_option("--n", gen_n, "point count")->required();
  gaussian->add_option("--d", gen_d, "dimension")->required();
  gaussian->add_option("--seed", gen_seed, "RNG seed");
  gaussian->add_option("--out", gen_out, "instance file")->required();
  gaussian->add_option("--report", gen_report, "report file (stdout when omitted)");
  auto* circle = gen->add_subcommand("circle", "equally spaced unit-circle points");
  circle->add_option("--n", gen_n, "point count")->required();
  circle->add_option("--out", gen_out, "instance file")->required();
  circle->add_option("--report", gen_report, "report file (stdout when omitted)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "3SAT(13) -> SYM(30) -> point-set pipeline");
  std::string reduce_cnf, reduce_out, reduce_report;
  std::uint64_t reduce_seed = 0;
  reduce->add_option("--cnf", reduce_cnf, "DIMACS input")->required();
  reduce->add_option("--seed", reduce_seed, "expander seed");
  reduce->add_option("--out", reduce_out, "points file (sidecars <out>.sym.cnf, <out>.pairs)")
      ->required();
  reduce->add_option("--report", reduce_report, "report file (stdout when omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "run a solver on an instance");
  solve->require_subcommand(1);
  SolveFlags sf;
  for (const char* name : {"bfs", "net", "random", "approx", "mmc"}) {
    auto* sub = solve->add_subcommand(name);
    sub->add_option("--in", sf.in, "instance file")->required();
    sub->add_option("--out", sf.out, "report file (stdout when omitted)");
    sub->add_option("--seed", sf.seed, "RNG seed");
    sub->add_option("--tol-feas", sf.tol_feas, "feasibility tolerance");
    sub->add_option("--tol-mnp", sf.tol_mnp, "min-norm duality-gap tolerance");
    if (std::string(name) == "bfs") sub->add_flag("--perturb", sf.perturb, "allow perturbation");
    if (std::string(name) == "net")
      sub->add_option("--budget", sf.budget, "net-point budget per guess");
    if (std::string(name) == "random") {
      sub->add_option("--budget", sf.budget, "sample budget (doubling mode)");
      sub->add_option("--theta-lower", sf.theta_lower, "margin lower bound (single pass)");
      sub->add_option("--c-rh", sf.c_rh, "sampling-law constant");
    }
    if (std::string(name) == "approx") {
      sub->add_option("--alpha", sf.alpha, "discard fraction knob");
      sub->add_option("--trials", sf.trials, "Gaussian combinations");
    }
  }

  // study
  auto* study = app.add_subcommand("study", "statistical studies");
  study->require_subcommand(1);
  auto* rm = study->add_subcommand("random-margin", "random-model margin sandwich");
  std::uint64_t rm_n = 20, rm_d = 10, rm_trials = 60, rm_seed = 0;
  double rm_c_low = random_model_c_low, rm_c_high = random_model_c_high;
  std::string rm_out;
  rm->add_option("--n", rm_n, "points per trial")->required();
  rm->add_option("--d", rm_d, "dimension")->required();
  rm->add_option("--trials", rm_trials, "trial count");
  rm->add_option("--seed", rm_seed, "RNG seed");
  rm->add_option("--c-low", rm_c_low, "lower band coefficient");
  rm->add_option("--c-high", rm_c_high, "upper band coefficient");
  rm->add_option("--out", rm_out, "report file (stdout when omitted)");

  // gap-demo
  auto* gap = app.add_subcommand("gap-demo", "relaxation vs integral optimum on circles");
  std::uint64_t gap_n = 8;
  std::string gap_out;
  gap->add_option("--n", gap_n, "circle size (even, >= 4)")->required();
  gap->add_option("--out", gap_out, "report file (stdout when omitted)");

  // verify
  auto* verify = app.add_subcommand("verify", "replay invariants of an artifact");
  std::string verify_in;
  verify->add_option("--in", verify_in, "instance or report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (gaussian->parsed()) return run_gen_gaussian(gen_n, gen_d, gen_seed, gen_out, gen_report);
    if (circle->parsed()) return run_gen_circle(gen_n, gen_out, gen_report);
    if (reduce->parsed()) return run_reduce(reduce_cnf, reduce_seed, reduce_out, reduce_report);
    if (solve->parsed())
      return run_solve(solve->get_subcommands().front()->get_name(), sf);
    if (rm->parsed())
      return run_study(rm_n, rm_d, rm_trials, rm_seed, rm_c_low, rm_c_high, rm_out);
    if (gap->parsed()) return run_gap_demo(gap_n, gap_out);
    if (verify->parsed()) return run_verify(verify_in);
  } catch (const convergence_error& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return exit_convergence;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return exit_invariant;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
