#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "optpot/config.hpp"
#include "optpot/control.hpp"
#include "optpot/diagnostics.hpp"
#include "optpot/elliptic.hpp"
#include "optpot/errors.hpp"
#include "optpot/io.hpp"
#include "optpot/oracle.hpp"
#include "optpot/semilinear.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace optpot;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kNotConverged = 2;

json describe(const RunConfig& cfg) {
  json law = {{"kind", to_string(cfg.law.kind)}, {"alpha", cfg.law.alpha}, {"beta", cfg.law.beta},
              {"k", cfg.law.k},                 {"p", cfg.law.p},         {"offset", cfg.law.offset}};
  return {{"grid", {{"kind", cfg.grid.kind == GridKind::Radial ? "radial" : "disc"}, {"n", cfg.grid.n}}},
          {"law", law},
          {"cost", to_string(cfg.cost.kind)},
          {"rhs", cfg.rhs.kind}};
}

class Writer {
 public:
  Writer(fs::path dir, bool pgm) : dir_(std::move(dir)), pgm_(pgm) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string());
  }

  void field(const std::string& name, const Field& f, json& report) {
    write_field_csv(dir_ / (name + ".csv"), f);
    if (pgm_) {
      const PgmScale s = write_field_pgm(dir_ / (name + ".pgm"), f);
      report["pgm"][name] = {{"min", s.min}, {"max", s.max}};
    }
  }

  void report(const json& r) { write_text(dir_ / "report.json", r.dump(2) + "\n"); }

 private:
  fs::path dir_;
  bool pgm_;
};

fs::path output_dir(const RunConfig& cfg, const std::string& out) { return out.empty() ? fs::path(cfg.output.dir) : fs::path(out); }

int cmd_state(const RunConfig& cfg, const std::string& out) {
  const GridPtr grid = make_grid(cfg);
  const Field f = make_field(cfg.rhs, grid, cfg.base_dir);
  const Field m = make_initial_potential(cfg, grid);
  Writer w(output_dir(cfg, out), cfg.output.emit_pgm);
  json report = describe(cfg);
  report["command"] = "state";
  report["solver_tol"] = cfg.opt.solver_tol;
  try {
    const StateSolution s = solve_state(grid, m, f, cfg.opt.solver_tol);
    report["iterations"] = s.report.iterations;
    report["residual_norm"] = s.report.residual_norm;
    report["u_center"] = s.u[grid->center_node()];
    const Norms n = field_norms(s.u);
    report["l1_u"] = n.l1;
    report["linf_u"] = n.linf;
    w.field("m", m, report);
    w.field("u", s.u, report);
    w.report(report);
  } catch (const NonConvergence& e) {
    report["error"] = e.what();
    w.field("m", m, report);
    w.report(report);
    std::cerr << "optpot: " << e.what() << "\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_semilinear(const RunConfig& cfg, const std::string& out) {
  const GridPtr grid = make_grid(cfg);
  const Field f = make_field(cfg.rhs, grid, cfg.base_dir);
  const MonotoneGraph graph = make_graph(cfg);
  Writer w(output_dir(cfg, out), cfg.output.emit_pgm);
  json report = describe(cfg);
  report["command"] = "semilinear";
  report["graph"] = cfg.semilinear.graph.kind;
  report["tol"] = cfg.semilinear.tol;
  const SemilinearSolution s = solve_semilinear(grid, graph, f, make_semilinear_options(cfg));
  report["energy"] = s.energy;
  report["sweeps"] = s.sweeps;
  report["admm_iterations"] = s.admm_iterations;
  report["selection_violation"] = s.selection_violation;
  const BvDiagnostic bv = bv_diagnostic(*grid, graph, s, f);
  report["tv_w"] = bv.tv_w;
  report["tv_f"] = bv.tv_f;
  report["bv_ratio"] = bv.ratio;
  w.field("u", s.u, report);
  w.field("w", s.w, report);
  if (cfg.semilinear.graph.kind == "auxiliary") {
    Field m(grid);
    for (std::size_t i : grid->interior_nodes()) m[i] = h_eval(cfg.law, s.u[i] * s.u[i]);
    report["l1_m"] = field_norms(m).l1;
    w.field("m", m, report);
  }
  w.report(report);
  return kOk;
}

int cmd_optimize(const RunConfig& cfg, const std::string& out) {
  const GridPtr grid = make_grid(cfg);
  const Field f = make_field(cfg.rhs, grid, cfg.base_dir);
  const CostIntegrand j = make_cost(cfg, grid, f);
  const Field m0 = make_initial_potential(cfg, grid);
  Writer w(output_dir(cfg, out), cfg.output.emit_pgm);
  json report = describe(cfg);
  report["command"] = "optimize";
  report["opt"] = {{"tol", cfg.opt.tol},
                   {"max_iter", cfg.opt.max_iter},
                   {"eps0", cfg.opt.eps0},
                   {"backtrack", cfg.opt.backtrack},
                   {"solver_tol", cfg.opt.solver_tol},
                   {"paper_sign_third_example", cfg.opt.paper_sign_third_example}};
  const OptimizeReport r = optimize(grid, cfg.law, j, f, m0, cfg.opt);
  report["cost_history"] = r.cost_history;
  report["iterations"] = r.iterations;
  report["optimality_residual"] = r.optimality_residual;
  report["l1_m"] = r.l1_m;
  report["tv_m"] = r.tv_m;
  report["bangbang_fraction"] = r.bangbang_fraction;
  report["converged"] = r.converged;
  report["stop_reason"] = r.stop_reason;
  w.field("m", r.m, report);
  w.field("u", r.u, report);
  w.field("z", r.z, report);
  w.report(report);
  return r.converged ? kOk : kNotConverged;
}

int cmd_oracle1(double s0) {
  const RadialOptimal sol = example1_solution(s0);
  const json j = {{"s0", sol.s0},
                  {"a", sol.a},
                  {"ring_weight", sol.ring_weight},
                  {"bulk_density", sol.bulk_density},
                  {"total_mass", sol.total_mass}};
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_suite(std::uint64_t seed, int trials) {
  const DiagnosticsReport r = run_property_suite(seed, trials);
  json j = {{"seed", seed},
            {"trials", r.trials},
            {"comparison_ok", r.comparison_ok},
            {"contraction_ok", r.contraction_ok},
            {"symmetry_ok", r.symmetry_ok},
            {"fenchel_ok", r.fenchel_ok},
            {"all_ok", r.all_ok()},
            {"worst_contraction", {{"l1", r.l1}, {"l2", r.l2}, {"linf", r.linf}, {"tv", r.tv}}}};
  if (!r.counterexample.empty()) j["counterexample"] = json::parse(r.counterexample);
  std::cout << j.dump(2) << "\n";
  return r.all_ok() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal potentials for -Delta u + m u = f on the unit disc"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out;
  std::uint64_t seed = 42;
  int trials = 50;
  double s0 = 0.1;

  auto add_run = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out, "Output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "Random seed (unused by deterministic solves)");
    return sub;
  };
  CLI::App* state = add_run("state", "Solve the state equation for the initial potential");
  CLI::App* semilinear = add_run("semilinear", "Solve the semilinear problem -Delta u + g(u) = f");
  CLI::App* opt = add_run("optimize", "Run the projected gradient optimizer");
  CLI::App* oracle = app.add_subcommand("oracle1", "Analytic optimum of the radial tracking problem");
  oracle->add_option("--s0", s0, "Tracking level in (0, 1/4)");
  oracle->add_option("--config", config_path, "Ignored");
  CLI::App* suite = app.add_subcommand("suite", "Randomized property checks");
  suite->add_option("--seed", seed, "Random seed");
  suite->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  suite->add_option("--config", config_path, "Ignored");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  try {
    if (oracle->parsed()) return cmd_oracle1(s0);
    if (suite->parsed()) return cmd_suite(seed, trials);
    const RunConfig cfg = load_config(config_path);
    if (state->parsed()) return cmd_state(cfg, out);
    if (semilinear->parsed()) return cmd_semilinear(cfg, out);
    if (opt->parsed()) return cmd_optimize(cfg, out);
  } catch (const NonConvergence& e) {
    std::cerr << "optpot: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "optpot: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
