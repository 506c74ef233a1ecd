// Command-line driver: run, convergence, check-mesh, scenarios.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "tdgl/config.hpp"
#include "tdgl/convergence.hpp"
#include "tdgl/errors.hpp"
#include "tdgl/kernels.hpp"
#include "tdgl/output.hpp"
#include "tdgl/scenarios.hpp"

namespace fs = std::filesystem;
using namespace tdgl;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Options {
  std::string config_path;
  std::string scenario;
  std::string out;
  int threads = 0;
  bool strict_acute = false;
};

RunConfig resolve_config(const Options& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) {
    cfg = load_config_file(o.config_path);
  } else if (!o.scenario.empty()) {
    cfg = parse_config("scenario = " + o.scenario + "\n");
  } else {
    throw ConfigError("config", "pass --config <path> or --scenario <name>");
  }
  if (!o.out.empty()) cfg.output_directory = o.out;
  return cfg;
}

std::string snapshot_name(const fs::path& dir, int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%04d.vtk", k);
  return (dir / buf).string();
}

int cmd_run(const Options& o) {
  const RunConfig cfg = resolve_config(o);
  Problem p = build_problem(cfg, o.strict_acute ? AcutePolicy::RequireStrict : AcutePolicy::AllowWeak);
  if (p.weakly_acute_warning) std::cerr << "warning: mesh has right angles; the maximum bound relies on weak acuteness\n";
  const fs::path dir = cfg.output_directory;
  fs::create_directories(dir);
  write_text_file((dir / "config.used").string(), emit_config(cfg));

  Stepper stepper(p.disc, p.params);
  RunCallbacks cb;
  cb.snapshot_times = cfg.snapshots;
  int k = 0;
  cb.on_snapshot = [&](const SimulationState& s, double) {
    write_vtk_snapshot(snapshot_name(dir, k++), *p.disc, s.A, s.Psi, p.params.H.value, s.t);
  };
  std::cout << "scenario " << scenario_name(cfg.scenario) << ": " << p.disc->num_cells() << " cells, "
            << p.disc->num_nodes() << " vertices, " << p.disc->num_edge_dofs() << " edge dofs\n";

  SimulationState final_state;
  int status = 0;
  try {
    final_state = stepper.run(stepper.initialize(p.a0, p.psi0), cb);
  } catch (const RunAborted& e) {
    std::cerr << "error: " << e.what() << "\n";
    final_state = e.state();
    status = kExitSolver;
  }
  const auto rows = timeseries_rows(final_state.energy_history, cfg.series_every);
  if (!rows.empty()) write_timeseries_csv((dir / "timeseries.csv").string(), rows);
  write_vtk_snapshot((dir / "final.vtk").string(), *p.disc, final_state.A, final_state.Psi, p.params.H.value,
                     final_state.t);
  if (!final_state.energy_history.empty()) {
    const auto& last = final_state.energy_history.back();
    std::printf("t=%.6g steps=%d G=%.10g max|psi|=%.12f energy_increases=%d mbp_violations=%d\n", last.t,
                final_state.n, last.energy.total, last.max_psi, final_state.energy_increases,
                final_state.mbp_violations);
  }
  return status;
}

int cmd_convergence(const Options& o, const std::vector<int>& resolutions, bool relative) {
  Options opt = o;
  if (opt.config_path.empty() && opt.scenario.empty()) opt.scenario = "manufactured";
  const RunConfig cfg = resolve_config(opt);
  const ConvergenceTable table = run_convergence_study(cfg, resolutions);
  const std::string csv = format_convergence_csv(table, relative);
  std::cout << csv;
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_text_file((fs::path(o.out) / "convergence.csv").string(), csv);
  }
  if (!table.complete) {
    std::cerr << "error: " << table.failure << "\n";
    return kExitSolver;
  }
  return 0;
}

int cmd_check_mesh(const Options& o, const std::string& mesh_path) {
  Mesh mesh = [&] {
    if (!mesh_path.empty()) return load_mesh_file(mesh_path);
    return build_mesh(resolve_config(o));
  }();
  const MeshAudit a = audit_mesh(mesh);
  std::printf("vertices %d\ncells %d\nedges %d\nh %.6g\nmin_angle %.6f\nmax_angle %.6f\n", mesh.num_vertices(),
              mesh.num_cells(), mesh.num_edges(), mesh.h(), a.min_angle, a.max_angle);
  std::printf("strictly_acute %s\nweakly_acute %s\nquasi_uniformity %.6g\n", a.strictly_acute ? "yes" : "no",
              a.weakly_acute ? "yes" : "no", a.quasi_uniformity_ratio);
  enforce_acute_policy(a, o.strict_acute ? AcutePolicy::RequireStrict : AcutePolicy::AllowWeak);
  return 0;
}

int cmd_scenarios() {
  for (Scenario s : {Scenario::Manufactured, Scenario::LShape, Scenario::SquareWithHoles, Scenario::Custom}) {
    const RunConfig c = default_config(s);
    std::printf("%-18s mesh=%s M=%d kappa=%g sigma=%g H=%s mu=%s T=%g tau=%s\n", std::string(scenario_name(s)).c_str(),
                c.mesh_generator.c_str(), c.mesh_M, c.kappa, c.sigma, c.applied_field.c_str(), c.mu.c_str(), c.T,
                c.tau.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite element TDGL solver"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Configuration file");
    sub->add_option("--scenario", o.scenario, "Start from a named scenario's defaults");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--threads", o.threads, "OpenMP thread count")->check(CLI::PositiveNumber);
    sub->add_flag("--strict-acute", o.strict_acute, "Reject meshes with right angles");
  };

  auto* run = app.add_subcommand("run", "Single simulation");
  common(run);
  auto* conv = app.add_subcommand("convergence", "Manufactured-solution convergence study");
  common(conv);
  std::vector<int> resolutions{8, 16, 32, 64};
  bool relative = false;
  conv->add_option("--resolutions", resolutions, "Values of 1/h")->delimiter(',');
  conv->add_flag("--relative", relative, "Report errors relative to the exact norms");
  auto* check = app.add_subcommand("check-mesh", "Mesh quality audit");
  common(check);
  std::string mesh_path;
  check->add_option("mesh", mesh_path, "Mesh file (Gmsh 2.2 ASCII or native)");
  auto* list = app.add_subcommand("scenarios", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }
  if (o.threads > 0) kernels::set_threads(o.threads);

  try {
    if (*run) return cmd_run(o);
    if (*conv) return cmd_convergence(o, resolutions, relative);
    if (*check) return cmd_check_mesh(o, mesh_path);
    if (*list) return cmd_scenarios();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MeshError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
