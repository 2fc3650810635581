#include "vemnsch/drivers.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vemnsch/exact_solution.hpp"
#include "vemnsch/transient.hpp"

namespace vemnsch {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

bool wants_snapshot(const RunConfig& cfg, int step) {
  for (int s : cfg.snapshots)
    if (s == step) return true;
  return false;
}

TransientOptions transient_options(const RunConfig& cfg,
                                   const GlobalSystem& sys,
                                   const std::string& snapshot_prefix,
                                   std::ostream& log) {
  TransientOptions opt;
  opt.newton.rel_tol = cfg.newton_tol;
  opt.newton.max_iter = cfg.newton_max_iter;
  if (!snapshot_prefix.empty() && !cfg.snapshots.empty()) {
    opt.on_step = [&cfg, &sys, snapshot_prefix, &log](int step, double t,
                                                      const Eigen::VectorXd& x) {
      if (!wants_snapshot(cfg, step)) return;
      char suffix[32];
      std::snprintf(suffix, sizeof suffix, "%06d.txt", step);
      const std::string path = snapshot_prefix + suffix;
      write_text_file(path, snapshot_text(sys, x, step, t));
      log << "wrote " << path << "\n";
    };
  }
  return opt;
}

}  // namespace

PolygonalMesh make_mesh(const RunConfig& cfg) {
  if (!cfg.mesh_file.empty()) return read_mesh(cfg.mesh_file);
  return generate_mesh(mesh_family_from_string(cfg.family), cfg.n,
                       Vec2(cfg.x0, cfg.y0), Vec2(cfg.x1, cfg.y1));
}

RunOutputs run_manufactured(const RunConfig& cfg, int threads,
                            std::ostream& log,
                            const std::string& snapshot_prefix) {
  const PolygonalMesh mesh = make_mesh(cfg);
  const PhysParams par{cfg.nu, cfg.lambda, cfg.gamma, cfg.eps};
  GlobalSystem sys(mesh, cfg.k, cfg.l, par, threads);
  const ManufacturedSolution ex(par);
  log << "mesh " << cfg.family << " n=" << cfg.n << " cells=" << mesh.n_cells()
      << " h=" << fmt(mesh.mesh_size()) << " unknowns=" << sys.maps().n_total
      << "\n";

  Eigen::VectorXd x = sys.interpolate_state(
      [&](const Vec2& p) { return ex.velocity(p, 0.0); },
      [&](const Vec2& p) { return ex.phase(p, 0.0); },
      [&](const Vec2& p) { return ex.phase_grad(p, 0.0); },
      [&](const Vec2& p) { return ex.pressure_hat(p, 0.0); });

  const TransientOptions opt =
      transient_options(cfg, sys, snapshot_prefix, log);
  RunOutputs out;
  out.h = mesh.mesh_size();
  out.records = run_transient(
      sys, x, 0.0, cfg.tau, cfg.steps,
      [&](const Vec2& p, double t) { return ex.velocity(p, t); },
      [&](const Vec2& p, double t) { return ex.forcing_flow(p, t); },
      [&](const Vec2& p, double t) { return ex.forcing_phase(p, t); },
      [&](const Vec2& p, double t) -> Vec2 {
        return ex.phase(p, t) * ex.velocity(p, t);
      },
      opt);

  const double T = cfg.steps * cfg.tau;
  out.errors = compute_errors(
      sys, x, [&](const Vec2& p) { return ex.velocity_grad(p, T); },
      [&](const Vec2& p) { return ex.pressure_hat(p, T); },
      [&](const Vec2& p) { return ex.phase_hess(p, T); });
  log << "errors at T=" << fmt(T) << ": u_H1=" << fmt(out.errors.err_u)
      << " p_L2=" << fmt(out.errors.err_p)
      << " phi_H2=" << fmt(out.errors.err_phi) << "\n";
  return out;
}

RunOutputs run_bubble(const RunConfig& cfg, int threads, std::ostream& log,
                      const std::string& snapshot_prefix) {
  const PolygonalMesh mesh = make_mesh(cfg);
  const PhysParams par{cfg.nu, cfg.lambda, cfg.gamma, cfg.eps};
  GlobalSystem sys(mesh, cfg.k, cfg.l, par, threads);
  log << "mesh " << cfg.family << " n=" << cfg.n << " cells=" << mesh.n_cells()
      << " h=" << fmt(mesh.mesh_size()) << " unknowns=" << sys.maps().n_total
      << "\n";

  Eigen::VectorXd x = sys.interpolate_state(
      [](const Vec2&) { return Vec2(0, 0); },
      [](const Vec2& p) { return bubble_phi0(p); },
      [](const Vec2& p) { return bubble_grad_phi0(p); });
  log << "initial mass " << fmt(sys.total_mass(x)) << "\n";

  const TransientOptions opt =
      transient_options(cfg, sys, snapshot_prefix, log);
  RunOutputs out;
  out.h = mesh.mesh_size();
  out.records =
      run_transient(sys, x, 0.0, cfg.tau, cfg.steps, nullptr, nullptr, nullptr,
                    nullptr, opt);

  double drift = 0;
  for (const StepRecord& r : out.records)
    drift = std::max(drift, std::abs(r.mass - out.records.front().mass));
  log << "final mass " << fmt(out.records.back().mass) << " max drift "
      << fmt(drift) << "\n";
  return out;
}

void cmd_run(const RunConfig& cfg, int threads, std::ostream& log) {
  std::filesystem::create_directories(cfg.outdir);
  const std::string base = cfg.outdir + "/";
  write_text_file(base + "config.ini", config_echo(cfg));
  log << "wrote " << base << "config.ini\n";
  RunOutputs out;
  if (cfg.experiment == "manufactured") {
    out = run_manufactured(cfg, threads, log, base + "snapshot_");
    std::vector<ErrorRow> rows(1);
    rows[0] = {cfg.family, out.h, cfg.tau, cfg.k, cfg.l, out.errors};
    write_text_file(base + "errors.csv", errors_csv(rows));
    log << "wrote " << base << "errors.csv\n";
  } else {
    out = run_bubble(cfg, threads, log, base + "snapshot_");
  }
  write_text_file(base + "diagnostics.csv", diagnostics_csv(out.records));
  log << "wrote " << base << "diagnostics.csv\n";
}

void cmd_test1(const std::vector<std::string>& families,
               const std::vector<int>& levels, int k, int l, double c_tau,
               const std::string& outdir, int threads, std::ostream& log) {
  std::filesystem::create_directories(outdir);
  std::vector<ErrorRow> rows;
  for (const std::string& family : families) {
    for (int n : levels) {
      RunConfig cfg = test1_config(family, n, k, l, c_tau);
      log << "test1 " << family << " n=" << n << " tau=" << fmt(cfg.tau)
          << " steps=" << cfg.steps << "\n";
      const RunOutputs out = run_manufactured(cfg, threads, log);
      const std::string diag = outdir + "/test1_" + family + "_n" +
                               std::to_string(n) + "_diagnostics.csv";
      write_text_file(diag, diagnostics_csv(out.records));
      log << "wrote " << diag << "\n";
      rows.push_back({family, out.h, cfg.tau, k, l, out.errors});
    }
  }
  const std::string path = outdir + "/test1_errors.csv";
  write_text_file(path, errors_csv(rows));
  log << "wrote " << path << "\n" << errors_csv(rows);
}

void cmd_test2(int n, int steps, const std::vector<int>& snapshots,
               const std::string& outdir, int threads, std::ostream& log) {
  std::filesystem::create_directories(outdir);
  RunConfig cfg = test2_config(n, steps);
  cfg.outdir = outdir;
  cfg.snapshots = snapshots;
  const std::string base = outdir + "/";
  write_text_file(base + "test2_config.ini", config_echo(cfg));
  log << "wrote " << base << "test2_config.ini\n";
  const RunOutputs out = run_bubble(cfg, threads, log, base + "test2_snapshot_");
  write_text_file(base + "test2_diagnostics.csv", diagnostics_csv(out.records));
  log << "wrote " << base << "test2_diagnostics.csv\n";
}

int cmd_validate_mesh(const std::string& path, double rho, std::ostream& log) {
  const PolygonalMesh mesh = read_mesh(path);
  const MeshQualityReport rep = validate_mesh(mesh, rho);
  log << "cells=" << mesh.n_cells() << " vertices=" << mesh.n_vertices()
      << " edges=" << mesh.n_edges() << "\n";
  log << "star-shape failures " << rep.n_star_fail << ", short-edge failures "
      << rep.n_edge_fail << "\n";
  log << "min kernel-disc ratio " << fmt(rep.min_disc_ratio)
      << ", min edge ratio " << fmt(rep.min_edge_ratio) << " (bound "
      << fmt(rho) << ")\n";
  log << (rep.pass ? "mesh OK\n" : "mesh FAILED quality bound\n");
  return rep.pass ? 0 : 2;
}

void cmd_gen_mesh(const std::string& family, int n, const Vec2& lo,
                  const Vec2& hi, const std::string& outpath,
                  std::ostream& log) {
  const PolygonalMesh mesh =
      generate_mesh(mesh_family_from_string(family), n, lo, hi);
  write_mesh(mesh, outpath);
  log << "wrote " << outpath << " (cells=" << mesh.n_cells()
      << " vertices=" << mesh.n_vertices() << " h=" << fmt(mesh.mesh_size())
      << ")\n";
}

}  // namespace vemnsch
