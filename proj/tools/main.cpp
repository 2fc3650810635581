#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vemnsch/config.hpp"
#include "vemnsch/drivers.hpp"
#include "vemnsch/parallel.hpp"
#include "vemnsch/system.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Divergence-free virtual element solver for incompressible two-phase "
      "flow on polygonal meshes"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads,
                 "assembly threads (default: VEMNSCH_THREADS or hardware)");

  auto* run = app.add_subcommand("run", "run a config-driven experiment");
  std::string config_path, outdir_override;
  run->add_option("-c,--config", config_path, "INI config file")->required();
  run->add_option("--outdir", outdir_override, "override [output] dir");

  auto* t1 =
      app.add_subcommand("test1", "manufactured-solution convergence study");
  std::vector<std::string> families{"triangular"};
  std::vector<int> levels{4, 8, 16};
  int k = 1, l = 2;
  double c_tau = 0.1;
  std::string outdir1 = "out";
  t1->add_option("--families", families,
                 "mesh families (triangular,quadrilateral,voronoi,cartesian)")
      ->delimiter(',');
  t1->add_option("--levels", levels, "subdivisions per side")->delimiter(',');
  t1->add_option("--k", k, "velocity degree");
  t1->add_option("--l", l, "phase degree");
  t1->add_option("--c-tau", c_tau, "time step over mesh size ratio");
  t1->add_option("--outdir", outdir1, "output directory");

  auto* t2 = app.add_subcommand("test2", "elliptical-bubble benchmark");
  int n2 = 64, steps2 = 200;
  std::vector<int> snaps;
  std::string outdir2 = "out";
  t2->add_option("--n", n2, "Cartesian subdivisions per side");
  t2->add_option("--steps", steps2, "number of implicit steps (tau = 1e-6)");
  t2->add_option("--snapshots", snaps, "steps at which to write snapshots")
      ->delimiter(',');
  t2->add_option("--outdir", outdir2, "output directory");

  auto* vm = app.add_subcommand("validate-mesh", "check a mesh file's quality");
  std::string mesh_path;
  double rho = 0.05;
  vm->add_option("file", mesh_path, "mesh file")->required();
  vm->add_option("--rho", rho, "shape-regularity bound");

  auto* gm = app.add_subcommand("gen-mesh", "generate a mesh file");
  std::string gfam = "voronoi", gout = "mesh.txt";
  int gn = 8;
  std::vector<double> dom{0, 0, 1, 1};
  gm->add_option("--family", gfam, "mesh family");
  gm->add_option("--n", gn, "subdivisions per side");
  gm->add_option("-o,--output", gout, "output path");
  gm->add_option("--domain", dom, "x0 y0 x1 y1")->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const int nthreads =
      threads > 0 ? threads : vemnsch::default_thread_count();
  try {
    if (*run) {
      vemnsch::RunConfig cfg = vemnsch::parse_config_file(config_path);
      if (!outdir_override.empty()) cfg.outdir = outdir_override;
      for (const std::string& w : vemnsch::validate_config(cfg))
        std::cerr << w << "\n";
      vemnsch::cmd_run(cfg, nthreads, std::cout);
    } else if (*t1) {
      vemnsch::cmd_test1(families, levels, k, l, c_tau, outdir1, nthreads,
                         std::cout);
    } else if (*t2) {
      vemnsch::cmd_test2(n2, steps2, snaps, outdir2, nthreads, std::cout);
    } else if (*vm) {
      return vemnsch::cmd_validate_mesh(mesh_path, rho, std::cout);
    } else if (*gm) {
      vemnsch::cmd_gen_mesh(gfam, gn, vemnsch::Vec2(dom[0], dom[1]),
                            vemnsch::Vec2(dom[2], dom[3]), gout, std::cout);
    }
  } catch (const vemnsch::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const vemnsch::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
