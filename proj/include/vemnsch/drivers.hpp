#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vemnsch/config.hpp"
#include "vemnsch/errors.hpp"
#include "vemnsch/mesh.hpp"

namespace vemnsch {

// Mesh described by the config: generated family or loaded file.
PolygonalMesh make_mesh(const RunConfig& cfg);

// Outputs of one transient run.
struct RunOutputs {
  std::vector<StepRecord> records;
  ErrorTriple errors;  // manufactured runs only
  double h = 0;        // mesh size actually used
};

// One manufactured-solution run (time-dependent Dirichlet data and forcing
// from the closed-form reference); errors evaluated at the final time.  When
// `snapshot_prefix` is nonempty, writes snapshot files at the steps listed in
// cfg.snapshots.
RunOutputs run_manufactured(const RunConfig& cfg, int threads,
                            std::ostream& log,
                            const std::string& snapshot_prefix = "");

// One elliptical-bubble run (zero boundary data and forcing, tanh initial
// phase field).
RunOutputs run_bubble(const RunConfig& cfg, int threads, std::ostream& log,
                      const std::string& snapshot_prefix = "");

// Subcommand drivers.  Each writes its artifacts under the output directory
// and logs one line per milestone; failures propagate as ConfigError /
// SolverError.
void cmd_run(const RunConfig& cfg, int threads, std::ostream& log);
void cmd_test1(const std::vector<std::string>& families,
               const std::vector<int>& levels, int k, int l, double c_tau,
               const std::string& outdir, int threads, std::ostream& log);
void cmd_test2(int n, int steps, const std::vector<int>& snapshots,
               const std::string& outdir, int threads, std::ostream& log);
// Returns 0 when the mesh satisfies the quality bound, 2 otherwise.
int cmd_validate_mesh(const std::string& path, double rho, std::ostream& log);
void cmd_gen_mesh(const std::string& family, int n, const Vec2& lo,
                  const Vec2& hi, const std::string& outpath,
                  std::ostream& log);

}  // namespace vemnsch
