#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vemnsch {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Run description parsed from an INI-style file with sections [mesh], [time],
// [physics], [output] (key = value lines, '#' or ';' comments).  Defaults
// describe the unit square with all physical parameters equal to one and
// degrees (k, l) = (1, 2).
struct RunConfig {
  // [mesh]
  std::string family = "cartesian";  // cartesian|triangular|quadrilateral|voronoi
  int n = 8;                         // subdivisions per side
  std::string mesh_file;             // when set, overrides family/n
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;

  // [physics]
  int k = 1, l = 2;
  double nu = 1, lambda = 1, gamma = 1, eps = 1;
  std::string experiment = "manufactured";  // manufactured|bubble

  // [time]
  double T = 1;
  double tau = 0;   // 0: derived from steps
  int steps = 0;    // 0: derived from tau (or default 10)
  double c_tau = 0.1;
  double newton_tol = 1e-6;
  int newton_max_iter = 25;

  // [output]
  std::string outdir = "out";
  std::vector<int> snapshots;  // step indices at which to write snapshots
};

// Parse and fully validate; error messages name the offending section/key.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Applies defaults (tau/steps resolution), checks invariants, returns the
// warnings that the caller must surface (k < l-1 mass-conservation warning).
std::vector<std::string> validate_config(RunConfig& cfg);

// Effective configuration as INI text (round-trip precision).
std::string config_echo(const RunConfig& cfg);

// Presets.  test1: manufactured solution on the unit square, parameters one,
// T = 1, tau = c_tau / n.  test2: elliptical bubble on (-0.4, 0.4)^2 with
// nu = 1, lambda = gamma = 0.1, eps = 0.02, tau = 1e-6, Cartesian n^2 cells,
// running `steps` implicit steps.
RunConfig test1_config(const std::string& family, int n, int k, int l,
                       double c_tau = 0.1);
RunConfig test2_config(int n = 64, int steps = 200);

}  // namespace vemnsch
