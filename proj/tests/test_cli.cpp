#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* p = std::getenv("VEMNSCH_CLI");
  REQUIRE_MESSAGE(p != nullptr, "VEMNSCH_CLI must point at the binary");
  return p;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -2;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("vemnsch_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int counter() {
    static int c = 0;
    return c++;
  }
  std::string operator/(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help and argument errors") {
  CHECK(run("--help") == 0);
  CHECK(run("run --help") == 0);
  CHECK(run("--definitely-not-a-flag") == 2);
  CHECK(run("") == 2);               // a subcommand is required
  CHECK(run("run") == 2);            // missing -c
  CHECK(run("frobnicate") == 2);     // unknown subcommand
}

TEST_CASE("configuration errors exit with code 2") {
  TempDir td;
  CHECK(run("run -c " + (td / "missing.ini")) == 2);

  std::ofstream(td / "bad.ini") << "[physics]\nl = 1\n";
  CHECK(run("run -c " + (td / "bad.ini")) == 2);

  std::ofstream(td / "junk.ini") << "[mesh]\nfamily = dodecahedral\n";
  CHECK(run("run -c " + (td / "junk.ini")) == 2);
}

TEST_CASE("mesh generation and validation round-trip") {
  TempDir td;
  const std::string mesh = td / "m.txt";
  CHECK(run("gen-mesh --family voronoi --n 3 -o " + mesh) == 0);
  CHECK(fs::exists(mesh));
  CHECK(run("validate-mesh " + mesh) == 0);
  // An over-strict shape constant makes validation fail with code 2.
  CHECK(run("validate-mesh --rho 0.9 " + mesh) == 2);
  // Garbage input is a config/input error.
  std::ofstream(td / "junk.txt") << "not a mesh\n";
  CHECK(run("validate-mesh " + (td / "junk.txt")) == 2);
}

TEST_CASE("a small manufactured run writes the expected artifacts") {
  TempDir td;
  const std::string out = td / "out";
  std::ofstream(td / "run.ini") << "[mesh]\n"
                                   "family = cartesian\n"
                                   "n = 2\n"
                                   "[physics]\n"
                                   "k = 1\n"
                                   "l = 2\n"
                                   "[time]\n"
                                   "T = 0.1\n"
                                   "tau = 0.05\n"
                                   "[output]\n"
                                   "snapshots = 2\n";
  CHECK(run("run -c " + (td / "run.ini") + " --outdir " + out) == 0);

  const std::string diag = slurp(out + "/diagnostics.csv");
  CHECK(diag.find("step,t,mass,energy_J,newton_iters,final_residual,"
                  "div_inf_norm") == 0);
  // Header plus step rows 0..2.
  CHECK(std::count(diag.begin(), diag.end(), '\n') == 4);

  const std::string errs = slurp(out + "/errors.csv");
  CHECK(errs.find("mesh_family,h,k,l,tau,err_u_H1") == 0);
  CHECK(errs.find("cartesian") != std::string::npos);

  CHECK(fs::exists(out + "/config.ini"));
  CHECK(fs::exists(out + "/snapshot_000002.txt"));

  // Byte-identical rerun into a fresh directory.
  const std::string out2 = td / "out2";
  CHECK(run("run -c " + (td / "run.ini") + " --outdir " + out2) == 0);
  CHECK(slurp(out2 + "/diagnostics.csv") == diag);
  CHECK(slurp(out2 + "/errors.csv") == errs);
}
