#include "vemnsch/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vemnsch {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_key(int line, const std::string& sec,
                          const std::string& key, const std::string& why) {
  throw ConfigError("config line " + std::to_string(line) + ": [" + sec +
                    "] " + key + ": " + why);
}

double to_double(int line, const std::string& sec, const std::string& key,
                 const std::string& v) {
  size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    bad_key(line, sec, key, "not a number: '" + v + "'");
  }
  if (pos != v.size()) bad_key(line, sec, key, "not a number: '" + v + "'");
  return d;
}

long long to_int(int line, const std::string& sec, const std::string& key,
                 const std::string& v) {
  size_t pos = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &pos);
  } catch (const std::exception&) {
    bad_key(line, sec, key, "not an integer: '" + v + "'");
  }
  if (pos != v.size()) bad_key(line, sec, key, "not an integer: '" + v + "'");
  return i;
}

std::vector<int> to_int_list(int line, const std::string& sec,
                             const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::string item;
  std::istringstream is(v);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(static_cast<int>(to_int(line, sec, key, item)));
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void apply(RunConfig& c, int line, const std::string& sec,
           const std::string& key, const std::string& val) {
  if (sec == "mesh") {
    if (key == "family") {
      if (val != "cartesian" && val != "triangular" && val != "quadrilateral" &&
          val != "voronoi")
        bad_key(line, sec, key, "unknown mesh family '" + val + "'");
      c.family = val;
    } else if (key == "n")
      c.n = static_cast<int>(to_int(line, sec, key, val));
    else if (key == "file")
      c.mesh_file = val;
    else if (key == "x0")
      c.x0 = to_double(line, sec, key, val);
    else if (key == "y0")
      c.y0 = to_double(line, sec, key, val);
    else if (key == "x1")
      c.x1 = to_double(line, sec, key, val);
    else if (key == "y1")
      c.y1 = to_double(line, sec, key, val);
    else
      bad_key(line, sec, key, "unknown key");
  } else if (sec == "physics") {
    if (key == "k")
      c.k = static_cast<int>(to_int(line, sec, key, val));
    else if (key == "l")
      c.l = static_cast<int>(to_int(line, sec, key, val));
    else if (key == "nu")
      c.nu = to_double(line, sec, key, val);
    else if (key == "lambda")
      c.lambda = to_double(line, sec, key, val);
    else if (key == "gamma")
      c.gamma = to_double(line, sec, key, val);
    else if (key == "eps")
      c.eps = to_double(line, sec, key, val);
    else if (key == "experiment") {
      if (val != "manufactured" && val != "bubble")
        bad_key(line, sec, key, "unknown experiment '" + val + "'");
      c.experiment = val;
    } else
      bad_key(line, sec, key, "unknown key");
  } else if (sec == "time") {
    if (key == "T")
      c.T = to_double(line, sec, key, val);
    else if (key == "tau")
      c.tau = to_double(line, sec, key, val);
    else if (key == "steps")
      c.steps = static_cast<int>(to_int(line, sec, key, val));
    else if (key == "c_tau")
      c.c_tau = to_double(line, sec, key, val);
    else if (key == "newton_tol")
      c.newton_tol = to_double(line, sec, key, val);
    else if (key == "newton_max_iter")
      c.newton_max_iter = static_cast<int>(to_int(line, sec, key, val));
    else
      bad_key(line, sec, key, "unknown key");
  } else if (sec == "output") {
    if (key == "dir")
      c.outdir = val;
    else if (key == "snapshots")
      c.snapshots = to_int_list(line, sec, key, val);
    else
      bad_key(line, sec, key, "unknown key");
  } else {
    throw ConfigError("config line " + std::to_string(line) +
                      ": unknown section [" + sec + "]");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string raw, sec;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    // Inline comments: '#' or ';' preceded by whitespace.
    for (size_t i = 1; i < s.size(); ++i) {
      if ((s[i] == '#' || s[i] == ';') && (s[i - 1] == ' ' || s[i - 1] == '\t')) {
        s = trim(s.substr(0, i));
        break;
      }
    }
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("config line " + std::to_string(line) +
                          ": malformed section header '" + s + "'");
      sec = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line) +
                        ": expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (sec.empty())
      throw ConfigError("config line " + std::to_string(line) + ": key '" +
                        key + "' outside any section");
    apply(cfg, line, sec, key, val);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<std::string> validate_config(RunConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("[physics] k: k >= 1 required");
  if (cfg.l < 2) throw ConfigError("[physics] l: l >= 2 required");
  if (cfg.experiment != "manufactured" && cfg.experiment != "bubble")
    throw ConfigError("[physics] experiment: unknown experiment '" +
                      cfg.experiment + "'");
  if (!(cfg.nu > 0)) throw ConfigError("[physics] nu: positive value required");
  if (!(cfg.gamma > 0))
    throw ConfigError("[physics] gamma: positive value required");
  if (!(cfg.eps > 0)) throw ConfigError("[physics] eps: positive value required");
  if (cfg.lambda < 0)
    throw ConfigError("[physics] lambda: nonnegative value required");
  if (cfg.n < 1) throw ConfigError("[mesh] n: n >= 1 required");
  if (!(cfg.x1 > cfg.x0))
    throw ConfigError("[mesh] x1: domain requires x1 > x0");
  if (!(cfg.y1 > cfg.y0))
    throw ConfigError("[mesh] y1: domain requires y1 > y0");
  if (!(cfg.T > 0)) throw ConfigError("[time] T: positive value required");
  if (cfg.tau < 0) throw ConfigError("[time] tau: nonnegative value required");
  if (cfg.steps < 0)
    throw ConfigError("[time] steps: nonnegative value required");
  if (!(cfg.newton_tol > 0))
    throw ConfigError("[time] newton_tol: positive value required");
  if (cfg.newton_max_iter < 1)
    throw ConfigError("[time] newton_max_iter: at least one iteration required");

  const double tol = 1e-12 * std::max(1.0, std::abs(cfg.T));
  if (cfg.tau == 0 && cfg.steps == 0) cfg.steps = 10;
  if (cfg.tau > 0 && cfg.steps == 0) {
    cfg.steps = static_cast<int>(std::llround(cfg.T / cfg.tau));
    if (cfg.steps < 1 || std::abs(cfg.steps * cfg.tau - cfg.T) > tol)
      throw ConfigError("[time] tau: T is not an integer multiple of tau");
  } else if (cfg.steps > 0 && cfg.tau == 0) {
    cfg.tau = cfg.T / cfg.steps;
  } else if (std::abs(cfg.steps * cfg.tau - cfg.T) > tol) {
    throw ConfigError("[time] tau/steps: tau * steps must equal T (to 1e-12)");
  }
  for (int s : cfg.snapshots)
    if (s < 0)
      throw ConfigError("[output] snapshots: step indices must be >= 0");

  std::vector<std::string> warnings;
  if (cfg.k < cfg.l - 1)
    warnings.push_back(
        "warning: k < l-1: discrete mass of the phase field is not conserved "
        "for this degree pairing");
  return warnings;
}

std::string config_echo(const RunConfig& cfg) {
  std::string s;
  s += "[mesh]\n";
  s += "family = " + cfg.family + "\n";
  s += "n = " + std::to_string(cfg.n) + "\n";
  if (!cfg.mesh_file.empty()) s += "file = " + cfg.mesh_file + "\n";
  s += "x0 = " + fmt(cfg.x0) + "\ny0 = " + fmt(cfg.y0) + "\nx1 = " +
       fmt(cfg.x1) + "\ny1 = " + fmt(cfg.y1) + "\n";
  s += "\n[physics]\n";
  s += "k = " + std::to_string(cfg.k) + "\nl = " + std::to_string(cfg.l) + "\n";
  s += "nu = " + fmt(cfg.nu) + "\nlambda = " + fmt(cfg.lambda) + "\ngamma = " +
       fmt(cfg.gamma) + "\neps = " + fmt(cfg.eps) + "\n";
  s += "experiment = " + cfg.experiment + "\n";
  s += "\n[time]\n";
  s += "T = " + fmt(cfg.T) + "\ntau = " + fmt(cfg.tau) +
       "\nsteps = " + std::to_string(cfg.steps) + "\n";
  s += "c_tau = " + fmt(cfg.c_tau) + "\n";
  s += "newton_tol = " + fmt(cfg.newton_tol) + "\n";
  s += "newton_max_iter = " + std::to_string(cfg.newton_max_iter) + "\n";
  s += "\n[output]\n";
  s += "dir = " + cfg.outdir + "\n";
  if (!cfg.snapshots.empty()) {
    s += "snapshots = ";
    for (size_t i = 0; i < cfg.snapshots.size(); ++i)
      s += (i ? "," : "") + std::to_string(cfg.snapshots[i]);
    s += "\n";
  }
  return s;
}

RunConfig test1_config(const std::string& family, int n, int k, int l,
                       double c_tau) {
  RunConfig cfg;
  cfg.family = family;
  cfg.n = n;
  cfg.k = k;
  cfg.l = l;
  cfg.experiment = "manufactured";
  cfg.T = 1.0;
  cfg.c_tau = c_tau;
  cfg.tau = c_tau / n;
  cfg.steps = 0;
  validate_config(cfg);
  return cfg;
}

RunConfig test2_config(int n, int steps) {
  RunConfig cfg;
  cfg.family = "cartesian";
  cfg.n = n;
  cfg.x0 = cfg.y0 = -0.4;
  cfg.x1 = cfg.y1 = 0.4;
  cfg.k = 1;
  cfg.l = 2;
  cfg.nu = 1;
  cfg.lambda = 0.1;
  cfg.gamma = 0.1;
  cfg.eps = 0.02;
  cfg.experiment = "bubble";
  cfg.tau = 1e-6;
  cfg.steps = steps;
  cfg.T = steps * cfg.tau;
  validate_config(cfg);
  return cfg;
}

}  // namespace vemnsch
