#include "ks/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ks {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not a number: " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: key '" + key + "' has trailing text: " + v);
  return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x < 1 || x != std::floor(x))
    throw std::invalid_argument("config: key '" + key +
                                "' must be a positive integer");
  return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: key '" + key + "' must be true/false");
}

}  // namespace

const char* to_string(Geometry g) {
  return g == Geometry::Interval1D ? "interval" : "ball";
}

void RunConfig::validate() const {
  time.validate();
  if (!(mass > 0)) throw std::invalid_argument("config: mass must be > 0");
  if (geometry == Geometry::Interval1D) {
    if (!(tau > 0)) throw std::invalid_argument("config: tau must be > 0");
    if (spec.family == DiffusionFamily::CriticalPower)
      throw std::invalid_argument(
          "config: critical_power diffusion requires geometry = ball");
  } else {
    if (n_dim < 3) throw std::invalid_argument("config: ball needs n >= 3");
    if (spec.family == DiffusionFamily::IntegrablePower)
      throw std::invalid_argument(
          "config: integrable_power diffusion requires geometry = interval");
    if (spec.family == DiffusionFamily::CriticalPower && spec.dim != n_dim)
      throw std::invalid_argument(
          "config: critical_power dimension must match the ball dimension");
  }
  if (!(q > 2)) throw std::invalid_argument("config: q must be > 2");
  if (u0_profile != "constant" && u0_profile != "plateau" &&
      u0_profile != "smooth")
    throw std::invalid_argument("config: unknown u0 profile " + u0_profile);
  if (v0_profile != "constant" && v0_profile != "admissible" &&
      v0_profile != "equilibrium")
    throw std::invalid_argument("config: unknown v0 profile " + v0_profile);
  if (placement != "left" && placement != "right" && placement != "center")
    throw std::invalid_argument("config: unknown placement " + placement);
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: malformed section header: " + line);
      continue;  // sections organize the file; keys stay global
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (kv.count(key))
      throw std::invalid_argument("config: duplicate key '" + key + "'");
    kv[key] = val;
  }

  RunConfig cfg;
  auto pop = [&kv](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) return "";
    std::string out = it->second;
    kv.erase(it);
    return out;
  };

  if (auto g = pop("geometry"); !g.empty()) {
    if (g == "interval")
      cfg.geometry = Geometry::Interval1D;
    else if (g == "ball")
      cfg.geometry = Geometry::RadialBall;
    else
      throw std::invalid_argument("config: geometry must be interval|ball");
  }
  if (auto s = pop("n"); !s.empty()) cfg.n_dim = static_cast<int>(to_count("n", s));
  if (auto s = pop("tau"); !s.empty()) cfg.tau = to_double("tau", s);
  if (auto s = pop("q"); !s.empty()) cfg.q = to_double("q", s);
  if (auto s = pop("n_cells"); !s.empty()) cfg.n_cells = to_count("n_cells", s);
  if (auto s = pop("diag_cadence"); !s.empty())
    cfg.diag_cadence = to_count("diag_cadence", s);

  std::string family = pop("a_family");
  if (family.empty()) family = "constant";
  if (family == "constant") {
    double c = 1.0;
    if (auto s = pop("a_c"); !s.empty()) c = to_double("a_c", s);
    cfg.spec = DiffusionSpec::Constant(c);
  } else if (family == "integrable_power") {
    double p = 2.0;
    if (auto s = pop("a_p"); !s.empty()) p = to_double("a_p", s);
    cfg.spec = DiffusionSpec::IntegrablePower(p);
  } else if (family == "critical_power") {
    int n = cfg.n_dim;
    if (auto s = pop("a_n"); !s.empty()) n = static_cast<int>(to_count("a_n", s));
    cfg.spec = DiffusionSpec::CriticalPower(n);
  } else {
    throw std::invalid_argument(
        "config: a_family must be constant|integrable_power|critical_power");
  }

  if (auto s = pop("t_end"); !s.empty()) cfg.time.t_end = to_double("t_end", s);
  if (auto s = pop("dt_init"); !s.empty())
    cfg.time.dt_init = to_double("dt_init", s);
  if (auto s = pop("dt_min"); !s.empty()) cfg.time.dt_min = to_double("dt_min", s);
  if (auto s = pop("dt_max"); !s.empty()) cfg.time.dt_max = to_double("dt_max", s);
  if (auto s = pop("cfl_safety"); !s.empty())
    cfg.time.cfl_safety = to_double("cfl_safety", s);
  if (auto s = pop("u_blowup_threshold"); !s.empty())
    cfg.time.u_blowup_threshold = to_double("u_blowup_threshold", s);

  if (auto s = pop("u0"); !s.empty()) cfg.u0_profile = s;
  if (auto s = pop("mass"); !s.empty()) cfg.mass = to_double("mass", s);
  if (auto s = pop("m"); !s.empty()) cfg.mass = to_double("m", s);
  if (auto s = pop("width"); !s.empty()) cfg.width = to_double("width", s);
  if (auto s = pop("placement"); !s.empty()) cfg.placement = s;
  if (auto s = pop("target_m2"); !s.empty())
    cfg.target_m2 = to_double("target_m2", s);
  if (auto s = pop("v0"); !s.empty()) cfg.v0_profile = s;
  if (auto s = pop("v0_value"); !s.empty())
    cfg.v0_value = to_double("v0_value", s);
  if (auto s = pop("v0_lambda"); !s.empty())
    cfg.v0_lambda = to_double("v0_lambda", s);
  if (auto s = pop("vt_power_half"); !s.empty())
    cfg.vt_power_half = to_bool("vt_power_half", s);
  if (auto s = pop("name"); !s.empty()) cfg.name = s;

  if (!kv.empty()) {
    std::string msg = "config: unknown keys:";
    for (const auto& [k, v] : kv) msg += " '" + k + "'";
    throw std::invalid_argument(msg);
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = parse_config(buf.str());
  if (cfg.name == "run") {
    // default run id from the file name
    auto slash = path.find_last_of('/');
    std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    if (dot != std::string::npos) base.erase(dot);
    cfg.name = base;
  }
  return cfg;
}

}  // namespace ks
