#include "f2w/config.hpp"

#include <fstream>
#include <sstream>

namespace f2w {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_rational(const std::string& v, const std::string& key) {
  const auto slash = v.find('/');
  try {
    if (slash == std::string::npos) return std::stod(v);
    const double num = std::stod(trim(v.substr(0, slash)));
    const double den = std::stod(trim(v.substr(slash + 1)));
    if (den == 0.0) throw ConfigError("division by zero in " + key);
    return num / den;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse numeric value for " + key + ": '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const std::int64_t r = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return r;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse integer for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("cannot parse boolean for " + key + ": '" + v + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (family != "haar" && family != "daubechies")
    throw ConfigError("family must be haar or daubechies");
  if (p < 1 || p > 10) throw ConfigError("p must be in 1..10");
  if (family == "haar" && p != 1) throw ConfigError("haar means p = 1");
  if (a != 2 * p - 1) throw ConfigError("a must equal 2p-1");
  if (j_min < 0 || j_max < j_min - 1) throw ConfigError("need 0 <= j_min <= j_max (+1 for empty)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(theta_inv > 0.0 && theta_inv < 1.0)) throw ConfigError("theta_inv must be in (0,1)");
  if (grid < 2 || grid > 8192) throw ConfigError("grid must be in 2..8192");
  if (function != "f1" && function != "f2" && function != "samples-file")
    throw ConfigError("function must be f1, f2 or samples-file");
  if (function == "samples-file" && samples_file.empty())
    throw ConfigError("samples-file function needs samples_file");
  for (const auto v : A)
    if (v < 0) throw ConfigError("A entries must be non-negative");
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  bool p_seen = false, a_seen = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val.empty()) throw ConfigError("empty value for " + key);

    if (key == "family") {
      cfg.family = val;
    } else if (key == "p") {
      cfg.p = static_cast<int>(parse_int(val, key));
      p_seen = true;
    } else if (key == "boundary") {
      cfg.boundary = parse_bool(val, key);
    } else if (key == "A") {
      std::istringstream av(val);
      for (auto& e : cfg.A) {
        std::string tok;
        if (!(av >> tok)) throw ConfigError("A needs four integers");
        e = parse_int(tok, key);
      }
      std::string extra;
      if (av >> extra) throw ConfigError("A needs exactly four integers");
    } else if (key == "a") {
      cfg.a = static_cast<int>(parse_int(val, key));
      a_seen = true;
    } else if (key == "j_min") {
      cfg.j_min = static_cast<int>(parse_int(val, key));
    } else if (key == "j_max") {
      cfg.j_max = static_cast<int>(parse_int(val, key));
    } else if (key == "epsilon") {
      cfg.epsilon = parse_rational(val, key);
    } else if (key == "theta_inv") {
      cfg.theta_inv = parse_rational(val, key);
    } else if (key == "refine") {
      cfg.refine_axes = parse_bool(val, key);
    } else if (key == "grid") {
      cfg.grid = static_cast<int>(parse_int(val, key));
    } else if (key == "function") {
      cfg.function = val;
    } else if (key == "samples_file") {
      cfg.samples_file = val;
    } else if (key == "family_export") {
      cfg.family_export = val;
    } else if (key == "T1") {
      cfg.T1 = parse_rational(val, key);
    } else if (key == "T2") {
      cfg.T2 = parse_rational(val, key);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(val, key));
    } else {
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    }
  }
  if (cfg.family == "haar" && !p_seen) cfg.p = 1;
  if (!a_seen) cfg.a = 2 * cfg.p - 1;
  if (cfg.T1 < 0.0) cfg.T1 = static_cast<double>(cfg.a - 1);
  if (cfg.T2 < 0.0) cfg.T2 = static_cast<double>(2 * cfg.a - 1);
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace f2w
