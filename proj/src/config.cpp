#include "elastic/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace elastic {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': not a number: '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(d);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': not an integer: '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "': not a boolean: '" + v + "'");
}

Vec2 to_point(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() != 2) throw ConfigError("'" + key + "': expected 'x, y'");
  return {to_double(key, parts[0]), to_double(key, parts[1])};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const std::set<std::string> kKeys = {"geometry", "shape_param", "formulation", "lambda", "mu", "rho", "omega",
                                     "n", "N", "nsub", "rcip", "source", "test_point", "incident",
                                     "incident_angle", "fit_first_level", "fit_skip_inner", "timing", "out"};

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source_name) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source_name + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source_name + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in, path);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    const auto p = split(text, ':');
    if (p.size() != 3) throw ConfigError("'" + key + "': range must be first:last:step");
    const int a = to_int(key, p[0]), b = to_int(key, p[1]), s = to_int(key, p[2]);
    if (s <= 0 || b < a) throw ConfigError("'" + key + "': empty or invalid range");
    for (int v = a; v <= b; v += s) out.push_back(v);
  } else {
    for (const auto& item : split(text, ',')) out.push_back(to_int(key, item));
  }
  if (out.empty()) throw ConfigError("'" + key + "': empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
  if (out.empty()) throw ConfigError("'" + key + "': empty list");
  return out;
}

RunConfig resolve_config(const std::string& command, const std::vector<KeyValues>& layers) {
  static const std::set<std::string> commands = {"solve", "convergence", "rcip-sweep", "asymptotics"};
  if (!commands.count(command)) throw ConfigError("unknown command '" + command + "'");
  KeyValues kv;
  for (const auto& layer : layers)
    for (const auto& [k, v] : layer) {
      if (!kKeys.count(k)) throw ConfigError("unknown key '" + k + "'");
      kv[k] = v;
    }
  auto get = [&](const std::string& k, const std::string& dflt) {
    const auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  };

  RunConfig rc;
  rc.command = command;
  ProblemConfig& p = rc.problem;
  const std::string default_geometry = command == "rcip-sweep" ? "droplet" : command == "asymptotics" ? "sector" : "circle";
  try {
    p.shape = parse_shape(get("geometry", default_geometry));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  p.shape_param = to_double("shape_param", get("shape_param", "1"));
  if (!(p.shape_param > 0.0)) throw ConfigError("'shape_param' must be positive");
  const std::string default_form = command == "asymptotics" ? "SNN_int,SNN_ext"
                                   : command == "rcip-sweep" ? "DND_ext,SNN_ext,DND_int,SNN_int"
                                                             : "DND_ext";
  rc.formulations = split(get("formulation", default_form), ',');
  for (auto& f : rc.formulations) {
    try {
      f = formulation_from_name(f).name;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  p.formulation = rc.formulations.front();
  p.params.lambda = to_double("lambda", get("lambda", "1"));
  p.params.mu = to_double("mu", get("mu", "2"));
  p.params.rho = to_double("rho", get("rho", "1"));
  rc.omega_list = parse_double_list("omega", get("omega", "3"));
  p.params.omega = rc.omega_list.front();
  for (double w : rc.omega_list) {
    ElasticParams q = p.params;
    q.omega = w;
    try {
      q.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  p.order = to_int("n", get("n", "16"));
  if (p.order < 2 || p.order > 64) throw ConfigError("'n' must be in 2..64");
  rc.panel_list = parse_int_list("N", get("N", command == "asymptotics" ? "16" : "12"));
  for (int v : rc.panel_list)
    if (v < 1) throw ConfigError("'N' must be positive");
  p.panels = rc.panel_list.front();
  const std::string default_nsub = command == "rcip-sweep" ? "0:80:4" : command == "asymptotics" ? "50" : "0";
  rc.nsub_list = parse_int_list("nsub", get("nsub", default_nsub));
  for (int v : rc.nsub_list)
    if (v < 0) throw ConfigError("'nsub' must be non-negative");
  p.n_sub = rc.nsub_list.front();
  p.use_rcip = to_bool("rcip", get("rcip", "true"));
  if (kv.count("source")) p.source = to_point("source", kv["source"]);
  if (kv.count("test_point")) p.test_point = to_point("test_point", kv["test_point"]);
  rc.incident = get("incident", "point_source");
  try {
    parse_incident(rc.incident);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  rc.incident_angle = to_double("incident_angle", get("incident_angle", "0"));
  rc.fit_first_level = to_int("fit_first_level", get("fit_first_level", "10"));
  rc.fit_skip_inner = to_int("fit_skip_inner", get("fit_skip_inner", "5"));
  if (rc.fit_first_level < 0 || rc.fit_skip_inner < 0) throw ConfigError("fit window settings must be non-negative");
  rc.timing = to_bool("timing", get("timing", "false"));
  rc.out = get("out", "");
  return rc;
}

KeyValues RunConfig::resolved() const {
  KeyValues kv;
  auto join = [](const auto& v, auto f) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
    return s;
  };
  kv["command"] = command;
  kv["geometry"] = to_string(problem.shape);
  kv["shape_param"] = fmt(problem.shape_param);
  kv["formulation"] = join(formulations, [](const std::string& s) { return s; });
  kv["lambda"] = fmt(problem.params.lambda);
  kv["mu"] = fmt(problem.params.mu);
  kv["rho"] = fmt(problem.params.rho);
  kv["omega"] = join(omega_list, [](double v) { return fmt(v); });
  kv["n"] = std::to_string(problem.order);
  kv["N"] = join(panel_list, [](int v) { return std::to_string(v); });
  kv["nsub"] = join(nsub_list, [](int v) { return std::to_string(v); });
  kv["rcip"] = problem.use_rcip ? "true" : "false";
  kv["source"] = problem.source ? fmt(problem.source->x()) + "," + fmt(problem.source->y()) : "default";
  kv["test_point"] =
      problem.test_point ? fmt(problem.test_point->x()) + "," + fmt(problem.test_point->y()) : "default";
  kv["incident"] = incident;
  kv["incident_angle"] = fmt(incident_angle);
  kv["fit_first_level"] = std::to_string(fit_first_level);
  kv["fit_skip_inner"] = std::to_string(fit_skip_inner);
  kv["timing"] = timing ? "true" : "false";
  kv["out"] = out.empty() ? "stdout" : out;
  return kv;
}

}  // namespace elastic
