#include "direst/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "direst/errors.hpp"

namespace direst {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("bad number for " + key + ": '" + v + "'");
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long out;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("bad integer for " + key + ": '" + v + "'");
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long out;
  try {
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad unsigned integer for " + key + ": '" + v + "'");
  }
  if (pos != v.size() || v.find('-') != std::string::npos)
    throw ConfigError("bad unsigned integer for " + key + ": '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean for " + key + ": '" + v + "'");
}

std::vector<double> to_vec(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

bool divides_evenly(double small, double big) {
  const auto n = std::llround(big / small);
  return n >= 1 && std::fabs(big - static_cast<double>(n) * small) <= 1e-6 * small;
}

}  // namespace

void Scenario::validate() const {
  if (model != "neural_mass") throw ConfigError("unknown model '" + model + "'");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be finite and > 0");
  if (!(t_f > 0.0) || !std::isfinite(t_f)) throw ConfigError("t_f must be finite and > 0");
  if (!(T_d > 0.0) || !std::isfinite(T_d)) throw ConfigError("T_d must be finite and > 0");
  if (!divides_evenly(dt, t_f)) throw ConfigError("t_f must be a whole number of steps");
  if (!divides_evenly(dt, T_d)) throw ConfigError("T_d must be a whole number of steps");
  if (decimation < 1) throw ConfigError("decimation must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ConfigError("lambda must be finite and > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ConfigError("epsilon must be finite and >= 0");
  if (d_star && (!(d_star.value() > 0.0) || !std::isfinite(d_star.value())))
    throw ConfigError("d_star must be finite and > 0");
  if (k_star && k_star.value() < 0) throw ConfigError("k_star must be >= 0");
  if (!(threshold > 0.0) || !std::isfinite(threshold))
    throw ConfigError("threshold must be finite and > 0");
  if (!(state_bound > 0.0)) throw ConfigError("state_bound must be > 0");

  const std::size_t np = box_lower.size();
  if (np == 0 || box_upper.size() != np || p_true.size() != np)
    throw ConfigError("box_lower, box_upper and p_true must share a nonzero size");
  for (std::size_t i = 0; i < np; ++i) {
    if (!(box_lower[i] < box_upper[i]))
      throw ConfigError("box_lower must be strictly below box_upper");
    if (p_true[i] < box_lower[i] || p_true[i] > box_upper[i])
      throw ConfigError("p_true must lie inside the parameter box");
  }

  if (model == "neural_mass") {
    if (np != 2) throw ConfigError("neural_mass has 2 parameters");
    if (!x0.empty() && x0.size() != 6) throw ConfigError("neural_mass x0 needs 6 entries");
    if (!xhat0.empty() && xhat0.size() != 6) throw ConfigError("neural_mass xhat0 needs 6 entries");
    if (gain_k.size() != 2) throw ConfigError("neural_mass gain_k needs 2 entries");
    if (gain_l.size() != 6) throw ConfigError("neural_mass gain_l needs 6 entries");
  }
}

std::int64_t Scenario::resolve_k_star() const {
  if (k_star) return k_star.value();
  return termination_iterations(static_cast<int>(box_lower.size()), d_star.value_or(0.8));
}

Scenario load_scenario(std::istream& is) {
  Scenario sc;
  bool input_seed_given = false;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "search" && section != "model" && section != "input")
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string qual = section.empty() ? key : section + "." + key;

    if (section == "run") {
      if (key == "seed") sc.seed = to_uint(qual, val);
      else if (key == "dt") sc.dt = to_double(qual, val);
      else if (key == "t_f") sc.t_f = to_double(qual, val);
      else if (key == "T_d") sc.T_d = to_double(qual, val);
      else if (key == "decimation") sc.decimation = static_cast<int>(to_int(qual, val));
      else throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + qual);
    } else if (section == "search") {
      if (key == "lambda") sc.lambda = to_double(qual, val);
      else if (key == "epsilon") sc.epsilon = to_double(qual, val);
      else if (key == "d_star") sc.d_star = to_double(qual, val);
      else if (key == "k_star") sc.k_star = to_int(qual, val);
      else if (key == "threshold") sc.threshold = to_double(qual, val);
      else if (key == "reinitialize_all") sc.reinitialize_all = to_bool(qual, val);
      else throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + qual);
    } else if (section == "model") {
      if (key == "name") sc.model = val;
      else if (key == "box_lower") sc.box_lower = to_vec(qual, val);
      else if (key == "box_upper") sc.box_upper = to_vec(qual, val);
      else if (key == "p_true") sc.p_true = to_vec(qual, val);
      else if (key == "x0") sc.x0 = to_vec(qual, val);
      else if (key == "xhat0") sc.xhat0 = to_vec(qual, val);
      else if (key == "state_bound") sc.state_bound = to_double(qual, val);
      else if (key == "gain_k") sc.gain_k = to_vec(qual, val);
      else if (key == "gain_l") sc.gain_l = to_vec(qual, val);
      else if (key == "input_row4_uses_p2") sc.input_row4_uses_p2 = to_bool(qual, val);
      else throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + qual);
    } else if (section == "input") {
      if (key == "kind") sc.input.kind = parse_input_kind(val);
      else if (key == "amplitude") sc.input.amplitude = to_double(qual, val);
      else if (key == "offset") sc.input.offset = to_double(qual, val);
      else if (key == "count") sc.input.count = static_cast<int>(to_int(qual, val));
      else if (key == "f_min") sc.input.f_min = to_double(qual, val);
      else if (key == "f_max") sc.input.f_max = to_double(qual, val);
      else if (key == "hold_time") sc.input.hold_time = to_double(qual, val);
      else if (key == "seed") {
        sc.input.seed = to_uint(qual, val);
        input_seed_given = true;
      } else
        throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + qual);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section: " + key);
    }
  }
  if (!input_seed_given) sc.input.seed = sc.seed;
  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return load_scenario(f);
}

}  // namespace direst
