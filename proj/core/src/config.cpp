#include "gsa/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace gsa {

namespace {

std::string trim_ws(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ArgumentError("config: bad boolean for " + key + ": " + v);
}

double parse_num(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ArgumentError("config: bad number for " + key + ": " + v);
  }
}

}  // namespace

void RunConfig::validate() const {
  if (g < 1) throw ArgumentError("config: g must be at least 1");
  if (!(eta > 0.0 && eta <= 1.0 / 3.0 + 1e-12))
    throw ArgumentError("config: eta must satisfy 0 < eta <= 1/3");
  if (epsilon && *epsilon <= 0.0)
    throw ArgumentError("config: epsilon must be positive");
  if (model.n < 2) throw ArgumentError("config: model.n must be at least 2");
  if (viable.net_mode != "candidates" && viable.net_mode != "exhaustive")
    throw ArgumentError("config: net.mode must be candidates or exhaustive");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim_ws(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("config line " + std::to_string(lineno) +
                          ": expected key = value");
    std::string key = trim_ws(line.substr(0, eq));
    std::string val = trim_ws(line.substr(eq + 1));

    if (key == "model.name") c.model.name = val;
    else if (key == "model.n") c.model.n = static_cast<int>(parse_num(val, key));
    else if (key == "model.seed")
      c.model.params.seed = static_cast<std::uint64_t>(parse_num(val, key));
    else if (key.rfind("model.param.", 0) == 0)
      c.model.params.values[key.substr(12)] = parse_num(val, key);
    else if (key == "g") c.g = static_cast<int>(parse_num(val, key));
    else if (key == "epsilon") {
      if (val == "auto") c.epsilon.reset();
      else c.epsilon = parse_num(val, key);
    } else if (key == "eta") c.eta = parse_num(val, key);
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_num(val, key));
    else if (key == "oracle") c.oracle_enabled = parse_bool(val, key);
    else if (key == "net.mode") c.viable.net_mode = val;
    else if (key == "net.energy_spacing") c.viable.energy_spacing = parse_num(val, key);
    else if (key == "net.xi") c.viable.xi = parse_num(val, key);
    else if (key == "net.random_candidates")
      c.viable.random_candidates = static_cast<int>(parse_num(val, key));
    else if (key == "net.low_energy_candidates")
      c.viable.low_energy_candidates = static_cast<int>(parse_num(val, key));
    else if (key == "net.exhaustive_cap") c.viable.exhaustive_cap = parse_num(val, key);
    else if (key == "trim.eval_threshold") {
      if (val == "paper") c.viable.eval_threshold = 0.0;
      else c.viable.eval_threshold = parse_num(val, key);
    } else if (key == "trim.bond_rank") {
      if (val == "auto") c.viable.bond_rank = 0;
      else c.viable.bond_rank = static_cast<int>(parse_num(val, key));
    } else if (key == "trim.bond_rank_cap")
      c.viable.bond_rank_cap = static_cast<int>(parse_num(val, key));
    else if (key == "truncate.rank")
      c.viable.truncate_rank = static_cast<int>(parse_num(val, key));
    else if (key == "span.gram_tol") c.viable.gram_rel_tol = parse_num(val, key);
    else if (key == "sdp.tol_gap") c.viable.sdp.tol_gap = parse_num(val, key);
    else if (key == "sdp.tol_feas") c.viable.sdp.tol_feas = parse_num(val, key);
    else if (key == "sdp.max_iterations")
      c.viable.sdp.max_iterations = static_cast<int>(parse_num(val, key));
    else if (key == "targets.s2_delta") c.viable.s2_delta_target = parse_num(val, key);
    else if (key == "targets.s3_delta") c.viable.s3_delta_target = parse_num(val, key);
    else if (key == "targets.s4_energy") c.viable.s4_energy_target = parse_num(val, key);
    else if (key == "agsp.step_zeta") c.step_zeta = parse_num(val, key);
    else if (key == "agsp.step_budget") c.step_budget = parse_num(val, key);
    else if (key == "agsp.final_budget") c.final_budget = parse_num(val, key);
    else if (key == "agsp.bond_cap")
      c.agsp_bond_cap = static_cast<int>(parse_num(val, key));
    else if (key == "herald.threshold") c.herald_threshold = parse_num(val, key);
    else if (key == "stage_abort") c.stage_abort = parse_bool(val, key);
    else if (key == "report.csv") c.write_csv = parse_bool(val, key);
    else if (key == "oracle.degeneracy_tol")
      c.oracle_degeneracy_tol = parse_num(val, key);
    else if (key == "property.trials")
      c.property_trials = static_cast<int>(parse_num(val, key));
    else
      throw ArgumentError("config: unknown key " + key);
  }
  c.validate();
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_config(const RunConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "model.name = " << c.model.name << "\n";
  out << "model.n = " << c.model.n << "\n";
  out << "model.seed = " << c.model.params.seed << "\n";
  for (const auto& [k, v] : c.model.params.values)
    out << "model.param." << k << " = " << v << "\n";
  out << "g = " << c.g << "\n";
  if (c.epsilon) out << "epsilon = " << *c.epsilon << "\n";
  else out << "epsilon = auto\n";
  out << "eta = " << c.eta << "\n";
  out << "seed = " << c.seed << "\n";
  out << "oracle = " << (c.oracle_enabled ? "on" : "off") << "\n";
  out << "net.mode = " << c.viable.net_mode << "\n";
  out << "net.energy_spacing = " << c.viable.energy_spacing << "\n";
  out << "net.xi = " << c.viable.xi << "\n";
  out << "net.random_candidates = " << c.viable.random_candidates << "\n";
  out << "net.low_energy_candidates = " << c.viable.low_energy_candidates << "\n";
  out << "trim.eval_threshold = " << c.viable.eval_threshold << "\n";
  out << "trim.bond_rank = " << c.viable.bond_rank << "\n";
  out << "trim.bond_rank_cap = " << c.viable.bond_rank_cap << "\n";
  out << "truncate.rank = " << c.viable.truncate_rank << "\n";
  out << "span.gram_tol = " << c.viable.gram_rel_tol << "\n";
  out << "sdp.tol_gap = " << c.viable.sdp.tol_gap << "\n";
  out << "targets.s2_delta = " << c.viable.s2_delta_target << "\n";
  out << "targets.s3_delta = " << c.viable.s3_delta_target << "\n";
  out << "targets.s4_energy = " << c.viable.s4_energy_target << "\n";
  out << "agsp.step_zeta = " << c.step_zeta << "\n";
  out << "agsp.step_budget = " << c.step_budget << "\n";
  out << "agsp.final_budget = " << c.final_budget << "\n";
  out << "agsp.bond_cap = " << c.agsp_bond_cap << "\n";
  out << "herald.threshold = " << c.herald_threshold << "\n";
  out << "stage_abort = " << (c.stage_abort ? "on" : "off") << "\n";
  return out.str();
}

}  // namespace gsa
