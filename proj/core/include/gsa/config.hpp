#pragma once

// Run configuration: a flat key = value text format with dotted keys.

#include <optional>
#include <string>

#include "gsa/model.hpp"
#include "gsa/viable.hpp"

namespace gsa {

struct ModelSpec {
  std::string name = "ising_zero_field";
  int n = 6;
  ModelParams params;
};

struct RunConfig {
  ModelSpec model;
  int g = 1;
  std::optional<double> epsilon;  // empty = take the oracle gap
  double eta = 0.1;
  std::uint64_t seed = 0;
  bool oracle_enabled = true;

  ViableCfg viable;

  double step_zeta = 0.02;
  double step_budget = 0.1;
  double final_budget = 0.05;
  int agsp_bond_cap = 64;

  double herald_threshold = 0.5;  // in units of epsilon
  bool stage_abort = true;
  bool write_csv = false;
  double oracle_degeneracy_tol = 1e-8;
  int property_trials = 1000;

  void validate() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Canonical serialization used for the config echo in reports.
std::string canonical_config(const RunConfig& c);

}  // namespace gsa
