#pragma once

// The run-anywhere property suites: every inequality the construction relies
// on, checked as randomized dense statements against the oracle. Failures are
// data, not exceptions.

#include <string>
#include <vector>

#include "gsa/config.hpp"

namespace gsa {

struct PropertySuiteResult {
  std::string name;
  long trials = 0;
  long violations = 0;
  double worst_slack = 0.0;  // minimum margin by which the claim held
  bool pass = false;
};

struct PropertyReport {
  std::vector<PropertySuiteResult> suites;
  bool all_pass = false;
};

/// Runs every registered suite with config.property_trials instances each,
/// seeded from config.seed.
PropertyReport property_suite(const RunConfig& config);

std::vector<std::string> property_suite_names();

std::string render_property_report(const RunConfig& config,
                                   const PropertyReport& report);

}  // namespace gsa
