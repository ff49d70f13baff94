#pragma once

// End-to-end orchestration of the sweep: the nondegenerate base case, the
// h-loop, projector assembly, the overcount herald, and report data.

#include <optional>

#include "gsa/config.hpp"
#include "gsa/viable.hpp"

namespace gsa {

struct AgspBuildInfo {
  AgspSchedule schedule;
  double propagator_error = 0.0;
  double compression_error = 0.0;
  double symmetrization_change = 0.0;
  std::optional<double> dense_gap;
  double measured_budget = 0.0;
  Eigen::Index max_bond = 1;
};

struct GroundSpaceResult {
  std::vector<Mps> states;  // gamma_1 .. gamma_g; Upsilon = sum |g><g| implicitly
  std::vector<double> energies;           // standardized units
  std::vector<double> energies_original;  // via the model's affine metadata
  double ortho_residual = 0.0;            // max |<g_i|g_j> - delta_ij|

  // oracle-gated diagnostics
  std::optional<double> frobenius_error;  // ||G - Upsilon||_F
  std::optional<double> trace_error;      // ||G - Upsilon||_1
  std::vector<double> ground_overlaps;    // ||G gamma_j||

  std::vector<StageRecord> stages;
  std::vector<std::string> warnings;

  double epsilon_used = 0.0;
  double eps0_reference = 0.0;
  int g = 1;
  AgspBuildInfo step_agsp;
  AgspBuildInfo final_agsp;
};

/// Left Schmidt vectors of the given states at the cut (cut = n returns the
/// states themselves); coefficients below 1e-12 are dropped.
std::vector<Mps> schmidt_vecs(int cut, const std::vector<Mps>& states);

/// Witness extraction: solve the span-restricted energy minimization with
/// the previous states excluded, demix, orthogonalize, renormalize.
Mps approx_ground_state(const ViableSet& final_set, const StandardHamiltonian& h,
                        const std::vector<Mps>& prev, double eps0_ref,
                        double epsilon, double eta, int g,
                        bool enforce_demix_preconditions = true);

/// The h = 1 pass of the sweep (the whole pipeline with no previous states).
Mps nondegenerate_gsa(const RunConfig& config);

GroundSpaceResult degenerate_gsa(const RunConfig& config);

struct OvercountReport {
  std::vector<double> state_energies;  // standardized units
  std::vector<double> excess;          // (E_j - eps0_ref) / epsilon
  double threshold = 0.5;              // herald fires above threshold (in eps)
  bool herald = false;
  int first_flagged = -1;              // 1-based state index, -1 if silent
};

/// Runs the requested number of states with stage aborts and demixing
/// preconditions relaxed, then flags states whose energy excess crosses the
/// herald threshold.
OvercountReport overcount_check(const RunConfig& config);

}  // namespace gsa
