#pragma once

// Viable-set machinery: Extend, boundary contractions, the energy and
// contraction nets, and the Trim / Truncate / Reduce / FinalReduce sub-steps
// composed by the stepping functions.

#include <functional>
#include <optional>

#include "gsa/agsp.hpp"
#include "gsa/sdp.hpp"

namespace gsa {

struct ErrorTag {
  enum class Kind { Overlap, Energy };
  Kind kind = Kind::Energy;
  double value = 0.0;
};

struct ViableSet {
  int h = 1;  // which ground state is being sought
  int i = 0;  // sites covered
  std::vector<Mps> states;
  double s_bound = 1.0;
  double b_bound = 1.0;
  std::string stage = "S0";
  ErrorTag error;

  Eigen::Index max_bond() const {
    Eigen::Index b = 1;
    for (const auto& s : states) b = std::max(b, s.max_bond());
    return b;
  }
};

struct BoundaryContraction {
  int cut = 0;
  int rank = 1;  // Schmidt rank used (the C^B factor)
  MatC matrix;   // on C^d (x) C^rank, rows (s * rank + j)
};

/// cont(v) = Tr_{[1,i-1]} |ls(v)><ls(v)| for the i|i+1 cut; cut = n uses the
/// trivial bond factor.
BoundaryContraction boundary_contraction(const Mps& v, int cut);

/// The energy net M_eta = {-1, -1+eta, ..., 1, 1+eta}.
std::vector<double> energy_net(double eta);

/// Exhaustive boundary-contraction net: all matrices on C^d (x) C^B whose
/// entries have real and imaginary parts on a symmetric grid fine enough to
/// cover every PSD trace-<=1 matrix within xi in trace norm. Gated by a
/// cardinality cap.
std::vector<MatC> exhaustive_contraction_net(double xi, int d, int bond_rank,
                                             double cap = 2e4);

struct NetPoint {
  double y = 0.0;
  MatC x;
  std::string provenance;  // exhaustive | oracle_witness | oracle_low_energy |
                           // member | random
};

// Theoretical constants kept for reporting; the pipeline runs on cfg values.
inline double theoretical_c() { return 6.25e-54; }
inline double theoretical_c_prime() { return 1e-11; }
inline double f_of_g(int g) { return double(g) * (2.0 * g + 1.0); }
/// t with 99 * 2^(-t/99) = c eps^6 / f^4 (base-2 logs make the identity hold).
inline double theoretical_t(double epsilon, double f) {
  return 99.0 *
         (std::log2(99.0) + 4.0 * std::log2(f) - std::log2(theoretical_c()) -
          6.0 * std::log2(epsilon));
}
inline double theoretical_xi(double epsilon, double f) {
  return theoretical_c_prime() * epsilon / (f * (1.0 + theoretical_t(epsilon, f)));
}
/// Low-distinguishability overlap error (diagnostic evaluator).
inline double low_d_delta(double dist, double c_prime_over_f) {
  return 1.0 - (1.0 - c_prime_over_f - std::sqrt(dist)) / std::sqrt(1.0 - dist);
}
/// Eigenvalue-mass floor of the high-distinguishability lemma.
inline double high_d_mass_floor(int g) {
  return 1.0 - 1.0 / (10000.0 * g + 5000.0);
}

struct ViableCfg {
  std::string net_mode = "candidates";  // candidates | exhaustive
  double energy_spacing = 1.0;          // eta of M_eta
  double xi = 0.5;
  int random_candidates = 1;
  int low_energy_candidates = 2;
  double exhaustive_cap = 2e4;

  double eval_threshold = 0.0;  // 0 = paper default 1e-9 / g
  int bond_rank = 0;            // B for the contraction factor; 0 = auto
  int bond_rank_cap = 4;

  int truncate_rank = 64;  // P

  double gram_rel_tol = 1e-10;
  ipm::Options sdp;

  // configured per-stage targets (checked against oracle measurements)
  double s2_delta_target = 0.02;
  double s3_delta_target = 0.2;
  double s4_energy_target = 0.05;  // in units of epsilon
};

struct TrimPointRecord {
  std::string provenance;
  double y = 0.0;
  bool feasible = false;
  double objective = 0.0;
  int kept_eigenvectors = 0;
  double kept_mass = 0.0;
};

struct StageRecord {
  int h = 0, i = 0;
  std::string stage;
  int set_size = 0;
  Eigen::Index max_bond = 1;
  double s_bound = 0, b_bound = 0;
  std::string error_kind;
  double error_target = 0.0;
  std::optional<double> measured_overlap_error;
  std::optional<double> measured_energy_error;
  double wall_ms = 0.0;
  std::vector<TrimPointRecord> net_points;
  double high_d_mass_floor_value = 0.0;
};

struct SweepContext {
  const StandardHamiltonian* hamiltonian = nullptr;
  double epsilon = 1.0;
  double ground_energy_estimate = 0.0;  // E (or the oracle value at h = 1)
  const std::vector<Mps>* prev_states = nullptr;  // gamma_1..gamma_{h-1}
  const Spectrum* oracle = nullptr;               // may be null
  const AgspOperator* step_agsp = nullptr;
  const AgspOperator* final_agsp = nullptr;
  ViableCfg cfg;
  DetRng* rng = nullptr;
  /// Called after each sub-stage with the fresh set; may fill measurements
  /// and may throw StageError to abort.
  std::function<void(const ViableSet&, StageRecord&)> stage_hook;
};

ViableSet extend(const ViableSet& s, int phys_dim);

ViableSet trim(const ViableSet& s1, const std::vector<Mps>& recycled,
               const SweepContext& ctx, double left_energy_ref,
               StageRecord* record = nullptr);

ViableSet truncate_set(const ViableSet& s2, const std::vector<Mps>& recycled,
                       const ViableCfg& cfg);

ViableSet reduce(const ViableSet& s3, const AgspOperator& agsp,
                 const std::vector<Mps>& recycled);

ViableSet final_reduce(const ViableSet& s3, const AgspOperator& strong_agsp,
                       const std::vector<Mps>& prev, double eta, int g);

ViableSet step(const ViableSet& s_prev, const std::vector<Mps>& recycled,
               const SweepContext& ctx, double left_energy_ref,
               std::vector<StageRecord>* records = nullptr);

ViableSet final_step(const ViableSet& s_prev, const SweepContext& ctx,
                     double eta, int g, std::vector<StageRecord>* records = nullptr);

}  // namespace gsa
