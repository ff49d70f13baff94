#pragma once

// Approximate ground-space projectors: the Gaussian filter of H, and its
// low-bond-dimension approximation as a truncated, discretized Fourier
// integral over compressed propagators.

#include <optional>

#include "gsa/model.hpp"
#include "gsa/oracle.hpp"

namespace gsa {

struct AgspSchedule {
  double zeta = 1.0;    // strength target; filter width x = 33 - 8 ln zeta
  double epsilon = 1.0; // spectral-gap lower bound
  int n = 0;

  double x = 33.0;
  double zeta_prime = 0.0;  // zeta * epsilon / (240000 n)
  double budget = 0.0;      // operator-norm budget the schedule is built for
  bool desk_mode = false;   // budget == zeta_prime when false

  double time_cutoff = 0.0;  // T
  double time_step = 0.0;    // tau
  long long num_terms = 0;   // ceil(T / tau)
  double delta_t = 0.0;      // exp(-eps^2 T^2 / 2x), time-truncation budget
  double delta_d = 0.0;      // 4 eps tau / sqrt(2 pi x), discretization budget

  int bond_budget = 64;          // per-propagator bond cap
  double theoretical_T = 0.0;    // always the zeta_prime-built values
  double theoretical_tau = 0.0;
};

/// Appendix-style schedule with all budgets tied to zeta_prime.
AgspSchedule make_schedule(double zeta, double epsilon, int n);

/// Same closed forms, but T and tau built against a user budget instead of
/// the (impractically small) theoretical zeta_prime. The theoretical values
/// are still recorded.
AgspSchedule make_desk_schedule(double zeta, double epsilon, int n,
                                double budget, int bond_budget = 64);

struct AgspOperator {
  enum class Form { Dense, MpoForm };
  Form form = Form::Dense;
  MatC dense_form;
  Mpo mpo_form;
  AgspSchedule schedule;
  double eps0_ref = 0.0;

  // error-budget components of the MPO construction
  double propagator_error = 0.0;     // sum of |c_j| * measured propagator errors
  double compression_error = 0.0;    // accumulated sum-compression weight
  double symmetrization_change = 0.0;
  std::optional<double> dense_gap;   // measured ||A - K|| when certifiable

  double measured_budget() const {
    return schedule.delta_t + schedule.delta_d + propagator_error +
           compression_error;
  }
};

/// Exact filter A = exp[-x (H - eps0')^2 / (2 eps^2)] as a dense operator.
AgspOperator exact_agsp(const MatC& h_dense, double eps0_ref, double epsilon,
                        double zeta);

struct PropagatorResult {
  Mpo op;
  double measured_error = 0.0;  // dense ||U - exp(-iHt)||, when certifiable
  bool certified = false;
  int trotter_steps = 0;
};

/// U_B(t) approximating exp(-iHt): second-order Trotter splitting with
/// per-cut compression. Dense-certified for d^n <= 2^8; throws
/// BudgetExceededError when the tolerance is unreachable within the bond cap.
PropagatorResult propagator_mpo(const StandardHamiltonian& h, double t,
                                double target_err, int bond_cap = 64);

/// The summed, Hermitian-symmetrized approximate AGSP K as an MPO.
AgspOperator approx_agsp(const StandardHamiltonian& h, double eps0_ref,
                         const AgspSchedule& schedule);

struct ShrinkReport {
  VecR per_eigenvector;        // ||Op |E_j>|| for every oracle eigenvector
  double ground_retention_min = 0.0;
  double excited_shrink_max = 0.0;
};

ShrinkReport shrink_report(const AgspOperator& op, const Spectrum& spec);

/// Values of the symmetrized rectangle-rule filter at the given energies,
/// evaluated with exact propagators: (K + K^dag)/2 acting on an eigenvector
/// of energy lambda scales it by this value. `tail_bound`, when given,
/// receives a rigorous bound on the evaluation error (Poisson summation is
/// used once the term count gets large).
VecR rectangle_filter_values(const VecR& energies, const AgspSchedule& schedule,
                             double eps0_ref, double* tail_bound = nullptr);

/// Exact filter values exp(-x (lambda - eps0')^2 / (2 eps^2)).
VecR gaussian_filter_values(const VecR& energies, const AgspSchedule& schedule,
                            double eps0_ref);

}  // namespace gsa
