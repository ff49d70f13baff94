#include "gsa/driver.hpp"

#include <algorithm>
#include <sstream>

#include "gsa/dense.hpp"

namespace gsa {

namespace {

struct Engine {
  RunConfig config;
  StandardHamiltonian hamiltonian;
  std::optional<Spectrum> spectrum;
  double epsilon = 1.0;
  double eps0_ref = 0.0;
  std::vector<std::string> warnings;
  DetRng rng;
  bool relaxed = false;  // overcount mode: record, never abort

  explicit Engine(const RunConfig& c)
      : config(c),
        hamiltonian(make_model(c.model.name, c.model.n, c.model.params)),
        rng(c.seed) {
    config.validate();
    if (config.oracle_enabled) {
      spectrum = diagonalize(hamiltonian, config.oracle_degeneracy_tol);
      epsilon = spectrum->gap;
      if (config.epsilon &&
          std::abs(*config.epsilon - epsilon) > 0.1 * epsilon) {
        std::ostringstream w;
        w << "configured epsilon " << *config.epsilon
          << " differs from the measured gap " << epsilon
          << " by more than 10%; using the measured gap";
        warnings.push_back(w.str());
      }
      eps0_ref = spectrum->eps0;
    } else {
      if (!config.epsilon)
        throw ArgumentError("epsilon must be configured when the oracle is off");
      epsilon = *config.epsilon;
      eps0_ref = window_ground_energy(hamiltonian, 1, hamiltonian.n());
    }
    if (epsilon <= 0.0) throw ArgumentError("vanishing spectral gap");
  }

  AgspBuildInfo info_of(const AgspOperator& op) const {
    AgspBuildInfo out;
    out.schedule = op.schedule;
    out.propagator_error = op.propagator_error;
    out.compression_error = op.compression_error;
    out.symmetrization_change = op.symmetrization_change;
    out.dense_gap = op.dense_gap;
    out.measured_budget = op.measured_budget();
    out.max_bond = op.mpo_form.max_bond();
    return out;
  }

  AgspOperator build_step_agsp(double reference_energy) const {
    auto sched = make_desk_schedule(config.step_zeta, epsilon, hamiltonian.n(),
                                    config.step_budget, config.agsp_bond_cap);
    return approx_agsp(hamiltonian, reference_energy, sched);
  }

  AgspOperator build_final_agsp(double reference_energy) const {
    double f = f_of_g(config.g);
    double zeta_final = std::min(1.0, config.eta * config.eta / (4.0 * f));
    auto sched = make_desk_schedule(zeta_final, epsilon, hamiltonian.n(),
                                    config.final_budget, config.agsp_bond_cap);
    return approx_agsp(hamiltonian, reference_energy, sched);
  }

  // Oracle-side measurement of a stage: best ground overlap and least energy
  // over span(states) (x) (right half), orthogonal to the previous states.
  void measure_stage(const ViableSet& set, const std::vector<Mps>& prev,
                     StageRecord& rec) {
    if (!spectrum) return;
    int n = hamiltonian.n(), d = hamiltonian.d();
    Eigen::Index dl = dense::ipow(d, set.i);
    Eigen::Index dr = dense::ipow(d, n - set.i);
    if (set.states.empty()) return;

    MatC members(dl, static_cast<Eigen::Index>(set.states.size()));
    for (std::size_t k = 0; k < set.states.size(); ++k)
      members.col(static_cast<Eigen::Index>(k)) = set.states[k].dense();
    MatC left = dense::orthonormalize(members, 1e-10);

    MatC basis(dl * dr, left.cols() * dr);
    basis.setZero();
    for (Eigen::Index c = 0; c < left.cols(); ++c)
      for (Eigen::Index rr = 0; rr < dr; ++rr) {
        for (Eigen::Index a = 0; a < dl; ++a)
          basis(a * dr + rr, c * dr + rr) = left(a, c);
      }
    for (const auto& g : prev) {
      VecC gd = g.dense();
      basis -= gd * (gd.adjoint() * basis);
    }
    MatC on = dense::orthonormalize(basis, 1e-8);
    if (on.cols() == 0) return;

    MatC gsub = on.adjoint() * spectrum->ground_projector * on;
    auto eg = dense::eigh(gsub);
    double best_overlap = std::sqrt(std::max(0.0, eg.values.maxCoeff()));
    rec.measured_overlap_error = 1.0 - best_overlap;

    MatC hsub = on.adjoint() * hamiltonian.dense() * on;
    auto eh = dense::eigh(hsub);
    rec.measured_energy_error = (eh.values.minCoeff() - spectrum->eps0) / epsilon;

    if (config.stage_abort && !relaxed) {
      if (rec.error_kind == "delta" && rec.measured_overlap_error &&
          *rec.measured_overlap_error > rec.error_target + 1e-9)
        throw StageError(rec.h, rec.i, rec.stage,
                         "measured witness overlap error exceeds the stage target");
      if (rec.error_kind == "Delta" && rec.measured_energy_error &&
          *rec.measured_energy_error > rec.error_target + 1e-9)
        throw StageError(rec.h, rec.i, rec.stage,
                         "measured witness energy error exceeds the stage target");
    }
  }

  SweepContext make_context(const std::vector<Mps>* prev,
                            const AgspOperator* step_op,
                            const AgspOperator* final_op, double e_estimate) {
    SweepContext ctx;
    ctx.hamiltonian = &hamiltonian;
    ctx.epsilon = epsilon;
    ctx.ground_energy_estimate = e_estimate;
    ctx.prev_states = prev;
    ctx.oracle = spectrum ? &*spectrum : nullptr;
    ctx.step_agsp = step_op;
    ctx.final_agsp = final_op;
    ctx.cfg = config.viable;
    ctx.rng = &rng;
    ctx.stage_hook = [this, prev](const ViableSet& s, StageRecord& r) {
      static const std::vector<Mps> empty;
      measure_stage(s, prev ? *prev : empty, r);
    };
    return ctx;
  }

  // one full sweep for state h (prev holds gamma_1..gamma_{h-1})
  Mps run_pass(int h, const std::vector<Mps>& prev, const AgspOperator& step_op,
               const AgspOperator& final_op, double e_estimate,
               const Mps* gamma1, std::vector<StageRecord>* records) {
    int n = hamiltonian.n();
    auto ctx = make_context(&prev, &step_op, &final_op, e_estimate);

    ViableSet s;
    s.h = h;
    for (int i = 1; i <= n - 1; ++i) {
      double e_i = left_energy_reference(i, gamma1);
      auto l = schmidt_vecs(i, prev);
      s = step(s, l, ctx, e_i, records);
    }
    s = final_step(s, ctx, config.eta, config.g, records);
    return approx_ground_state(s, hamiltonian, prev, e_estimate, epsilon,
                               config.eta, config.g, !relaxed);
  }

  // E_i: gamma_1's prefix energy, the oracle's, or the least possible value
  double left_energy_reference(int i, const Mps* gamma1) {
    if (i < 2) return 0.0;  // H_[1,1] is the zero operator
    if (gamma1) return expectation(*gamma1, hamiltonian.prefix_mpo(i));
    if (spectrum) {
      VecC g0 = spectrum->eigenvectors.col(0);
      MatC hl = dense::kron(
          hamiltonian.window_dense(1, i),
          dense::identity(dense::ipow(hamiltonian.d(), hamiltonian.n() - i)));
      return (g0.adjoint() * hl * g0)(0).real();
    }
    return window_ground_energy(hamiltonian, 1, i);
  }

  GroundSpaceResult run() {
    GroundSpaceResult out;
    out.g = config.g;
    out.epsilon_used = epsilon;
    out.warnings = warnings;

    AgspOperator step_op = build_step_agsp(eps0_ref);
    AgspOperator final_op = build_final_agsp(eps0_ref);

    std::vector<Mps> states;
    Mps gamma1 = run_pass(1, {}, step_op, final_op, eps0_ref, nullptr,
                          &out.stages);
    states.push_back(gamma1);

    double e_estimate = expectation(gamma1, hamiltonian.mpo_form());
    out.eps0_reference = e_estimate;
    if (std::abs(e_estimate - eps0_ref) > 1e-6 * std::max(1.0, std::abs(eps0_ref))) {
      step_op = build_step_agsp(e_estimate);
      final_op = build_final_agsp(e_estimate);
    }
    out.step_agsp = info_of(step_op);
    out.final_agsp = info_of(final_op);

    for (int h = 2; h <= config.g; ++h) {
      Mps gamma = run_pass(h, states, step_op, final_op, e_estimate, &gamma1,
                           &out.stages);
      states.push_back(gamma);
    }

    out.states = states;
    for (const auto& s : states) {
      double e = expectation(s, hamiltonian.mpo_form());
      out.energies.push_back(e);
      out.energies_original.push_back(hamiltonian.metadata().to_original(e));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a)
      for (std::size_t b = 0; b < states.size(); ++b) {
        double target = (a == b) ? 1.0 : 0.0;
        worst = std::max(worst,
                         std::abs(std::abs(overlap(states[a], states[b])) - target));
      }
    out.ortho_residual = worst;

    if (spectrum) {
      Eigen::Index dim = spectrum->ground_projector.rows();
      MatC upsilon = MatC::Zero(dim, dim);
      for (const auto& s : states) {
        VecC v = s.dense();
        upsilon += v * v.adjoint();
        out.ground_overlaps.push_back(ground_overlap(v, *spectrum));
      }
      auto dist = projector_distance(spectrum->ground_projector, upsilon);
      out.frobenius_error = dist.frobenius;
      out.trace_error = dist.trace;
    }
    return out;
  }
};

}  // namespace

std::vector<Mps> schmidt_vecs(int cut, const std::vector<Mps>& states) {
  std::vector<Mps> out;
  for (const auto& s : states) {
    if (cut == s.length()) {
      out.push_back(normalized(s));
      continue;
    }
    auto sd = schmidt_decompose(s, cut);
    for (Eigen::Index j = 0; j < sd.coefficients.size(); ++j)
      if (sd.coefficients(j) >= 1e-12) out.push_back(sd.left_vectors[j]);
  }
  return out;
}

Mps approx_ground_state(const ViableSet& final_set, const StandardHamiltonian& h,
                        const std::vector<Mps>& prev, double eps0_ref,
                        double epsilon, double eta, int g,
                        bool enforce_demix_preconditions) {
  if (final_set.states.empty())
    throw ArgumentError("empty final viable set");
  const Mpo& hmpo = h.mpo_form();
  SpanBasis span(final_set.states, {{"H", &hmpo}});
  std::vector<VecC> prev_coords;
  for (const auto& p : prev) {
    auto co = span.express(p);
    if (co.residual > 1e-8)
      throw ArgumentError("previous state not representable in the final span");
    prev_coords.push_back(co.c);
  }
  auto sol = solve_gsa_program(span.projected("H"), prev_coords);
  if (sol.status != "optimal")
    throw SolverError("ground-state program failed: " + sol.status);
  VecC lead = demix(sol.sigma, span.projected("H"), eps0_ref, epsilon,
                    eta * eta / (4.0 * g), g, enforce_demix_preconditions);
  Mps candidate = normalized(span.realize(lead));
  if (prev.empty()) return candidate;
  return orthogonalize(candidate, prev);
}

Mps nondegenerate_gsa(const RunConfig& config) {
  RunConfig c = config;
  c.g = std::max(1, c.g);
  Engine engine(c);
  AgspOperator step_op = engine.build_step_agsp(engine.eps0_ref);
  AgspOperator final_op = engine.build_final_agsp(engine.eps0_ref);
  std::vector<StageRecord> records;
  return engine.run_pass(1, {}, step_op, final_op, engine.eps0_ref, nullptr,
                         &records);
}

GroundSpaceResult degenerate_gsa(const RunConfig& config) {
  Engine engine(config);
  return engine.run();
}

OvercountReport overcount_check(const RunConfig& config) {
  Engine engine(config);
  engine.relaxed = true;
  auto result = engine.run();
  OvercountReport out;
  out.threshold = config.herald_threshold;
  double eps0 = engine.spectrum ? engine.spectrum->eps0
                                : *std::min_element(result.energies.begin(),
                                                    result.energies.end());
  for (std::size_t j = 0; j < result.energies.size(); ++j) {
    out.state_energies.push_back(result.energies[j]);
    double excess = (result.energies[j] - eps0) / engine.epsilon;
    out.excess.push_back(excess);
    if (excess > out.threshold && !out.herald) {
      out.herald = true;
      out.first_flagged = static_cast<int>(j) + 1;
    }
  }
  return out;
}

}  // namespace gsa
