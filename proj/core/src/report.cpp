#include "gsa/report.hpp"

#include <sstream>

#include <json.hpp>

namespace gsa {

namespace {

using json = nlohmann::ordered_json;

json schedule_json(const AgspSchedule& s) {
  return json{{"zeta", s.zeta},
              {"epsilon", s.epsilon},
              {"x", s.x},
              {"zeta_prime_theoretical", s.zeta_prime},
              {"budget", s.budget},
              {"desk_mode", s.desk_mode},
              {"time_cutoff", s.time_cutoff},
              {"time_step", s.time_step},
              {"num_terms", s.num_terms},
              {"delta_t", s.delta_t},
              {"delta_d", s.delta_d},
              {"bond_budget", s.bond_budget},
              {"theoretical_time_cutoff", s.theoretical_T},
              {"theoretical_time_step", s.theoretical_tau}};
}

json agsp_json(const AgspBuildInfo& a) {
  json j{{"schedule", schedule_json(a.schedule)},
         {"propagator_error", a.propagator_error},
         {"compression_error", a.compression_error},
         {"symmetrization_change", a.symmetrization_change},
         {"measured_budget", a.measured_budget},
         {"max_bond", a.max_bond}};
  if (a.dense_gap) j["dense_gap"] = *a.dense_gap;
  return j;
}

json stage_json(const StageRecord& r) {
  json j{{"h", r.h},
         {"i", r.i},
         {"stage", r.stage},
         {"set_size", r.set_size},
         {"max_bond", r.max_bond},
         {"s_bound", r.s_bound},
         {"b_bound", r.b_bound},
         {"error_kind", r.error_kind},
         {"error_target", r.error_target}};
  if (r.measured_overlap_error) j["measured_overlap_error"] = *r.measured_overlap_error;
  if (r.measured_energy_error) j["measured_energy_error"] = *r.measured_energy_error;
  if (!r.net_points.empty()) {
    json pts = json::array();
    for (const auto& p : r.net_points)
      pts.push_back(json{{"provenance", p.provenance},
                         {"y", p.y},
                         {"feasible", p.feasible},
                         {"objective", p.objective},
                         {"kept_eigenvectors", p.kept_eigenvectors},
                         {"kept_mass", p.kept_mass}});
    j["net_points"] = pts;
    j["high_d_mass_floor"] = r.high_d_mass_floor_value;
  }
  return j;
}

json model_json(const StandardHamiltonian& model) {
  json shifts = json::array();
  for (double s : model.metadata().term_shifts) shifts.push_back(s);
  return json{{"n", model.n()},
              {"d", model.d()},
              {"standardization_scale", model.metadata().scale},
              {"standardization_shift", model.metadata().total_shift()},
              {"term_shifts", shifts}};
}

json theory_json(int g, double epsilon) {
  double f = f_of_g(g);
  return json{{"c", theoretical_c()},
              {"c_prime", theoretical_c_prime()},
              {"f", f},
              {"t", theoretical_t(epsilon, f)},
              {"xi", theoretical_xi(epsilon, f)},
              {"truncation_rank_formula", "800 n B_{1/800n} = n^{1+o(1)}"},
              {"bond_rank_formula",
               "B_delta = 2^{O(eps^-1 + eps^-1/4 log^3/4 delta^-1)}"}};
}

}  // namespace

std::string render_run_report(const RunConfig& config,
                              const StandardHamiltonian& model,
                              const GroundSpaceResult& result) {
  json j;
  j["kind"] = "run";
  j["config"] = canonical_config(config);
  j["model"] = model_json(model);
  j["epsilon_used"] = result.epsilon_used;
  j["eps0_reference"] = result.eps0_reference;
  j["g"] = result.g;
  j["theoretical_constants"] = theory_json(result.g, result.epsilon_used);
  j["agsp"] = json{{"step", agsp_json(result.step_agsp)},
                   {"final", agsp_json(result.final_agsp)}};

  json stages = json::array();
  for (const auto& s : result.stages) stages.push_back(stage_json(s));
  j["stages"] = stages;

  json res;
  res["energies"] = result.energies;
  res["energies_original_units"] = result.energies_original;
  res["orthonormality_residual"] = result.ortho_residual;
  json bonds = json::array();
  for (const auto& s : result.states) bonds.push_back(s.max_bond());
  res["state_max_bonds"] = bonds;
  if (result.frobenius_error) {
    res["frobenius_error"] = *result.frobenius_error;
    res["trace_error"] = *result.trace_error;
    res["ground_overlaps"] = result.ground_overlaps;
  }
  j["result"] = res;
  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

std::string render_stage_csv(const std::vector<StageRecord>& stages) {
  std::ostringstream out;
  out.precision(17);
  out << "h,i,stage,set_size,max_bond,measured_error,wall_ms\n";
  for (const auto& r : stages) {
    double err = 0.0;
    if (r.error_kind == "delta" && r.measured_overlap_error)
      err = *r.measured_overlap_error;
    else if (r.measured_energy_error)
      err = *r.measured_energy_error;
    out << r.h << "," << r.i << "," << r.stage << "," << r.set_size << ","
        << r.max_bond << "," << err << "," << r.wall_ms << "\n";
  }
  return out.str();
}

std::string render_spectrum_report(const RunConfig& config,
                                   const StandardHamiltonian& model,
                                   const Spectrum& spec) {
  json j;
  j["kind"] = "spectrum";
  j["config"] = canonical_config(config);
  j["model"] = model_json(model);
  j["eps0"] = spec.eps0;
  j["eps1"] = spec.eps1;
  j["gap"] = spec.gap;
  j["degeneracy"] = spec.degeneracy;
  j["degeneracy_tol"] = spec.degeneracy_tol;
  std::vector<double> evs(spec.eigenvalues.data(),
                          spec.eigenvalues.data() + spec.eigenvalues.size());
  j["eigenvalues"] = evs;
  std::vector<double> evs_orig;
  for (double e : evs) evs_orig.push_back(model.metadata().to_original(e));
  j["eigenvalues_original_units"] = evs_orig;
  return j.dump(2) + "\n";
}

std::string render_overcount_report(const RunConfig& config,
                                    const OvercountReport& report) {
  json j;
  j["kind"] = "overcount";
  j["config"] = canonical_config(config);
  j["state_energies"] = report.state_energies;
  j["excess_over_gap"] = report.excess;
  j["threshold"] = report.threshold;
  j["herald"] = report.herald;
  j["first_flagged_state"] = report.first_flagged;
  return j.dump(2) + "\n";
}

}  // namespace gsa
