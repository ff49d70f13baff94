#pragma once

// Machine-readable run reports. The JSON report is byte-deterministic for a
// fixed config and seed; wall-clock timings go only into the CSV side table.

#include <string>

#include "gsa/driver.hpp"
#include "gsa/oracle.hpp"

namespace gsa {

std::string render_run_report(const RunConfig& config,
                              const StandardHamiltonian& model,
                              const GroundSpaceResult& result);

/// Flat per-stage table: h,i,stage,set_size,max_bond,measured_error,wall_ms
std::string render_stage_csv(const std::vector<StageRecord>& stages);

std::string render_spectrum_report(const RunConfig& config,
                                   const StandardHamiltonian& model,
                                   const Spectrum& spec);

std::string render_overcount_report(const RunConfig& config,
                                    const OvercountReport& report);

}  // namespace gsa
