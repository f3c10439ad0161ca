#pragma once

// Subcommand implementations: validate the configuration against the owning
// module's preconditions, dispatch, and assemble a deterministic report.

#include "cli/config.hpp"
#include "cli/report.hpp"

namespace insulab::cli {

Report cmd_energy_ball(const RunConfig& cfg);
Report cmd_stability(const RunConfig& cfg);
Report cmd_eigen(const RunConfig& cfg);
Report cmd_fem_verify(const RunConfig& cfg);

Report dispatch(const RunConfig& cfg);

// Renders per cfg.format to cfg.out_path (stdout when empty).
void emit(const Report& report, const RunConfig& cfg);

}  // namespace insulab::cli
