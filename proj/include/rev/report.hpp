#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rev/formula.hpp"
#include "rev/reversibility.hpp"
#include "rev/strips.hpp"

namespace rev {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolName = "revcheck";
inline constexpr const char* kToolVersion = "0.1.0";

struct CheckOptions {
    ModeKind mode = ModeKind::universal;
    std::optional<Formula> phi;       // mode == by_formula
    std::optional<PlanningTask> task; // mode == in_task
    SearchConfig config;
    std::optional<std::string> only_action; // restrict to a single action by name
    unsigned jobs = 1;
    bool timing = true; // include per-action time_ms in the report
};

/// Runs the selected decision procedure for every action (declaration order)
/// and assembles the JSON report. With jobs > 1 the per-action work is fanned
/// out to threads; report order stays declaration order.
nlohmann::ordered_json run_check(const Domain& d, const CheckOptions& opts);

/// Renders a run_check report as a small fixed-width table.
std::string render_table(const nlohmann::ordered_json& report);

struct CrosscheckOutcome {
    bool agree = false;
    nlohmann::ordered_json report;
};

/// Decides every action with decide_universal (exact length = horizon) and
/// independently with the simple-asp encoding through the external solver;
/// reports the symmetric difference of the two (action, plan) sets.
CrosscheckOutcome run_crosscheck(const Domain& d, std::size_t horizon,
                                 const std::string& solver_cmdline, std::size_t max_plans);

} // namespace rev
