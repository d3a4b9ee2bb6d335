#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rev/formula.hpp"
#include "rev/strips.hpp"

namespace rev {

enum class Status { reversible, irreversible, unknown_up_to_horizon };

enum class LengthMode { exact, up_to };

enum class ModeKind { universal, by_formula, explicit_set, in_task };

std::string to_string(Status s);
std::string to_string(LengthMode m);
std::string to_string(ModeKind m);

struct SearchConfig {
    std::size_t horizon = 1;                     // ≥ 0 (0 admits only the empty plan)
    LengthMode length_mode = LengthMode::up_to;  // exact length h, or all lengths 0..h
    std::size_t max_plans = 10;                  // ≥ 1; witness cap
    std::size_t enumeration_cap = 20;            // shared with enumerate_states
};

/// Outcome of one reversibility decision. `reversible` always comes with at
/// least one witness plan; `irreversible` is only reported when the procedure
/// is complete for the queried mode; otherwise `unknown_up_to_horizon`.
struct Verdict {
    std::string action;
    ModeKind mode = ModeKind::universal;
    std::string mode_detail;      // formula text / task name / set size
    std::size_t horizon = 0;
    LengthMode length_mode = LengthMode::up_to;
    Status status = Status::unknown_up_to_horizon;
    std::vector<Plan> witnesses;  // length-major, then action declaration order
    std::vector<std::string> diagnostics;
    bool vacuous = false;         // action applicable nowhere in S
    bool witness_cap_hit = false; // stopped at max_plans; more may exist
};

struct ReverseCheckFailure {
    enum class Kind { inapplicable_step, wrong_final_state };

    Kind kind = Kind::wrong_final_state;
    State start;      // the state the plan fails to restore
    std::size_t step; // failing plan step (inapplicable), or plan length
};

struct ReverseCheckResult {
    std::optional<ReverseCheckFailure> failure;

    bool ok() const { return !failure.has_value(); }
    explicit operator bool() const { return ok(); }
};

/// Definitional check: for every s ∈ S where a is applicable, p must be
/// applicable in γ(a, s) and lead back to s. Reports the first failure.
/// Vacuously true when a is applicable nowhere in S.
ReverseCheckResult check_reverse_plan(const Domain& d, const Action& a, const Plan& p,
                                      const std::vector<State>& states);

/// The facts a universal reverse plan may involve: pre(a).
FactSet relevant_facts(const Action& a);

/// True iff pre(a) ∪ add(a) ∪ del(a) ⊆ scope.
bool obeys_relevance(const Action& a, const FactSet& scope);

/// Decides uniform reversibility over all of 2^F. Uses the reduction to a
/// single start state: a relevance-obeying plan reverses a from every state
/// where a is applicable iff it reverses it from the state equal to pre(a).
/// Complete for up-to mode once cfg.horizon ≥ 2^|pre(a)|.
Verdict decide_universal(const Domain& d, std::size_t action_index, const SearchConfig& cfg);

/// Decides uniform S-reversibility for the states described by spec via
/// search over belief states (one current state per member of S where a is
/// applicable). Bounded by cfg.horizon; incomplete except for the relevance
/// shortcut when S covers every state where a is applicable.
Verdict decide_over_set(const Domain& d, std::size_t action_index, const StateSetSpec& spec,
                        const SearchConfig& cfg);

/// BFS closure of {task.init} under all applicable actions, in first-visit
/// order. Throws EnumerationCapExceeded when the closure would exceed `cap`
/// states.
std::vector<State> reachable_states(const PlanningTask& task, std::size_t cap);

/// decide_over_set for S = the reachable states of the task.
Verdict decide_in_task(const PlanningTask& task, std::size_t action_index,
                       const SearchConfig& cfg);

/// Independent oracle for decide_universal: literally enumerates every plan of
/// the configured lengths over ALL actions and checks it against ALL 2^F
/// states with check_reverse_plan. Requires |F| ≤ 12.
Verdict brute_force_universal(const Domain& d, std::size_t action_index,
                              const SearchConfig& cfg);

} // namespace rev
