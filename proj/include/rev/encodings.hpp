#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rev/formula.hpp"
#include "rev/strips.hpp"

namespace rev {

enum class EncodingKind { simple_asp, simple_elp, general_asp, general_elp };

std::string to_string(EncodingKind k);
std::optional<EncodingKind> encoding_kind_from(const std::string& name); // e.g. "simple-asp"

struct EncodedProgram {
    EncodingKind kind = EncodingKind::simple_asp;
    std::size_t horizon = 0;
    std::string text;                    // facts + rule block + horizon constant (+ hook)
    std::optional<std::string> phi_hook; // compiled constraint text, when a formula was given
};

/// Assembles a solver-ready program: `#const horizon=H.`, the plasp facts of
/// d, and the fixed rule block of the kind. A formula narrows the general
/// kinds to φ-mode via compile_phi_hook; the simple kinds reject it.
EncodedProgram emit(EncodingKind kind, const Domain& d, std::size_t horizon,
                    const std::optional<Formula>& phi = std::nullopt);

/// Compiles φ into rules over the time-0 state guess: `phi_violated` is
/// derivable iff the guessed state falsifies φ (negation normal form; one
/// auxiliary predicate per disjunction, conjunction via rule bodies). The
/// final line is `:- phi_violated.` for general_elp and
/// `reversePlan :- phi_violated.` for general_asp.
std::string compile_phi_hook(EncodingKind kind, const Formula& phi, const Domain& d);

struct SolverModel {
    std::vector<std::string> chosen;                          // expect exactly one
    std::vector<std::pair<std::size_t, std::string>> occurs;  // raw (step, action) atoms
};

struct SolverResult {
    std::vector<SolverModel> models;
    std::string raw_stdout;
    std::string raw_stderr;
    int exit_code = 0;
    std::size_t horizon = 0;
};

/// Writes the program to a temp file and runs the solver command template
/// ({program} and {all_models} placeholders; {all_models} becomes "0" to
/// request every model). Understands both clingo's JSON output (--outf=2) and
/// plain "Answer: N" text; exit codes 0/10/20/30 count as success.
SolverResult run_external_solver(const EncodedProgram& prog, const std::string& solver_cmdline);

/// Per model: step 1 must repeat the chosen action and steps must cover
/// 1..horizon+1 exactly; the plan is steps 2..horizon+1 in order.
std::vector<std::pair<std::string, std::vector<std::string>>>
extract_plans(const SolverResult& result);

} // namespace rev
