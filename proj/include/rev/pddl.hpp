#pragma once

#include <string>
#include <vector>

#include "rev/strips.hpp"

namespace rev {

struct PddlSource {
    std::string text;
    std::string origin = "<string>"; // file path or "<stdin>"
};

/// Parses the propositional STRIPS fragment of a PDDL domain: zero-arity
/// predicates, positive conjunctive preconditions, add/delete effects.
/// Anything outside that fragment raises UnsupportedFeature; undeclared facts
/// raise UnknownFact; structural problems raise ParseError.
Domain parse_domain(const PddlSource& src, Wellformed mode = Wellformed::strict,
                    std::vector<std::string>* warnings = nullptr);

/// Parses a PDDL problem against an already-parsed domain. The problem's
/// (:domain ...) name must match; (:goal ...) may be absent (empty goal).
PlanningTask parse_problem(const PddlSource& src, const Domain& domain);

/// Inverse serializer: parse_domain(pretty_print(d)) == d for every valid d.
std::string pretty_print(const Domain& d);

struct PlaspFactSet {
    std::vector<std::string> lines; // one rule/fact per line, each ending in '.'

    std::string str() const;
};

/// Emits the plasp-style ASP representation of a domain: the boolean/type/
/// contains preamble, one variable/1 fact per domain fact, and per action the
/// guarded action/1, precondition/3, postcondition/4 rules.
PlaspFactSet emit_plasp_facts(const Domain& d);

/// Normalizes a plasp-style listing for comparison: joins continuation lines
/// (a rule continues until a line ends with '.'), collapses whitespace runs to
/// single spaces, and drops blank lines.
std::vector<std::string> plasp_normalize(const std::string& text);

} // namespace rev
