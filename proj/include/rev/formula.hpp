#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rev/strips.hpp"

namespace rev {

/// Propositional formula over a Domain's facts (atoms hold fact indices).
/// Conjunctions and disjunctions always have at least one child.
class Formula {
public:
    enum class Kind {
        constant_true,
        constant_false,
        atom,
        negation,
        conjunction,
        disjunction,
    };

    static Formula top() { return Formula(Kind::constant_true); }
    static Formula bottom() { return Formula(Kind::constant_false); }
    static Formula atom(std::size_t fact);
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> children);
    static Formula disjunction(std::vector<Formula> children);

    Kind kind() const { return kind_; }
    std::size_t fact() const { return fact_; } // atom only
    const std::vector<Formula>& children() const { return children_; }

    bool operator==(const Formula&) const = default;

private:
    explicit Formula(Kind k) : kind_(k) {}

    Kind kind_;
    std::size_t fact_ = 0;
    std::vector<Formula> children_;
};

/// Standard propositional satisfaction; Atom(f) holds iff f ∈ s.
bool eval(const Formula& phi, const State& s);

/// Parses the s-expression syntax: a bare fact name, `true`, `false`,
/// `(not φ)`, `(and φ ...)`, `(or φ ...)`.
Formula parse_formula(const std::string& text, const Domain& d,
                      const std::string& origin = "<formula>");

/// Serializes back to the concrete syntax accepted by parse_formula.
std::string to_text(const Formula& phi, const Domain& d);

/// Describes a state set S for uniform S-reversibility: all of 2^F, the models
/// of a formula, an explicit list, or the reachable states of a task.
struct StateSetSpec {
    enum class Kind { universe, by_formula, explicit_set, reachable_of };

    Kind kind = Kind::universe;
    std::optional<Formula> formula;       // by_formula
    std::vector<State> states;            // explicit_set
    std::optional<PlanningTask> task;     // reachable_of

    static StateSetSpec universe() { return {}; }
    static StateSetSpec by_formula(Formula phi);
    static StateSetSpec explicit_set(std::vector<State> states);
    static StateSetSpec reachable_of(PlanningTask task);

    std::string describe() const; // short label for reports
};

/// Enumerates S in a deterministic order: states read as binary numbers over
/// the canonical fact order, ascending (fact 0 is the least significant bit).
/// universe/by_formula require |F| ≤ cap; reachable_of caps the closure size.
std::vector<State> enumerate_states(const StateSetSpec& spec, const Domain& d,
                                    std::size_t cap = 20);

} // namespace rev
