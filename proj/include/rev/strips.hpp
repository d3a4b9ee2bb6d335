#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rev/error.hpp"

namespace rev {

/// Fixed-universe bitset over the fact indices of one Domain. Two FactSets are
/// only comparable when their universe sizes match.
class FactSet {
public:
    FactSet() = default;
    explicit FactSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static FactSet from_mask(std::size_t universe, std::uint64_t mask);

    std::size_t universe() const { return universe_; }

    bool contains(std::size_t fact) const {
        return (words_[fact >> 6] >> (fact & 63)) & 1u;
    }
    void insert(std::size_t fact) { words_[fact >> 6] |= std::uint64_t{1} << (fact & 63); }
    void erase(std::size_t fact) { words_[fact >> 6] &= ~(std::uint64_t{1} << (fact & 63)); }

    bool subset_of(const FactSet& other) const;
    bool intersects(const FactSet& other) const;
    std::size_t count() const;
    bool empty() const;

    FactSet& operator|=(const FactSet& other);
    FactSet& operator&=(const FactSet& other);
    FactSet& operator-=(const FactSet& other);

    friend FactSet operator|(FactSet a, const FactSet& b) { return a |= b; }
    friend FactSet operator&(FactSet a, const FactSet& b) { return a &= b; }
    friend FactSet operator-(FactSet a, const FactSet& b) { return a -= b; }

    bool operator==(const FactSet&) const = default;

    /// Numeric order with fact 0 as the least significant bit.
    int compare_as_number(const FactSet& other) const;

    std::vector<std::size_t> indices() const;
    std::size_t hash() const;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct FactSetHash {
    std::size_t operator()(const FactSet& s) const { return s.hash(); }
};

using State = FactSet;

/// STRIPS action over one Domain's fact universe. Well-formed actions satisfy
/// add ∩ del = ∅ and pre ∩ add = ∅; del may delete facts outside pre.
struct Action {
    std::string name;
    FactSet pre;
    FactSet add;
    FactSet del;
};

/// Name-level description of a domain, prior to interning and validation.
struct ActionSpec {
    std::string name;
    std::vector<std::string> pre;
    std::vector<std::string> add;
    std::vector<std::string> del;
};

struct DomainSpec {
    std::string name;
    std::vector<std::string> facts;
    std::vector<ActionSpec> actions;
};

enum class ViolationKind {
    duplicate_fact_name,
    duplicate_action_name,
    unknown_fact,
    add_del_overlap,
    pre_add_overlap,
    bad_name,
};

struct Violation {
    ViolationKind kind;
    std::string subject;            // action name, or fact name for name-level issues
    std::vector<std::string> facts; // offending fact set, where applicable

    std::string message() const;
};

enum class Wellformed { strict, lenient };

class Domain {
public:
    Domain() = default;

    const std::string& name() const { return name_; }
    std::size_t num_facts() const { return facts_.size(); }
    const std::vector<std::string>& fact_names() const { return facts_; }
    const std::string& fact_name(std::size_t i) const { return facts_[i]; }
    std::optional<std::size_t> fact_index(std::string_view name) const;

    const std::vector<Action>& actions() const { return actions_; }
    const Action& action(std::size_t i) const { return actions_[i]; }
    std::optional<std::size_t> action_index(std::string_view name) const;

    State empty_state() const { return State(facts_.size()); }
    /// Builds a set from fact names; throws UnknownFact for undeclared names.
    FactSet set_of(const std::vector<std::string>& names) const;
    std::vector<std::string> names_of(const FactSet& set) const;

    DomainSpec to_spec() const;

    bool operator==(const Domain& other) const;

private:
    friend Domain build_domain(const DomainSpec&, Wellformed, std::vector<std::string>*);

    std::string name_;
    std::vector<std::string> facts_;
    std::unordered_map<std::string, std::size_t> fact_index_;
    std::vector<Action> actions_;
    std::unordered_map<std::string, std::size_t> action_index_;
};

/// Reports every well-formedness violation in declaration order; an empty
/// result means build_domain(spec, strict) would succeed.
std::vector<Violation> validate_domain(const DomainSpec& spec);
std::vector<Violation> validate_domain(const Domain& d);

/// Interns the spec into a Domain. In strict mode any violation is refused; in
/// lenient mode pre ∩ add collisions are dropped from add (reported through
/// `warnings`), everything else is still refused.
Domain build_domain(const DomainSpec& spec, Wellformed mode = Wellformed::strict,
                    std::vector<std::string>* warnings = nullptr);

struct PlanningTask {
    Domain domain;
    std::string name;
    State init;
    FactSet goal;
};

/// Sequence of indices into Domain::actions(); may be empty.
struct Plan {
    std::vector<std::size_t> steps;

    bool operator==(const Plan&) const = default;
    std::size_t length() const { return steps.size(); }
};

std::vector<std::string> plan_action_names(const Domain& d, const Plan& p);

bool is_applicable(const Action& a, const State& s);

/// Facts of pre(a) missing from s.
FactSet missing_preconditions(const Action& a, const State& s);

/// γ(a, s) = (s \ del(a)) ∪ add(a). Throws PreconditionViolated if a is not
/// applicable in s.
State apply(const Domain& d, const Action& a, const State& s);

struct InapplicableAt {
    std::size_t step; // 0-based index into the plan
    std::string action;
    std::vector<std::string> missing;
};

using SequenceOutcome = std::variant<State, InapplicableAt>;

/// Applies the plan left to right; the empty plan is the identity.
SequenceOutcome apply_sequence(const Domain& d, const Plan& p, State s);

} // namespace rev
