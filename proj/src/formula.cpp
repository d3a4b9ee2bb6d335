#include "rev/formula.hpp"

#include <algorithm>

#include "rev/reversibility.hpp"
#include "rev/sexpr.hpp"

namespace rev {

Formula Formula::atom(std::size_t fact) {
    Formula f(Kind::atom);
    f.fact_ = fact;
    return f;
}

Formula Formula::negation(Formula child) {
    Formula f(Kind::negation);
    f.children_.push_back(std::move(child));
    return f;
}

Formula Formula::conjunction(std::vector<Formula> children) {
    if (children.empty()) throw Error("conjunction needs at least one child");
    Formula f(Kind::conjunction);
    f.children_ = std::move(children);
    return f;
}

Formula Formula::disjunction(std::vector<Formula> children) {
    if (children.empty()) throw Error("disjunction needs at least one child");
    Formula f(Kind::disjunction);
    f.children_ = std::move(children);
    return f;
}

bool eval(const Formula& phi, const State& s) {
    switch (phi.kind()) {
    case Formula::Kind::constant_true:
        return true;
    case Formula::Kind::constant_false:
        return false;
    case Formula::Kind::atom:
        if (phi.fact() >= s.universe()) throw UniverseMismatch(phi.fact() + 1, s.universe());
        return s.contains(phi.fact());
    case Formula::Kind::negation:
        return !eval(phi.children()[0], s);
    case Formula::Kind::conjunction:
        return std::all_of(phi.children().begin(), phi.children().end(),
                           [&](const Formula& c) { return eval(c, s); });
    case Formula::Kind::disjunction:
        return std::any_of(phi.children().begin(), phi.children().end(),
                           [&](const Formula& c) { return eval(c, s); });
    }
    throw Error("corrupt formula node");
}

namespace {

Formula convert(const sexpr::Node& n, const Domain& d, const std::string& origin) {
    using sexpr::Node;
    if (n.kind == Node::Kind::symbol) {
        if (n.text == "true") return Formula::top();
        if (n.text == "false") return Formula::bottom();
        auto i = d.fact_index(n.text);
        if (!i) throw UnknownFact(origin, n.line, n.col, n.text);
        return Formula::atom(*i);
    }
    if (n.items.empty() || n.items[0].kind != Node::Kind::symbol)
        throw ParseError(origin, n.line, n.col, "expected (not|and|or ...)");
    const std::string& head = n.items[0].text;
    auto rest = [&] {
        std::vector<Formula> out;
        for (std::size_t i = 1; i < n.items.size(); ++i)
            out.push_back(convert(n.items[i], d, origin));
        return out;
    };
    if (head == "not") {
        if (n.items.size() != 2)
            throw ParseError(origin, n.line, n.col, "(not ...) takes exactly one argument");
        return Formula::negation(convert(n.items[1], d, origin));
    }
    if (head == "and" || head == "or") {
        if (n.items.size() < 2)
            throw ParseError(origin, n.line, n.col, "(" + head + " ...) needs an argument");
        return head == "and" ? Formula::conjunction(rest()) : Formula::disjunction(rest());
    }
    // A fact name in operator position would be (name), i.e. a stray arity.
    throw ParseError(origin, n.line, n.col,
                     "unknown connective '" + head + "' (atoms are bare names)");
}

} // namespace

Formula parse_formula(const std::string& text, const Domain& d, const std::string& origin) {
    auto roots = sexpr::parse(text, origin);
    if (roots.size() != 1)
        throw ParseError(origin, 1, 1, "expected exactly one formula");
    return convert(roots[0], d, origin);
}

std::string to_text(const Formula& phi, const Domain& d) {
    switch (phi.kind()) {
    case Formula::Kind::constant_true:
        return "true";
    case Formula::Kind::constant_false:
        return "false";
    case Formula::Kind::atom:
        return d.fact_name(phi.fact());
    case Formula::Kind::negation:
        return "(not " + to_text(phi.children()[0], d) + ")";
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        std::string s = phi.kind() == Formula::Kind::conjunction ? "(and" : "(or";
        for (const auto& c : phi.children()) s += " " + to_text(c, d);
        return s + ")";
    }
    }
    throw Error("corrupt formula node");
}

StateSetSpec StateSetSpec::by_formula(Formula phi) {
    StateSetSpec s;
    s.kind = Kind::by_formula;
    s.formula = std::move(phi);
    return s;
}

StateSetSpec StateSetSpec::explicit_set(std::vector<State> states) {
    StateSetSpec s;
    s.kind = Kind::explicit_set;
    s.states = std::move(states);
    return s;
}

StateSetSpec StateSetSpec::reachable_of(PlanningTask task) {
    StateSetSpec s;
    s.kind = Kind::reachable_of;
    s.task = std::move(task);
    return s;
}

std::string StateSetSpec::describe() const {
    switch (kind) {
    case Kind::universe:
        return "universe";
    case Kind::by_formula:
        return "formula";
    case Kind::explicit_set:
        return "explicit(" + std::to_string(states.size()) + ")";
    case Kind::reachable_of:
        return "reachable(" + (task ? task->name : std::string("?")) + ")";
    }
    return "?";
}

namespace {

std::vector<State> sorted_unique(std::vector<State> states) {
    std::sort(states.begin(), states.end(),
              [](const State& a, const State& b) { return a.compare_as_number(b) < 0; });
    states.erase(std::unique(states.begin(), states.end()), states.end());
    return states;
}

} // namespace

std::vector<State> enumerate_states(const StateSetSpec& spec, const Domain& d, std::size_t cap) {
    switch (spec.kind) {
    case StateSetSpec::Kind::explicit_set: {
        for (const auto& s : spec.states)
            if (s.universe() != d.num_facts())
                throw UniverseMismatch(s.universe(), d.num_facts());
        return sorted_unique(spec.states);
    }
    case StateSetSpec::Kind::reachable_of: {
        if (!spec.task) throw Error("reachable_of spec lacks a task");
        if (spec.task->domain.num_facts() != d.num_facts())
            throw UniverseMismatch(spec.task->domain.num_facts(), d.num_facts());
        std::size_t limit = cap >= 63 ? SIZE_MAX : (std::size_t{1} << cap);
        return sorted_unique(reachable_states(*spec.task, limit));
    }
    case StateSetSpec::Kind::universe:
    case StateSetSpec::Kind::by_formula: {
        std::size_t n = d.num_facts();
        if (n > cap || n >= 63)
            throw EnumerationCapExceeded("state enumeration over 2^|F|", std::min<std::size_t>(cap, 62), n);
        std::vector<State> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            State s = FactSet::from_mask(n, mask);
            if (spec.kind == StateSetSpec::Kind::universe || eval(*spec.formula, s))
                out.push_back(std::move(s));
        }
        return out;
    }
    }
    throw Error("corrupt state-set spec");
}

} // namespace rev
