#include "rev/pddl.hpp"

#include <algorithm>
#include <sstream>

#include "rev/sexpr.hpp"

namespace rev {

namespace {

using sexpr::Node;

[[noreturn]] void fail(const std::string& origin, const Node& at, const std::string& msg) {
    throw ParseError(origin, at.line, at.col, msg);
}

[[noreturn]] void unsupported(const std::string& origin, const Node& at, std::string feature) {
    throw UnsupportedFeature(origin, at.line, at.col, std::move(feature));
}

std::string require_name(const std::string& origin, const Node& n, const char* what) {
    if (n.kind != Node::Kind::symbol)
        fail(origin, n, std::string("expected ") + what);
    if (n.text.find('"') != std::string::npos)
        fail(origin, n, std::string(what) + " '" + n.text + "' may not contain '\"'");
    return n.text;
}

/// A positive zero-arity atom written as (name).
std::string parse_atom(const std::string& origin, const Node& n) {
    if (n.kind != Node::Kind::list || n.items.empty())
        fail(origin, n, "expected an atom of the form (name)");
    if (n.items[0].kind != Node::Kind::symbol)
        fail(origin, n, "expected an atom of the form (name)");
    if (n.items.size() > 1)
        unsupported(origin, n, "predicates with arguments");
    return require_name(origin, n.items[0], "predicate name");
}

std::vector<std::string> parse_precondition(const std::string& origin, const Node& n) {
    std::vector<std::string> atoms;
    if (n.kind != Node::Kind::list)
        fail(origin, n, "expected a precondition");
    if (n.items.empty()) return atoms; // () means no precondition
    if (n.items[0].is_symbol("and")) {
        for (std::size_t i = 1; i < n.items.size(); ++i) {
            const Node& c = n.items[i];
            if (c.kind == Node::Kind::list && !c.items.empty() && c.items[0].is_symbol("not"))
                unsupported(origin, c, "negative preconditions");
            atoms.push_back(parse_atom(origin, c));
        }
        return atoms;
    }
    if (n.items[0].is_symbol("not"))
        unsupported(origin, n, "negative preconditions");
    for (const char* kw : {"or", "imply", "forall", "exists"})
        if (n.items[0].is_symbol(kw))
            unsupported(origin, n, std::string(kw) + " in preconditions");
    atoms.push_back(parse_atom(origin, n));
    return atoms;
}

void parse_effect(const std::string& origin, const Node& n, std::vector<std::string>& add,
                  std::vector<std::string>& del) {
    if (n.kind != Node::Kind::list || n.items.empty())
        fail(origin, n, "expected an effect");
    const Node& head = n.items[0];
    if (head.is_symbol("and")) {
        for (std::size_t i = 1; i < n.items.size(); ++i)
            parse_effect(origin, n.items[i], add, del);
        return;
    }
    if (head.is_symbol("not")) {
        if (n.items.size() != 2)
            fail(origin, n, "(not ...) takes exactly one atom");
        del.push_back(parse_atom(origin, n.items[1]));
        return;
    }
    if (head.is_symbol("when")) unsupported(origin, n, "conditional effects");
    for (const char* kw : {"or", "forall", "exists", "oneof"})
        if (head.is_symbol(kw))
            unsupported(origin, n, std::string(kw) + " in effects");
    add.push_back(parse_atom(origin, n));
}

ActionSpec parse_action(const std::string& origin, const Node& form) {
    // form = (:action name [:parameters ()] [:precondition GD] [:effect ED])
    if (form.items.size() < 2)
        fail(origin, form, "(:action ...) needs a name");
    ActionSpec a;
    a.name = require_name(origin, form.items[1], "action name");

    std::size_t i = 2;
    while (i < form.items.size()) {
        const Node& key = form.items[i];
        if (key.kind != Node::Kind::symbol || key.text.empty() || key.text[0] != ':')
            fail(origin, key, "expected an :action clause keyword");
        if (i + 1 >= form.items.size())
            fail(origin, key, key.text + " is missing its argument");
        const Node& val = form.items[i + 1];
        if (key.text == ":parameters") {
            if (val.kind != Node::Kind::list || !val.items.empty())
                unsupported(origin, val, "action parameters");
        } else if (key.text == ":precondition") {
            a.pre = parse_precondition(origin, val);
        } else if (key.text == ":effect") {
            parse_effect(origin, val, a.add, a.del);
        } else {
            unsupported(origin, key, key.text + " in actions");
        }
        i += 2;
    }
    return a;
}

const Node& single_form(const std::string& origin, const std::vector<Node>& roots,
                        const char* what) {
    if (roots.empty())
        throw ParseError(origin, 1, 1, std::string("expected a ") + what);
    if (roots.size() > 1)
        fail(origin, roots[1], std::string("expected a single ") + what);
    if (roots[0].kind != Node::Kind::list || roots[0].items.empty() ||
        !roots[0].items[0].is_symbol("define"))
        fail(origin, roots[0], std::string("expected (define (") + what + " ...) ...)");
    return roots[0];
}

std::string header_name(const std::string& origin, const Node& define, const char* kind) {
    if (define.items.size() < 2) fail(origin, define, "missing (define ...) header");
    const Node& hdr = define.items[1];
    if (hdr.kind != Node::Kind::list || hdr.items.size() != 2 || !hdr.items[0].is_symbol(kind))
        fail(origin, hdr, std::string("expected (") + kind + " name)");
    return require_name(origin, hdr.items[1], (std::string(kind) + " name").c_str());
}

} // namespace

Domain parse_domain(const PddlSource& src, Wellformed mode, std::vector<std::string>* warnings) {
    const std::string& origin = src.origin;
    auto roots = sexpr::parse(src.text, origin);
    const Node& define = single_form(origin, roots, "domain");

    DomainSpec spec;
    spec.name = header_name(origin, define, "domain");

    std::vector<const Node*> atom_positions; // action bodies, for UnknownFact positions
    for (std::size_t i = 2; i < define.items.size(); ++i) {
        const Node& form = define.items[i];
        if (form.kind != Node::Kind::list || form.items.empty() ||
            form.items[0].kind != Node::Kind::symbol)
            fail(origin, form, "expected a (:keyword ...) section");
        const std::string& kw = form.items[0].text;
        if (kw == ":requirements") {
            for (std::size_t j = 1; j < form.items.size(); ++j) {
                const Node& r = form.items[j];
                if (!r.is_symbol(":strips"))
                    unsupported(origin, r,
                                "requirement " +
                                    (r.kind == Node::Kind::symbol ? r.text : std::string("(...)")));
            }
        } else if (kw == ":predicates") {
            for (std::size_t j = 1; j < form.items.size(); ++j)
                spec.facts.push_back(parse_atom(origin, form.items[j]));
        } else if (kw == ":action") {
            spec.actions.push_back(parse_action(origin, form));
            atom_positions.push_back(&form);
        } else if (kw == ":types" || kw == ":constants" || kw == ":functions" ||
                   kw == ":derived") {
            unsupported(origin, form, kw + " section");
        } else {
            fail(origin, form, "unknown section " + kw);
        }
    }

    // Report undeclared facts with the position of the offending action.
    for (std::size_t k = 0; k < spec.actions.size(); ++k) {
        const ActionSpec& a = spec.actions[k];
        for (const auto* group : {&a.pre, &a.add, &a.del})
            for (const auto& f : *group)
                if (std::find(spec.facts.begin(), spec.facts.end(), f) == spec.facts.end()) {
                    const Node& at = *atom_positions[k];
                    throw UnknownFact(origin, at.line, at.col, f);
                }
    }

    return build_domain(spec, mode, warnings);
}

PlanningTask parse_problem(const PddlSource& src, const Domain& domain) {
    const std::string& origin = src.origin;
    auto roots = sexpr::parse(src.text, origin);
    const Node& define = single_form(origin, roots, "problem");

    PlanningTask task;
    task.domain = domain;
    task.name = header_name(origin, define, "problem");
    task.init = domain.empty_state();
    task.goal = domain.empty_state();

    auto lookup = [&](const Node& at, const std::string& name) {
        auto i = domain.fact_index(name);
        if (!i) throw UnknownFact(origin, at.line, at.col, name);
        return *i;
    };

    bool saw_domain = false;
    for (std::size_t i = 2; i < define.items.size(); ++i) {
        const Node& form = define.items[i];
        if (form.kind != Node::Kind::list || form.items.empty() ||
            form.items[0].kind != Node::Kind::symbol)
            fail(origin, form, "expected a (:keyword ...) section");
        const std::string& kw = form.items[0].text;
        if (kw == ":domain") {
            if (form.items.size() != 2)
                fail(origin, form, "(:domain name) takes one name");
            std::string name = require_name(origin, form.items[1], "domain name");
            if (name != domain.name())
                fail(origin, form.items[1],
                     "problem is for domain '" + name + "', not '" + domain.name() + "'");
            saw_domain = true;
        } else if (kw == ":init") {
            for (std::size_t j = 1; j < form.items.size(); ++j) {
                const Node& c = form.items[j];
                if (c.kind == Node::Kind::list && !c.items.empty() && c.items[0].is_symbol("not"))
                    unsupported(origin, c, "negative init literals");
                task.init.insert(lookup(c, parse_atom(origin, c)));
            }
        } else if (kw == ":goal") {
            if (form.items.size() != 2)
                fail(origin, form, "(:goal ...) takes one condition");
            const Node& gd = form.items[1];
            if (gd.kind == Node::Kind::list && !gd.items.empty() && gd.items[0].is_symbol("not"))
                unsupported(origin, gd, "negative goals");
            for (const auto& f : parse_precondition(origin, gd))
                task.goal.insert(lookup(gd, f));
        } else {
            unsupported(origin, form, kw + " section");
        }
    }
    if (!saw_domain)
        throw ParseError(origin, define.line, define.col, "problem lacks a (:domain ...) section");
    return task;
}

namespace {

std::string atom_text(const std::string& name, bool negated) {
    return negated ? "(not (" + name + "))" : "(" + name + ")";
}

/// One literal → bare literal; several → (and ...); none → "".
std::string clause_text(const std::vector<std::string>& literals) {
    if (literals.empty()) return "";
    if (literals.size() == 1) return literals[0];
    std::string s = "(and";
    for (const auto& l : literals) s += " " + l;
    return s + ")";
}

} // namespace

std::string pretty_print(const Domain& d) {
    std::ostringstream out;
    out << "(define (domain " << d.name() << ")\n";
    out << "  (:requirements :strips)\n";
    out << "  (:predicates";
    for (const auto& f : d.fact_names()) out << " (" << f << ")";
    out << ")\n";
    for (const auto& a : d.actions()) {
        out << "  (:action " << a.name << "\n";
        std::vector<std::string> pre, eff;
        for (auto i : a.pre.indices()) pre.push_back(atom_text(d.fact_name(i), false));
        for (auto i : a.add.indices()) eff.push_back(atom_text(d.fact_name(i), false));
        for (auto i : a.del.indices()) eff.push_back(atom_text(d.fact_name(i), true));
        if (!pre.empty()) out << "   :precondition " << clause_text(pre) << "\n";
        if (!eff.empty()) out << "   :effect " << clause_text(eff) << "\n";
        out << "  )\n";
    }
    out << ")\n";
    return out.str();
}

std::string PlaspFactSet::str() const {
    std::string s;
    for (const auto& l : lines) {
        s += l;
        s += '\n';
    }
    return s;
}

PlaspFactSet emit_plasp_facts(const Domain& d) {
    if (auto v = validate_domain(d); !v.empty())
        throw DomainError("emit_plasp_facts requires a well-formed domain",
                          {v.front().message()});

    PlaspFactSet out;
    auto& L = out.lines;
    L.push_back("boolean(true).");
    L.push_back("boolean(false).");
    L.push_back("type(type(\"object\")).");
    for (const auto& f : d.fact_names()) L.push_back("variable(variable(\"" + f + "\")).");
    L.push_back("contains(X, value(X, B)) :- variable(X), boolean(B).");

    auto var = [](const std::string& f) { return "variable(\"" + f + "\")"; };
    auto value = [&](const std::string& f, bool b) {
        return "value(" + var(f) + ", " + (b ? "true" : "false") + ")";
    };
    for (const auto& a : d.actions()) {
        std::string act = "action(\"" + a.name + "\")";
        L.push_back("action(" + act + ").");
        for (auto i : a.pre.indices()) {
            const std::string& f = d.fact_name(i);
            L.push_back("precondition(" + act + ", " + var(f) + ", " + value(f, true) +
                        ") :- action(" + act + ").");
        }
        // Each fact is in add or del at most once (well-formedness), so a single
        // pass in fact order yields a deterministic postcondition order.
        for (std::size_t i = 0; i < d.num_facts(); ++i) {
            bool added = a.add.contains(i), deleted = a.del.contains(i);
            if (!added && !deleted) continue;
            const std::string& f = d.fact_name(i);
            L.push_back("postcondition(" + act + ", effect(unconditional), " + var(f) + ", " +
                        value(f, added) + ") :- action(" + act + ").");
        }
    }
    return out;
}

std::vector<std::string> plasp_normalize(const std::string& text) {
    std::vector<std::string> rules;
    std::string pending;

    auto collapse = [](const std::string& s) {
        std::string out;
        bool in_space = true; // trims leading space too
        for (char c : s) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                in_space = true;
            } else {
                if (in_space && !out.empty()) out += ' ';
                in_space = false;
                out += c;
            }
        }
        return out;
    };

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string flat = collapse(line);
        if (flat.empty()) continue;
        pending += pending.empty() ? flat : " " + flat;
        if (pending.back() == '.') {
            rules.push_back(pending);
            pending.clear();
        }
    }
    if (!pending.empty()) rules.push_back(pending); // unterminated tail, kept as-is
    return rules;
}

} // namespace rev
