#include <doctest.h>

#include <random>

#include "rev/formula.hpp"

using namespace rev;

namespace {

Domain tiny_domain(std::size_t n_facts) {
    DomainSpec spec;
    spec.name = "tiny";
    for (std::size_t i = 0; i < n_facts; ++i) spec.facts.push_back("f" + std::to_string(i));
    spec.actions.push_back({"noop-guard", {"f0"}, {}, {}});
    return build_domain(spec);
}

} // namespace

TEST_CASE("formula parsing, printing, and evaluation agree") {
    Domain d = tiny_domain(3);
    Formula phi = parse_formula("(and f0 (or (not f1) f2))", d);
    CHECK(to_text(phi, d) == "(and f0 (or (not f1) f2))");

    State s = d.empty_state();
    s.insert(0);
    CHECK(eval(phi, s)); // f0 ∧ ¬f1
    s.insert(1);
    CHECK_FALSE(eval(phi, s)); // f1 true, f2 false
    s.insert(2);
    CHECK(eval(phi, s));

    CHECK(eval(parse_formula("true", d), d.empty_state()));
    CHECK_FALSE(eval(parse_formula("false", d), d.empty_state()));
    CHECK(eval(parse_formula("(not false)", d), d.empty_state()));
}

TEST_CASE("formula parse errors are specific") {
    Domain d = tiny_domain(2);
    CHECK_THROWS_AS(parse_formula("(and f0 zz)", d), UnknownFact);
    CHECK_THROWS_AS(parse_formula("(xor f0 f1)", d), ParseError);
    CHECK_THROWS_AS(parse_formula("(not f0 f1)", d), ParseError);
    CHECK_THROWS_AS(parse_formula("(and)", d), ParseError);
    CHECK_THROWS_AS(parse_formula("(f0", d), ParseError);
}

TEST_CASE("state enumeration by formula matches per-state evaluation") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 3u, 5u, 6u}) {
        Domain d = tiny_domain(n);
        // A mildly nested formula over random literals.
        std::vector<Formula> lits;
        for (std::size_t i = 0; i < n; ++i) {
            Formula atom = Formula::atom(i);
            lits.push_back(rng() % 2 ? Formula::negation(atom) : atom);
        }
        Formula phi = lits.size() == 1
                          ? lits[0]
                          : Formula::disjunction({Formula::conjunction(lits), Formula::negation(lits[0])});

        auto states = enumerate_states(StateSetSpec::by_formula(phi), d);
        std::size_t expected = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            State s = FactSet::from_mask(n, mask);
            bool in = eval(phi, s);
            expected += in;
            bool listed = std::find(states.begin(), states.end(), s) != states.end();
            CHECK(listed == in);
        }
        CHECK(states.size() == expected);
        // Ascending numeric order, no duplicates.
        for (std::size_t i = 1; i < states.size(); ++i)
            CHECK(states[i - 1].compare_as_number(states[i]) < 0);
    }
}

TEST_CASE("universe enumeration lists every subset once") {
    Domain d = tiny_domain(4);
    auto states = enumerate_states(StateSetSpec::universe(), d);
    CHECK(states.size() == 16);
    for (std::size_t i = 1; i < states.size(); ++i)
        CHECK(states[i - 1].compare_as_number(states[i]) < 0);
}

TEST_CASE("enumeration respects the exponent cap") {
    Domain d = tiny_domain(6);
    CHECK_THROWS_AS(enumerate_states(StateSetSpec::universe(), d, 5), EnumerationCapExceeded);
    CHECK_NOTHROW(enumerate_states(StateSetSpec::universe(), d, 6));
}

TEST_CASE("explicit state sets are deduplicated and universe-checked") {
    Domain d = tiny_domain(2);
    State a = FactSet::from_mask(2, 1);
    State b = FactSet::from_mask(2, 3);
    auto states = enumerate_states(StateSetSpec::explicit_set({b, a, a}), d);
    REQUIRE(states.size() == 2);
    CHECK(states[0] == a);
    CHECK(states[1] == b);

    State wrong = FactSet::from_mask(3, 1);
    CHECK_THROWS_AS(enumerate_states(StateSetSpec::explicit_set({wrong}), d), UniverseMismatch);
}

TEST_CASE("set descriptions name their origin") {
    Domain d = tiny_domain(2);
    CHECK(StateSetSpec::universe().describe() == "universe");
    Formula phi = parse_formula("(not f0)", d);
    CHECK(StateSetSpec::by_formula(phi).describe() == "formula");
    CHECK(StateSetSpec::explicit_set({d.empty_state()}).describe() == "explicit(1)");
}
