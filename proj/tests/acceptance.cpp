// Acceptance suite for the reversibility toolkit. Each criterion prints
// exactly one line:
//
//   [PASS] criterion-N: <what was verified>
//   [FAIL] criterion-N: <what went wrong>
//   [SKIP] criterion-N: <why it could not run here>
//
// The process exit code is the number of failed criteria. Criterion 9 needs
// an external ASP solver (REVCHECK_SOLVER or clingo on PATH) and is skipped,
// not failed, when none is installed.

#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rev/benchgen.hpp"
#include "rev/encodings.hpp"
#include "rev/error.hpp"
#include "rev/formula.hpp"
#include "rev/pddl.hpp"
#include "rev/report.hpp"
#include "rev/reversibility.hpp"
#include "rev/strips.hpp"

namespace {

struct Outcome {
    enum class Kind { pass, fail, skip };
    Kind kind = Kind::fail;
    std::string detail;

    static Outcome pass(std::string d) { return {Kind::pass, std::move(d)}; }
    static Outcome fail(std::string d) { return {Kind::fail, std::move(d)}; }
    static Outcome skip(std::string d) { return {Kind::skip, std::move(d)}; }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt_ms(double ms) {
    std::ostringstream out;
    out.precision(1);
    out << std::fixed << ms << " ms";
    return out.str();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open test data file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

rev::Domain load_data_domain(const std::string& filename) {
    std::string path = std::string(TEST_DATA_DIR) + "/" + filename;
    return rev::parse_domain(rev::PddlSource{slurp(path), filename});
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ' ';
        out += parts[i];
    }
    return out;
}

std::string plan_text(const rev::Domain& d, const rev::Plan& p) {
    return "<" + join(rev::plan_action_names(d, p)) + ">";
}

// Shared corpus for criteria 4-6: 200 seeded random domains with at most
// 5 facts and 5 actions, fully determined by the seed.
rev::RandomSpec corpus_spec(unsigned seed) {
    rev::RandomSpec spec;
    spec.n_facts = 1 + seed % 5;
    spec.n_actions = 1 + (seed * 7) % 5;
    spec.seed = seed;
    spec.p = 0.25 + 0.15 * static_cast<double>(seed % 4);
    return spec;
}

constexpr unsigned kCorpusFirstSeed = 1;
constexpr unsigned kCorpusSeeds = 200;

bool same_witnesses(const rev::Verdict& a, const rev::Verdict& b) {
    return a.witnesses == b.witnesses;
}

// --- criterion 1 -----------------------------------------------------------

Outcome criterion1() {
    auto t0 = Clock::now();
    rev::Domain d = load_data_domain("rev-2.pddl");

    rev::SearchConfig cfg;
    cfg.horizon = 2;
    cfg.length_mode = rev::LengthMode::exact;
    cfg.max_plans = 10;

    std::vector<std::string> reversible_actions;
    std::optional<rev::Verdict> del_all;
    for (std::size_t i = 0; i < d.actions().size(); ++i) {
        rev::Verdict v = rev::decide_universal(d, i, cfg);
        if (v.status == rev::Status::reversible) reversible_actions.push_back(v.action);
        if (v.action == "del-all") del_all = std::move(v);
    }

    double ms = ms_since(t0);
    if (!del_all) return Outcome::fail("rev-2 has no action named del-all");
    if (reversible_actions != std::vector<std::string>{"del-all"})
        return Outcome::fail("expected del-all as the only reversible action, got [" +
                             join(reversible_actions) + "]");
    if (del_all->witnesses.size() != 1 || del_all->witness_cap_hit)
        return Outcome::fail("expected a unique witness for del-all, got " +
                             std::to_string(del_all->witnesses.size()) +
                             (del_all->witness_cap_hit ? " (capped)" : ""));
    std::vector<std::string> got = rev::plan_action_names(d, del_all->witnesses[0]);
    if (got != std::vector<std::string>{"add-f0", "add-f1"})
        return Outcome::fail("wrong witness for del-all: " + plan_text(d, del_all->witnesses[0]));
    if (ms >= 1000.0) return Outcome::fail("took " + fmt_ms(ms) + ", budget is 1 s");
    return Outcome::pass("rev-2 exact horizon 2: del-all uniquely reversible via "
                         "<add-f0 add-f1>, other actions not reversible (" +
                         fmt_ms(ms) + ")");
}

// --- criteria 2 and 3 ------------------------------------------------------

const std::vector<std::size_t>& rev_sizes() {
    static const std::vector<std::size_t> sizes{1, 2, 3, 4, 5, 6, 10, 20, 30};
    return sizes;
}

rev::Domain rev_domain(std::size_t i) {
    rev::RevSpec spec;
    spec.i = i;
    return rev::parse_domain(rev::gen_rev_domain(spec));
}

Outcome criterion2() {
    auto t0 = Clock::now();
    for (std::size_t i : rev_sizes()) {
        rev::Domain d = rev_domain(i);
        auto idx = d.action_index("del-all");
        if (!idx) return Outcome::fail("rev-" + std::to_string(i) + " lacks del-all");

        rev::SearchConfig cfg;
        cfg.horizon = i;
        cfg.length_mode = rev::LengthMode::exact;
        cfg.max_plans = 2; // two witnesses would already disprove uniqueness
        cfg.enumeration_cap = 40;
        rev::Verdict v = rev::decide_universal(d, *idx, cfg);

        if (v.status != rev::Status::reversible)
            return Outcome::fail("rev-" + std::to_string(i) + " horizon " + std::to_string(i) +
                                 ": del-all not reversible (" + rev::to_string(v.status) + ")");
        if (v.witnesses.size() != 1 || v.witness_cap_hit)
            return Outcome::fail("rev-" + std::to_string(i) + ": expected exactly one witness, got " +
                                 std::to_string(v.witnesses.size()));
        std::vector<std::string> expected;
        for (std::size_t k = 0; k < i; ++k) expected.push_back("add-f" + std::to_string(k));
        if (rev::plan_action_names(d, v.witnesses[0]) != expected)
            return Outcome::fail("rev-" + std::to_string(i) + ": wrong witness " +
                                 plan_text(d, v.witnesses[0]));
    }
    double ms = ms_since(t0);
    if (ms >= 60000.0) return Outcome::fail("took " + fmt_ms(ms) + ", budget is 60 s");
    return Outcome::pass("rev-i, i in {1..6,10,20,30}: exact horizon i yields the unique "
                         "witness <add-f0 .. add-f(i-1)> (" + fmt_ms(ms) + " total)");
}

Outcome criterion3() {
    auto t0 = Clock::now();
    for (std::size_t i : rev_sizes()) {
        rev::Domain d = rev_domain(i);
        auto idx = d.action_index("del-all");
        if (!idx) return Outcome::fail("rev-" + std::to_string(i) + " lacks del-all");

        for (rev::LengthMode mode : {rev::LengthMode::exact, rev::LengthMode::up_to}) {
            rev::SearchConfig cfg;
            cfg.horizon = i - 1;
            cfg.length_mode = mode;
            cfg.enumeration_cap = 40;
            rev::Verdict v = rev::decide_universal(d, *idx, cfg);

            std::string where = "rev-" + std::to_string(i) + " horizon " +
                                std::to_string(i - 1) + " (" +
                                (mode == rev::LengthMode::exact ? "exact" : "up-to") + ")";
            if (!v.witnesses.empty())
                return Outcome::fail(where + ": unexpected witness " +
                                     plan_text(d, v.witnesses[0]));
            // del-all has i precondition facts, so the up-to search is only
            // exhaustive from horizon 2^i on; i-1 is always below that, hence
            // the honest status in both modes is unknown-up-to-horizon.
            if (v.status != rev::Status::unknown_up_to_horizon)
                return Outcome::fail(where + ": expected unknown-up-to-horizon, got " +
                                     rev::to_string(v.status));
        }
    }
    double ms = ms_since(t0);
    if (ms >= 60000.0) return Outcome::fail("took " + fmt_ms(ms) + ", budget is 60 s");
    return Outcome::pass("rev-i at horizon i-1: no witness in exact or up-to mode; "
                         "status unknown-up-to-horizon since i-1 < 2^i (" + fmt_ms(ms) +
                         " total)");
}

// --- criterion 4 -----------------------------------------------------------

Outcome criterion4() {
    auto t0 = Clock::now();
    std::size_t comparisons = 0;
    for (unsigned seed = kCorpusFirstSeed; seed < kCorpusFirstSeed + kCorpusSeeds; ++seed) {
        rev::Domain d = rev::gen_random_domain(corpus_spec(seed));
        for (std::size_t ai = 0; ai < d.actions().size(); ++ai) {
            for (std::size_t h = 1; h <= 3; ++h) {
                for (rev::LengthMode mode : {rev::LengthMode::up_to, rev::LengthMode::exact}) {
                    rev::SearchConfig cfg;
                    cfg.horizon = h;
                    cfg.length_mode = mode;
                    cfg.max_plans = 10;
                    rev::Verdict fast = rev::decide_universal(d, ai, cfg);
                    rev::Verdict slow = rev::brute_force_universal(d, ai, cfg);
                    ++comparisons;
                    if (fast.status != slow.status || !same_witnesses(fast, slow))
                        return Outcome::fail(
                            "seed " + std::to_string(seed) + ", action '" + fast.action +
                            "', horizon " + std::to_string(h) + " (" +
                            (mode == rev::LengthMode::exact ? "exact" : "up-to") +
                            "): search says " + rev::to_string(fast.status) + "/" +
                            std::to_string(fast.witnesses.size()) + " witnesses, oracle says " +
                            rev::to_string(slow.status) + "/" +
                            std::to_string(slow.witnesses.size()));
                }
            }
        }
    }
    return Outcome::pass(std::to_string(kCorpusSeeds) + " random domains, " +
                         std::to_string(comparisons) +
                         " search-vs-oracle comparisons, 0 disagreements (" +
                         fmt_ms(ms_since(t0)) + ")");
}

// --- criterion 5 -----------------------------------------------------------

Outcome criterion5() {
    auto t0 = Clock::now();
    std::size_t violators = 0;
    std::size_t checks = 0;
    for (unsigned seed = kCorpusFirstSeed; seed < kCorpusFirstSeed + kCorpusSeeds; ++seed) {
        rev::Domain d = rev::gen_random_domain(corpus_spec(seed));
        for (std::size_t ai = 0; ai < d.actions().size(); ++ai) {
            const rev::Action& a = d.action(ai);
            if (rev::obeys_relevance(a, rev::relevant_facts(a))) continue;
            ++violators;
            for (std::size_t h = 1; h <= 3; ++h) {
                for (rev::LengthMode mode : {rev::LengthMode::up_to, rev::LengthMode::exact}) {
                    rev::SearchConfig cfg;
                    cfg.horizon = h;
                    cfg.length_mode = mode;
                    rev::Verdict oracle = rev::brute_force_universal(d, ai, cfg);
                    ++checks;
                    if (oracle.status == rev::Status::reversible)
                        return Outcome::fail("seed " + std::to_string(seed) + ", action '" +
                                             a.name +
                                             "' touches facts outside its precondition yet the "
                                             "oracle found witness " +
                                             plan_text(d, oracle.witnesses.at(0)));
                }
            }
        }
    }
    if (violators == 0)
        return Outcome::fail("corpus produced no action with effects outside its "
                             "precondition; property not exercised");
    return Outcome::pass(std::to_string(violators) +
                         " actions with effects outside their precondition, " +
                         std::to_string(checks) +
                         " oracle runs, none found reversible (" + fmt_ms(ms_since(t0)) + ")");
}

// --- criterion 6 -----------------------------------------------------------

Outcome criterion6() {
    auto t0 = Clock::now();
    std::size_t witnesses = 0;
    std::size_t subset_checks = 0;
    for (unsigned seed = kCorpusFirstSeed; seed < kCorpusFirstSeed + kCorpusSeeds; ++seed) {
        rev::Domain d = rev::gen_random_domain(corpus_spec(seed));
        for (std::size_t ai = 0; ai < d.actions().size(); ++ai) {
            rev::SearchConfig cfg;
            cfg.horizon = 3;
            cfg.length_mode = rev::LengthMode::up_to;
            cfg.max_plans = 10;
            rev::Verdict v = rev::decide_universal(d, ai, cfg);
            if (v.status != rev::Status::reversible) continue;

            std::mt19937_64 rng(0xACCE5500u + seed * 131u + ai);
            const std::uint64_t n_states = std::uint64_t{1} << d.num_facts();
            for (const rev::Plan& p : v.witnesses) {
                ++witnesses;
                for (int trial = 0; trial < 50; ++trial) {
                    std::vector<rev::State> subset;
                    for (std::uint64_t mask = 0; mask < n_states; ++mask)
                        if (rng() & 1)
                            subset.push_back(rev::FactSet::from_mask(d.num_facts(), mask));
                    ++subset_checks;
                    rev::ReverseCheckResult r =
                        rev::check_reverse_plan(d, d.action(ai), p, subset);
                    if (!r.ok())
                        return Outcome::fail("seed " + std::to_string(seed) + ", action '" +
                                             d.action(ai).name + "', witness " +
                                             plan_text(d, p) + " fails on a " +
                                             std::to_string(subset.size()) + "-state subset");
                }
            }
        }
    }
    if (witnesses == 0)
        return Outcome::fail("corpus produced no universal witnesses; property not exercised");
    return Outcome::pass(std::to_string(witnesses) + " universal witnesses x 50 random state "
                         "subsets each (" + std::to_string(subset_checks) +
                         " definitional checks), 0 failures (" + fmt_ms(ms_since(t0)) + ")");
}

// --- criterion 7 -----------------------------------------------------------

Outcome criterion7() {
    auto t0 = Clock::now();
    for (const char* base : {"example1", "rev-2"}) {
        rev::Domain d = load_data_domain(std::string(base) + ".pddl");
        std::vector<std::string> ours = rev::plasp_normalize(rev::emit_plasp_facts(d).str());
        std::vector<std::string> golden = rev::plasp_normalize(
            slurp(std::string(TEST_DATA_DIR) + "/" + base + ".plasp.golden"));
        if (ours != golden) {
            std::size_t line = 0;
            while (line < ours.size() && line < golden.size() && ours[line] == golden[line])
                ++line;
            std::string mine = line < ours.size() ? ours[line] : "<end of output>";
            std::string want = line < golden.size() ? golden[line] : "<end of listing>";
            return Outcome::fail(std::string(base) + ": first difference at normalized line " +
                                 std::to_string(line + 1) + ": emitted '" + mine +
                                 "', listing has '" + want + "'");
        }
    }
    return Outcome::pass("plasp facts for example1 and rev-2 match the reference listings "
                         "after whitespace normalization (" + fmt_ms(ms_since(t0)) + ")");
}

// --- criterion 8 -----------------------------------------------------------

Outcome criterion8() {
    auto t0 = Clock::now();
    rev::Domain d = load_data_domain("example1.pddl");
    auto idx = d.action_index("add-f");
    if (!idx) return Outcome::fail("example1 lacks add-f");

    rev::SearchConfig cfg;
    cfg.horizon = 1;
    cfg.length_mode = rev::LengthMode::up_to;
    rev::Formula phi = rev::parse_formula("(not f)", d);

    rev::Verdict restricted =
        rev::decide_over_set(d, *idx, rev::StateSetSpec::by_formula(phi), cfg);
    rev::Verdict universal = rev::decide_universal(d, *idx, cfg);
    double ms = ms_since(t0);

    if (restricted.status != rev::Status::reversible)
        return Outcome::fail("under (not f): expected reversible, got " +
                             rev::to_string(restricted.status));
    bool has_delf = false;
    for (const rev::Plan& p : restricted.witnesses)
        if (rev::plan_action_names(d, p) == std::vector<std::string>{"del-f"}) has_delf = true;
    if (!has_delf)
        return Outcome::fail("under (not f): witness <del-f> missing");
    if (universal.status != rev::Status::irreversible)
        return Outcome::fail("universal mode: expected irreversible, got " +
                             rev::to_string(universal.status));
    if (ms >= 1000.0) return Outcome::fail("took " + fmt_ms(ms) + ", budget is 1 s");
    return Outcome::pass("example1 add-f: reversible via <del-f> over the models of (not f), "
                         "irreversible over all states (" + fmt_ms(ms) + ")");
}

// --- criterion 9 -----------------------------------------------------------

std::string detect_solver() {
    if (const char* env = std::getenv("REVCHECK_SOLVER"); env && *env) return env;
    if (std::system("command -v clingo >/dev/null 2>&1") == 0)
        return "clingo --outf=2 -n {all_models} {program}";
    return "";
}

Outcome criterion9() {
    std::string solver = detect_solver();
    if (solver.empty())
        return Outcome::skip("no ASP solver available (install clingo or set "
                             "REVCHECK_SOLVER); solver cross-check not run");

    auto t0 = Clock::now();
    std::size_t runs = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 1; i <= 4; ++i) {
        rev::Domain d = rev_domain(i);
        for (std::size_t h : {i, i - 1}) {
            rev::CrosscheckOutcome out = rev::run_crosscheck(d, h, solver, 1000000);
            ++runs;
            pairs += out.report["pairs"].get<std::size_t>();
            if (!out.agree)
                return Outcome::fail("rev-" + std::to_string(i) + " horizon " +
                                     std::to_string(h) + ": solver answer sets and internal "
                                     "witnesses differ: " + out.report.dump());
        }
    }
    return Outcome::pass("rev-1..rev-4 at horizons i and i-1: " + std::to_string(runs) +
                         " cross-checks, " + std::to_string(pairs) +
                         " (action, plan) pairs, solver and search agree everywhere (" +
                         fmt_ms(ms_since(t0)) + ")");
}

} // namespace

int main() {
    using CriterionFn = Outcome (*)();
    const std::vector<CriterionFn> criteria{
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9,
    };

    int fails = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        Outcome out;
        try {
            out = criteria[n]();
        } catch (const std::exception& e) {
            out = Outcome::fail(std::string("unexpected error: ") + e.what());
        }
        const char* tag = out.kind == Outcome::Kind::pass   ? "[PASS]"
                          : out.kind == Outcome::Kind::skip ? "[SKIP]"
                                                            : "[FAIL]";
        if (out.kind == Outcome::Kind::fail) ++fails;
        std::cout << tag << " criterion-" << (n + 1) << ": " << out.detail << '\n';
    }
    std::cout.flush();
    return fails;
}
