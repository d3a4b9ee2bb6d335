#include "rev/reversibility.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace rev {

std::string to_string(Status s) {
    switch (s) {
    case Status::reversible: return "reversible";
    case Status::irreversible: return "irreversible";
    case Status::unknown_up_to_horizon: return "unknown-up-to-horizon";
    }
    return "?";
}

std::string to_string(LengthMode m) {
    return m == LengthMode::exact ? "exact" : "up-to";
}

std::string to_string(ModeKind m) {
    switch (m) {
    case ModeKind::universal: return "universal";
    case ModeKind::by_formula: return "formula";
    case ModeKind::explicit_set: return "explicit-set";
    case ModeKind::in_task: return "in-task";
    }
    return "?";
}

ReverseCheckResult check_reverse_plan(const Domain& d, const Action& a, const Plan& p,
                                      const std::vector<State>& states) {
    for (const State& s : states) {
        if (!is_applicable(a, s)) continue;
        State t = (s - a.del) | a.add;
        bool failed = false;
        for (std::size_t i = 0; i < p.steps.size() && !failed; ++i) {
            const Action& step = d.action(p.steps[i]);
            if (!is_applicable(step, t)) {
                return {ReverseCheckFailure{ReverseCheckFailure::Kind::inapplicable_step, s, i}};
            }
            t = (t - step.del) | step.add;
        }
        if (!(t == s))
            return {ReverseCheckFailure{ReverseCheckFailure::Kind::wrong_final_state, s,
                                        p.steps.size()}};
    }
    return {};
}

FactSet relevant_facts(const Action& a) { return a.pre; }

bool obeys_relevance(const Action& a, const FactSet& scope) {
    return a.pre.subset_of(scope) && a.add.subset_of(scope) && a.del.subset_of(scope);
}

namespace {

std::vector<std::size_t> plan_lengths(const SearchConfig& cfg) {
    std::vector<std::size_t> lengths;
    if (cfg.length_mode == LengthMode::up_to) {
        for (std::size_t l = 0; l <= cfg.horizon; ++l) lengths.push_back(l);
    } else {
        lengths.push_back(cfg.horizon);
    }
    return lengths;
}

/// Whether up-to search at this horizon is exhaustive for universal mode:
/// shortest reverse plans are bounded by the projected state count 2^|pre(a)|.
bool universal_search_complete(const Action& a, const SearchConfig& cfg) {
    if (cfg.length_mode != LengthMode::up_to) return false;
    std::size_t n = a.pre.count();
    if (n >= 63) return false;
    return cfg.horizon >= (std::size_t{1} << n);
}

void relevance_diagnostics(const Domain& d, const Action& a, std::vector<std::string>& out) {
    FactSet outside = (a.add | a.del) - relevant_facts(a);
    for (auto i : outside.indices())
        out.push_back("effect touches fact '" + d.fact_name(i) +
                      "' outside the precondition, so no plan can restore it from every state");
}

/// Status for a universal-mode decision that found no witness. Shared by the
/// native procedure and the brute-force oracle so the two always agree.
Status universal_no_witness_status(const Domain& d, const Action& a, const SearchConfig& cfg,
                                   std::vector<std::string>& diagnostics) {
    if (!obeys_relevance(a, relevant_facts(a))) {
        relevance_diagnostics(d, a, diagnostics);
        return Status::irreversible;
    }
    if (universal_search_complete(a, cfg)) {
        diagnostics.push_back(
            "exhaustive: the horizon covers every state over the precondition facts");
        return Status::irreversible;
    }
    diagnostics.push_back(cfg.length_mode == LengthMode::up_to
                              ? "no reverse plan up to the horizon; longer plans may exist"
                              : "no reverse plan of exactly the horizon length");
    return Status::unknown_up_to_horizon;
}

} // namespace

Verdict decide_universal(const Domain& d, std::size_t action_index, const SearchConfig& cfg) {
    const Action& a = d.action(action_index);
    Verdict v;
    v.action = a.name;
    v.mode = ModeKind::universal;
    v.mode_detail = "2^F";
    v.horizon = cfg.horizon;
    v.length_mode = cfg.length_mode;

    FactSet scope = relevant_facts(a);
    if (!obeys_relevance(a, scope)) {
        v.status = Status::irreversible;
        relevance_diagnostics(d, a, v.diagnostics);
        return v;
    }

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < d.actions().size(); ++i)
        if (obeys_relevance(d.action(i), scope)) candidates.push_back(i);

    // Single representative start: the state holding exactly pre(a). A plan
    // over candidate actions reverses a from here iff it does from every state
    // where a is applicable (facts outside pre(a) are never read or written).
    State s0 = a.pre;
    State s1 = (s0 - a.del) | a.add;

    // Forward closure from s1 over the candidates (at most 2^|pre(a)| states).
    std::size_t max_nodes =
        cfg.enumeration_cap >= 63 ? SIZE_MAX : (std::size_t{1} << cfg.enumeration_cap);
    std::unordered_map<State, std::size_t, FactSetHash> id;
    std::vector<State> nodes;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out_edges; // (action, dst)
    std::vector<std::vector<std::size_t>> in_edges;

    auto intern = [&](const State& s) {
        auto [it, fresh] = id.emplace(s, nodes.size());
        if (fresh) {
            if (nodes.size() + 1 > max_nodes)
                throw EnumerationCapExceeded("projected state closure", cfg.enumeration_cap,
                                             nodes.size() + 1);
            nodes.push_back(s);
            out_edges.emplace_back();
            in_edges.emplace_back();
        }
        return it->second;
    };

    std::deque<std::size_t> queue;
    queue.push_back(intern(s1));
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t ci : candidates) {
            const Action& step = d.action(ci);
            if (!is_applicable(step, nodes[u])) continue;
            State t = (nodes[u] - step.del) | step.add;
            bool fresh = !id.count(t);
            std::size_t w = intern(t);
            out_edges[u].emplace_back(ci, w);
            in_edges[w].push_back(u);
            if (fresh) queue.push_back(w);
        }
    }

    auto target_it = id.find(s0);
    if (target_it != id.end()) {
        // Backward BFS from s0 gives the pruning bound: dist[u] = fewest steps
        // from u back to s0.
        std::vector<std::size_t> dist(nodes.size(), SIZE_MAX);
        std::deque<std::size_t> back;
        dist[target_it->second] = 0;
        back.push_back(target_it->second);
        while (!back.empty()) {
            std::size_t u = back.front();
            back.pop_front();
            for (std::size_t p : in_edges[u])
                if (dist[p] == SIZE_MAX) {
                    dist[p] = dist[u] + 1;
                    back.push_back(p);
                }
        }

        std::size_t start = id.at(s1), goal = target_it->second;
        std::vector<std::size_t> prefix;
        // DFS per target length, children in action declaration order, so the
        // witness list comes out length-major and lexicographic.
        auto dfs = [&](auto&& self, std::size_t u, std::size_t remaining) -> bool {
            if (remaining == 0) {
                if (u == goal) {
                    v.witnesses.push_back(Plan{prefix});
                    if (v.witnesses.size() >= cfg.max_plans) {
                        v.witness_cap_hit = true;
                        return false;
                    }
                }
                return true;
            }
            for (auto [ai, w] : out_edges[u]) {
                if (dist[w] == SIZE_MAX || dist[w] > remaining - 1) continue;
                prefix.push_back(ai);
                bool keep_going = self(self, w, remaining - 1);
                prefix.pop_back();
                if (!keep_going) return false;
            }
            return true;
        };
        for (std::size_t len : plan_lengths(cfg)) {
            if (dist[start] == SIZE_MAX || dist[start] > len) continue;
            if (!dfs(dfs, start, len)) break;
        }
    }

    if (!v.witnesses.empty()) {
        v.status = Status::reversible;
        if (v.witness_cap_hit)
            v.diagnostics.push_back("stopped after max_plans witnesses; more may exist");
    } else {
        v.status = universal_no_witness_status(d, a, cfg, v.diagnostics);
    }
    return v;
}

namespace {

struct BeliefKey {
    std::vector<State> belief;
    std::size_t remaining;

    bool operator==(const BeliefKey&) const = default;
};

struct BeliefKeyHash {
    std::size_t operator()(const BeliefKey& k) const {
        std::size_t h = k.remaining;
        for (const State& s : k.belief) h = h * 1099511628211ull ^ s.hash();
        return h;
    }
};

} // namespace

Verdict decide_over_set(const Domain& d, std::size_t action_index, const StateSetSpec& spec,
                        const SearchConfig& cfg) {
    const Action& a = d.action(action_index);
    Verdict v;
    v.action = a.name;
    v.horizon = cfg.horizon;
    v.length_mode = cfg.length_mode;
    switch (spec.kind) {
    case StateSetSpec::Kind::universe:
        v.mode = ModeKind::universal;
        v.mode_detail = "2^F";
        break;
    case StateSetSpec::Kind::by_formula:
        v.mode = ModeKind::by_formula;
        v.mode_detail = to_text(*spec.formula, d);
        break;
    case StateSetSpec::Kind::explicit_set:
        v.mode = ModeKind::explicit_set;
        break;
    case StateSetSpec::Kind::reachable_of:
        v.mode = ModeKind::in_task;
        v.mode_detail = spec.task ? spec.task->name : "";
        break;
    }

    std::vector<State> all = enumerate_states(spec, d, cfg.enumeration_cap);
    if (spec.kind == StateSetSpec::Kind::explicit_set)
        v.mode_detail = std::to_string(all.size()) + " states";

    std::vector<State> applicable_in;
    for (const State& s : all)
        if (is_applicable(a, s)) applicable_in.push_back(s);

    if (applicable_in.empty()) {
        v.status = Status::reversible;
        v.witnesses.push_back(Plan{});
        v.vacuous = true;
        v.diagnostics.push_back("vacuous: the action is applicable in no state of the set");
        return v;
    }

    // When the set covers every state where a is applicable, a reverse plan
    // here would be a universal one, so the relevance argument settles it.
    if (!obeys_relevance(a, relevant_facts(a))) {
        std::size_t free_facts = d.num_facts() - a.pre.count();
        if (free_facts < 63 && applicable_in.size() == (std::size_t{1} << free_facts)) {
            v.status = Status::irreversible;
            relevance_diagnostics(d, a, v.diagnostics);
            return v;
        }
    }

    std::vector<State> start;
    start.reserve(applicable_in.size());
    for (const State& s : applicable_in) start.push_back((s - a.del) | a.add);
    const std::vector<State>& target = applicable_in;

    std::unordered_set<BeliefKey, BeliefKeyHash> dead; // fully explored, no witness below
    std::vector<std::size_t> prefix;

    auto dfs = [&](auto&& self, const std::vector<State>& belief, std::size_t remaining) -> bool {
        if (remaining == 0) {
            if (belief == target) {
                v.witnesses.push_back(Plan{prefix});
                if (v.witnesses.size() >= cfg.max_plans) {
                    v.witness_cap_hit = true;
                    return false;
                }
            }
            return true;
        }
        BeliefKey key{belief, remaining};
        if (dead.count(key)) return true;
        std::size_t before = v.witnesses.size();
        for (std::size_t ai = 0; ai < d.actions().size(); ++ai) {
            const Action& step = d.action(ai);
            bool ok = true;
            for (const State& s : belief)
                if (!is_applicable(step, s)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::vector<State> next;
            next.reserve(belief.size());
            for (const State& s : belief) next.push_back((s - step.del) | step.add);
            prefix.push_back(ai);
            bool keep_going = self(self, next, remaining - 1);
            prefix.pop_back();
            if (!keep_going) return false; // aborted: leave no memo entry
        }
        if (v.witnesses.size() == before) dead.insert(std::move(key));
        return true;
    };

    for (std::size_t len : plan_lengths(cfg)) {
        if (!dfs(dfs, start, len)) break;
    }

    if (!v.witnesses.empty()) {
        v.status = Status::reversible;
        if (v.witness_cap_hit)
            v.diagnostics.push_back("stopped after max_plans witnesses; more may exist");
    } else {
        v.status = Status::unknown_up_to_horizon;
        v.diagnostics.push_back("no uniform reverse plan within the horizon; the bounded "
                                "search is not exhaustive for this mode");
    }
    return v;
}

std::vector<State> reachable_states(const PlanningTask& task, std::size_t cap) {
    std::unordered_set<State, FactSetHash> seen;
    std::vector<State> order;
    std::deque<State> queue;

    auto admit = [&](const State& s) {
        if (!seen.insert(s).second) return false;
        if (seen.size() > cap)
            throw EnumerationCapExceeded("reachable-state closure", cap, seen.size());
        order.push_back(s);
        queue.push_back(s);
        return true;
    };

    admit(task.init);
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (const Action& act : task.domain.actions()) {
            if (!is_applicable(act, s)) continue;
            admit((s - act.del) | act.add);
        }
    }
    return order;
}

Verdict decide_in_task(const PlanningTask& task, std::size_t action_index,
                       const SearchConfig& cfg) {
    return decide_over_set(task.domain, action_index, StateSetSpec::reachable_of(task), cfg);
}

Verdict brute_force_universal(const Domain& d, std::size_t action_index,
                              const SearchConfig& cfg) {
    if (d.num_facts() > 12)
        throw EnumerationCapExceeded("brute-force oracle over 2^F", 12, d.num_facts());

    const Action& a = d.action(action_index);
    Verdict v;
    v.action = a.name;
    v.mode = ModeKind::universal;
    v.mode_detail = "2^F";
    v.horizon = cfg.horizon;
    v.length_mode = cfg.length_mode;

    std::vector<State> all;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d.num_facts()); ++mask)
        all.push_back(FactSet::from_mask(d.num_facts(), mask));

    std::size_t n_actions = d.actions().size();
    bool stopped = false;
    for (std::size_t len : plan_lengths(cfg)) {
        if (stopped) break;
        if (len > 0 && n_actions == 0) continue;
        // Odometer over action indices: last digit fastest = lexicographic.
        Plan p;
        p.steps.assign(len, 0);
        while (true) {
            if (check_reverse_plan(d, a, p, all).ok()) {
                v.witnesses.push_back(p);
                if (v.witnesses.size() >= cfg.max_plans) {
                    v.witness_cap_hit = true;
                    stopped = true;
                    break;
                }
            }
            std::size_t digit = len;
            while (digit > 0) {
                if (++p.steps[digit - 1] < n_actions) break;
                p.steps[digit - 1] = 0;
                --digit;
            }
            if (digit == 0) break;
        }
    }

    if (!v.witnesses.empty()) {
        v.status = Status::reversible;
        if (v.witness_cap_hit)
            v.diagnostics.push_back("stopped after max_plans witnesses; more may exist");
    } else {
        v.status = universal_no_witness_status(d, a, cfg, v.diagnostics);
    }
    return v;
}

} // namespace rev
