#include "rev/strips.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace rev {

namespace {

void require_same_universe(std::size_t a, std::size_t b) {
    if (a != b) throw UniverseMismatch(a, b);
}

bool valid_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (c == '(' || c == ')' || c == ';' || c == '"' || std::isspace(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

} // namespace

FactSet FactSet::from_mask(std::size_t universe, std::uint64_t mask) {
    FactSet s(universe);
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
}

bool FactSet::subset_of(const FactSet& other) const {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

bool FactSet::intersects(const FactSet& other) const {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

std::size_t FactSet::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool FactSet::empty() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

FactSet& FactSet::operator|=(const FactSet& other) {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

FactSet& FactSet::operator&=(const FactSet& other) {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

FactSet& FactSet::operator-=(const FactSet& other) {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

int FactSet::compare_as_number(const FactSet& other) const {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (words_[i] != other.words_[i]) return words_[i] < other.words_[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::size_t> FactSet::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < universe_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

std::size_t FactSet::hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : words_) {
        h ^= static_cast<std::size_t>(w);
        h *= 0x100000001b3ull;
    }
    return h ^ universe_;
}

std::string Violation::message() const {
    auto list = [this] {
        std::string s;
        for (const auto& f : facts) s += (s.empty() ? "" : ", ") + f;
        return s;
    };
    switch (kind) {
    case ViolationKind::duplicate_fact_name:
        return "duplicate fact name '" + subject + "'";
    case ViolationKind::duplicate_action_name:
        return "duplicate action name '" + subject + "'";
    case ViolationKind::unknown_fact:
        return "action '" + subject + "' uses undeclared facts: " + list();
    case ViolationKind::add_del_overlap:
        return "action '" + subject + "' adds and deletes the same facts: " + list();
    case ViolationKind::pre_add_overlap:
        return "action '" + subject + "' adds facts already required true: " + list();
    case ViolationKind::bad_name:
        return "invalid name '" + subject + "'";
    }
    return "unknown violation";
}

std::optional<std::size_t> Domain::fact_index(std::string_view name) const {
    auto it = fact_index_.find(std::string(name));
    if (it == fact_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Domain::action_index(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

FactSet Domain::set_of(const std::vector<std::string>& names) const {
    FactSet s(facts_.size());
    for (const auto& n : names) {
        auto i = fact_index(n);
        if (!i) throw UnknownFact("<memory>", 0, 0, n);
        s.insert(*i);
    }
    return s;
}

std::vector<std::string> Domain::names_of(const FactSet& set) const {
    std::vector<std::string> out;
    for (std::size_t i : set.indices()) out.push_back(facts_[i]);
    return out;
}

DomainSpec Domain::to_spec() const {
    DomainSpec spec;
    spec.name = name_;
    spec.facts = facts_;
    for (const auto& a : actions_)
        spec.actions.push_back({a.name, names_of(a.pre), names_of(a.add), names_of(a.del)});
    return spec;
}

bool Domain::operator==(const Domain& other) const {
    if (name_ != other.name_ || facts_ != other.facts_) return false;
    if (actions_.size() != other.actions_.size()) return false;
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const Action& a = actions_[i];
        const Action& b = other.actions_[i];
        if (a.name != b.name || a.pre != b.pre || a.add != b.add || a.del != b.del) return false;
    }
    return true;
}

std::vector<Violation> validate_domain(const DomainSpec& spec) {
    std::vector<Violation> out;

    std::unordered_map<std::string, std::size_t> fact_index;
    for (const auto& f : spec.facts) {
        if (!valid_name(f)) out.push_back({ViolationKind::bad_name, f, {}});
        if (fact_index.count(f))
            out.push_back({ViolationKind::duplicate_fact_name, f, {}});
        else
            fact_index.emplace(f, fact_index.size());
    }

    std::unordered_map<std::string, int> action_seen;
    for (const auto& a : spec.actions) {
        if (!valid_name(a.name)) out.push_back({ViolationKind::bad_name, a.name, {}});
        if (action_seen[a.name]++ >= 1)
            out.push_back({ViolationKind::duplicate_action_name, a.name, {}});

        std::vector<std::string> unknown;
        auto resolve = [&](const std::vector<std::string>& names) {
            std::vector<std::string> known;
            for (const auto& n : names) {
                if (fact_index.count(n))
                    known.push_back(n);
                else
                    unknown.push_back(n);
            }
            return known;
        };
        auto pre = resolve(a.pre);
        auto add = resolve(a.add);
        auto del = resolve(a.del);
        if (!unknown.empty())
            out.push_back({ViolationKind::unknown_fact, a.name, unknown});

        auto overlap = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
            std::vector<std::string> both;
            for (const auto& n : x)
                if (std::find(y.begin(), y.end(), n) != y.end()) both.push_back(n);
            return both;
        };
        if (auto both = overlap(add, del); !both.empty())
            out.push_back({ViolationKind::add_del_overlap, a.name, both});
        if (auto both = overlap(pre, add); !both.empty())
            out.push_back({ViolationKind::pre_add_overlap, a.name, both});
    }
    return out;
}

std::vector<Violation> validate_domain(const Domain& d) { return validate_domain(d.to_spec()); }

Domain build_domain(const DomainSpec& spec, Wellformed mode, std::vector<std::string>* warnings) {
    DomainSpec effective = spec;

    if (mode == Wellformed::lenient) {
        for (auto& a : effective.actions) {
            std::vector<std::string> kept;
            for (const auto& n : a.add) {
                if (std::find(a.pre.begin(), a.pre.end(), n) != a.pre.end()) {
                    if (warnings)
                        warnings->push_back("action '" + a.name + "': dropped add of '" + n +
                                            "' already required true");
                } else {
                    kept.push_back(n);
                }
            }
            a.add = std::move(kept);
        }
    }

    auto violations = validate_domain(effective);
    if (!violations.empty()) {
        std::vector<std::string> msgs;
        for (const auto& v : violations) msgs.push_back(v.message());
        std::string headline = "domain '" + spec.name + "' is not well-formed: " + msgs.front();
        throw DomainError(std::move(headline), std::move(msgs));
    }

    Domain d;
    d.name_ = effective.name;
    d.facts_ = effective.facts;
    for (std::size_t i = 0; i < d.facts_.size(); ++i) d.fact_index_.emplace(d.facts_[i], i);
    for (const auto& a : effective.actions) {
        Action act;
        act.name = a.name;
        act.pre = d.set_of(a.pre);
        act.add = d.set_of(a.add);
        act.del = d.set_of(a.del);
        d.action_index_.emplace(act.name, d.actions_.size());
        d.actions_.push_back(std::move(act));
    }
    return d;
}

std::vector<std::string> plan_action_names(const Domain& d, const Plan& p) {
    std::vector<std::string> out;
    out.reserve(p.steps.size());
    for (auto i : p.steps) out.push_back(d.action(i).name);
    return out;
}

bool is_applicable(const Action& a, const State& s) { return a.pre.subset_of(s); }

FactSet missing_preconditions(const Action& a, const State& s) { return a.pre - (a.pre & s); }

State apply(const Domain& d, const Action& a, const State& s) {
    if (!is_applicable(a, s))
        throw PreconditionViolated(a.name, d.names_of(missing_preconditions(a, s)));
    return (s - a.del) | a.add;
}

SequenceOutcome apply_sequence(const Domain& d, const Plan& p, State s) {
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const Action& a = d.action(p.steps[i]);
        if (!is_applicable(a, s))
            return InapplicableAt{i, a.name, d.names_of(missing_preconditions(a, s))};
        s = (s - a.del) | a.add;
    }
    return s;
}

} // namespace rev
