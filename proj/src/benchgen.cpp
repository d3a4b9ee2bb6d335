#include "rev/benchgen.hpp"

#include <random>

namespace rev {

PddlSource gen_rev_domain(const RevSpec& spec) {
    if (spec.i < 1) throw Error("rev-i requires i >= 1");

    DomainSpec d;
    d.name = "rev-" + std::to_string(spec.i);
    for (std::size_t k = 0; k < spec.i; ++k) d.facts.push_back("f" + std::to_string(k));

    ActionSpec del_all;
    del_all.name = "del-all";
    del_all.pre = d.facts;
    del_all.del = d.facts;
    d.actions.push_back(std::move(del_all));

    for (std::size_t k = 0; k < spec.i; ++k) {
        ActionSpec add;
        add.name = "add-f" + std::to_string(k);
        if (k > 0) add.pre.push_back("f" + std::to_string(k - 1));
        add.add.push_back("f" + std::to_string(k));
        d.actions.push_back(std::move(add));
    }

    return PddlSource{pretty_print(build_domain(d)), d.name + ".pddl"};
}

Domain gen_random_domain(const RandomSpec& spec) {
    if (spec.n_facts < 1 || spec.n_actions < 1)
        throw Error("random domains need at least one fact and one action");

    DomainSpec d;
    d.name = "rand-" + std::to_string(spec.seed);
    for (std::size_t i = 0; i < spec.n_facts; ++i) d.facts.push_back("f" + std::to_string(i));

    for (std::size_t k = 0; k < spec.n_actions; ++k) {
        // One substream per action keeps smaller n_actions a prefix.
        std::mt19937_64 rng(spec.seed + 0x9E3779B97F4A7C15ull * (k + 1));
        auto flip = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < spec.p; };

        ActionSpec a;
        a.name = "a" + std::to_string(k);
        for (std::size_t i = 0; i < spec.n_facts; ++i) {
            bool in_pre = flip(), in_add = flip(), in_del = flip();
            const std::string& f = d.facts[i];
            if (in_pre) a.pre.push_back(f);
            if (in_del) a.del.push_back(f);
            if (in_add && !in_del && !in_pre) a.add.push_back(f); // repair: add yields
        }
        d.actions.push_back(std::move(a));
    }

    return build_domain(d);
}

} // namespace rev
