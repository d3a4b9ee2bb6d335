#pragma once

#include <cstdint>

#include "rev/pddl.hpp"
#include "rev/strips.hpp"

namespace rev {

/// The rev-i family: facts f0..f(i-1); del-all requires and deletes all of
/// them; add-f0 adds f0 unconditionally; add-fk (k ≥ 1) adds fk when f(k-1)
/// holds. del-all's unique shortest universal reverse plan is
/// ⟨add-f0, ..., add-f(i-1)⟩ of length i.
struct RevSpec {
    std::size_t i = 1; // ≥ 1
};

/// Seeded random domain for property testing. Membership of each fact in each
/// action's pre/add/del is an independent p-biased draw; draws for action k
/// come from a dedicated substream of `seed`, so generating fewer actions
/// under the same seed yields a prefix of the larger domain.
struct RandomSpec {
    std::size_t n_facts = 3;   // ≥ 1
    std::size_t n_actions = 3; // ≥ 1
    std::uint64_t seed = 0;
    double p = 0.5; // inclusion probability per (action, fact, set)
};

/// PDDL text of the rev-i domain, named `rev-{i}`.
PddlSource gen_rev_domain(const RevSpec& spec);

/// Deterministic function of the spec. Draws are repaired into well-formed
/// actions by dropping pre/del collisions from add; validate_domain is empty
/// on the result.
Domain gen_random_domain(const RandomSpec& spec);

} // namespace rev
