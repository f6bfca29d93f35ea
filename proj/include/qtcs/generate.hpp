#pragma once

#include <cstdint>
#include <optional>

#include "qtcs/convert.hpp"
#include "qtcs/csp.hpp"
#include "qtcs/instance.hpp"

namespace qtcs {

// Deterministic PRNG with identical output everywhere; the standard
// distributions are not portable across library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    int in_range(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive
    bool coin() { return next() & 1; }

private:
    std::uint64_t state_ = 0;
};

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    Rng rng(base ^ (0xd6e8feb86659fd93ull * (index + 1)));
    return rng.next();
}

WeakOrder random_weak_order(Rng& rng, int arity);
TemporalRelation random_relation(Rng& rng, int arity);

// Random near-affine relation: a random GF(2) subspace translated by the
// all-ones tuple, all-ones dropped.
BoolRelation random_near_affine(Rng& rng, int width);

// Instances built directly in normal form (closed by construction).
MinCsp random_min_csp(Rng& rng, int max_vars, int max_clauses);
MxCsp random_mx_csp(Rng& rng, int max_vars, int max_conjuncts);

std::optional<PinnedOrder> random_pin(Rng& rng, int num_vars);

// Quantified instances whose constraint relations are generated from random
// normal forms of the requested engine's language.
Instance random_qcsp(Rng& rng, Engine engine, int max_vars, int max_constraints);

}  // namespace qtcs
