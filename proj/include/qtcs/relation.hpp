#pragma once

#include <span>
#include <vector>

#include "qtcs/weak_order.hpp"

namespace qtcs {

// A temporal relation of fixed arity: a canonical (sorted, deduplicated) set
// of orbits. Relation equality is set equality of the orbit lists.
class TemporalRelation {
public:
    TemporalRelation() = default;  // the empty relation of arity 0
    TemporalRelation(int arity, std::vector<WeakOrder> orbits);

    static TemporalRelation empty(int arity);
    static TemporalRelation full(int arity);

    int arity() const { return arity_; }
    const std::vector<WeakOrder>& orbits() const { return orbits_; }
    std::size_t size() const { return orbits_.size(); }
    bool is_empty() const { return orbits_.empty(); }

    bool contains(const WeakOrder& w) const;
    bool contains_ranks(std::span<const int> ranks) const;

    // Order reversal per orbit; an involution. The component dual of an
    // operation acts on relations through this map.
    TemporalRelation dualized() const;

    // The relation {t' : t' o coord_map in R}. coord_map must be a
    // surjection onto {0,...,new_arity-1}.
    TemporalRelation identified(std::span<const int> coord_map, int new_arity) const;

    // Existential projection onto the given (distinct, non-empty) coordinates.
    TemporalRelation projected(std::span<const int> coords) const;

    friend bool operator==(const TemporalRelation& a, const TemporalRelation& b) {
        return a.arity_ == b.arity_ && a.orbits_ == b.orbits_;
    }
    friend std::strong_ordering operator<=>(const TemporalRelation& a,
                                            const TemporalRelation& b) {
        if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
        if (auto c = a.orbits_.size() <=> b.orbits_.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.orbits_.size(); ++i) {
            if (auto c = a.orbits_[i] <=> b.orbits_[i]; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

private:
    int arity_ = 0;
    std::vector<WeakOrder> orbits_;
};

}  // namespace qtcs
