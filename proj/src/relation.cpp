#include "qtcs/relation.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtcs {

TemporalRelation::TemporalRelation(int arity, std::vector<WeakOrder> orbits)
    : arity_(arity), orbits_(std::move(orbits)) {
    if (arity < 0 || arity > kMaxArity) throw std::invalid_argument("arity out of range");
    for (const WeakOrder& w : orbits_) {
        if (w.arity() != arity_) throw std::invalid_argument("orbit arity mismatch");
    }
    std::sort(orbits_.begin(), orbits_.end());
    orbits_.erase(std::unique(orbits_.begin(), orbits_.end()), orbits_.end());
}

TemporalRelation TemporalRelation::empty(int arity) {
    return TemporalRelation(arity, {});
}

TemporalRelation TemporalRelation::full(int arity) {
    return TemporalRelation(arity, all_weak_orders(arity));
}

bool TemporalRelation::contains(const WeakOrder& w) const {
    return std::binary_search(orbits_.begin(), orbits_.end(), w);
}

bool TemporalRelation::contains_ranks(std::span<const int> ranks) const {
    auto cmp = [](const WeakOrder& w, std::span<const int> r) {
        return std::lexicographical_compare(w.ranks().begin(), w.ranks().end(), r.begin(),
                                            r.end());
    };
    auto it = std::lower_bound(orbits_.begin(), orbits_.end(), ranks, cmp);
    return it != orbits_.end() && it->ranks().size() == ranks.size() &&
           std::equal(it->ranks().begin(), it->ranks().end(), ranks.begin());
}

TemporalRelation TemporalRelation::dualized() const {
    std::vector<WeakOrder> out;
    out.reserve(orbits_.size());
    for (const WeakOrder& w : orbits_) out.push_back(w.reversed());
    return TemporalRelation(arity_, std::move(out));
}

TemporalRelation TemporalRelation::identified(std::span<const int> coord_map,
                                              int new_arity) const {
    if (static_cast<int>(coord_map.size()) != arity_)
        throw std::invalid_argument("coordinate map length must equal arity");
    std::vector<char> hit(static_cast<std::size_t>(new_arity), 0);
    for (int m : coord_map) {
        if (m < 0 || m >= new_arity) throw std::invalid_argument("map value out of range");
        hit[static_cast<std::size_t>(m)] = 1;
    }
    for (char h : hit) {
        if (!h) throw std::invalid_argument("coordinate map must be surjective");
    }
    // Keep orbits whose identified coordinates share a rank, then read the
    // ranks off through any preimage and re-canonicalize.
    std::vector<int> pre(static_cast<std::size_t>(new_arity), -1);
    for (int i = arity_ - 1; i >= 0; --i) pre[static_cast<std::size_t>(coord_map[static_cast<std::size_t>(i)])] = i;
    std::vector<WeakOrder> out;
    for (const WeakOrder& w : orbits_) {
        bool consistent = true;
        for (int i = 0; i < arity_ && consistent; ++i) {
            const int j = pre[static_cast<std::size_t>(coord_map[static_cast<std::size_t>(i)])];
            consistent = w.rank(i) == w.rank(j);
        }
        if (!consistent) continue;
        out.push_back(w.restricted(pre));
    }
    return TemporalRelation(new_arity, std::move(out));
}

TemporalRelation TemporalRelation::projected(std::span<const int> coords) const {
    if (coords.empty()) throw std::invalid_argument("projection needs coordinates");
    std::vector<char> seen(static_cast<std::size_t>(arity_), 0);
    for (int c : coords) {
        if (c < 0 || c >= arity_) throw std::invalid_argument("coordinate out of range");
        if (seen[static_cast<std::size_t>(c)]) throw std::invalid_argument("repeated projection coordinate");
        seen[static_cast<std::size_t>(c)] = 1;
    }
    std::vector<WeakOrder> out;
    out.reserve(orbits_.size());
    for (const WeakOrder& w : orbits_) out.push_back(w.restricted(coords));
    return TemporalRelation(static_cast<int>(coords.size()), std::move(out));
}

}  // namespace qtcs
