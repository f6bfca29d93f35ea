#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qtcs/rational.hpp"

namespace qtcs {

// Enumeration over all weak orders of arity k grows like the ordered Bell
// numbers; beyond this arity it is impractical, so the public surface caps it.
inline constexpr int kMaxArity = 10;

// An orbit of k-tuples over the dense linear order, encoded by level ranks:
// rank[i] = number of distinct values strictly below the i-th entry. Ranks
// cover {0,...,L-1} with every level occupied, so equal rank arrays mean
// equal orbits and relations become plain sets.
class WeakOrder {
public:
    WeakOrder() = default;
    explicit WeakOrder(std::vector<int> ranks);

    // Canonical ranks of an arbitrary comparable key sequence.
    template <typename Key>
    static WeakOrder of_keys(std::span<const Key> keys) {
        std::vector<Key> levels(keys.begin(), keys.end());
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        WeakOrder w;
        w.ranks_.resize(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i) {
            w.ranks_[i] = static_cast<int>(
                std::lower_bound(levels.begin(), levels.end(), keys[i]) - levels.begin());
        }
        w.levels_ = static_cast<int>(levels.size());
        return w;
    }

    int arity() const { return static_cast<int>(ranks_.size()); }
    int levels() const { return levels_; }
    int rank(int i) const { return ranks_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& ranks() const { return ranks_; }

    // Canonicalized restriction to the given coordinates.
    WeakOrder restricted(std::span<const int> coords) const;

    // Order reversal: rank r becomes (levels-1) - r.
    WeakOrder reversed() const;

    // The integer-valued section of the orbit map: t[i] = rank[i].
    std::vector<Rational> representative() const;

    // Min-tuple bits: bit i set iff coordinate i is NOT on the bottom level.
    std::uint64_t min_bits() const;

    friend bool operator==(const WeakOrder& a, const WeakOrder& b) {
        return a.ranks_ == b.ranks_;
    }
    friend std::strong_ordering operator<=>(const WeakOrder& a, const WeakOrder& b) {
        if (auto c = a.ranks_.size() <=> b.ranks_.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.ranks_.size(); ++i) {
            if (auto c = a.ranks_[i] <=> b.ranks_[i]; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

private:
    std::vector<int> ranks_;
    int levels_ = 0;
};

// The orbit of a concrete tuple of rationals.
WeakOrder orbit_of_tuple(std::span<const Rational> t);
WeakOrder orbit_of_tuple(const std::vector<Rational>& t);

// Number of weak orders of arity k (ordered Bell / Fubini numbers).
std::uint64_t ordered_bell(int k);

namespace detail {

template <typename Fn>
void weak_orders_rec(int k, int i, std::vector<int>& ranks, unsigned used, int maxv,
                     int missing, Fn&& fn) {
    if (i == k) {
        fn(WeakOrder(ranks));
        return;
    }
    const int left_after = k - i - 1;
    for (int v = 0; v < k; ++v) {
        int nmax = maxv;
        int nmiss = missing;
        if (v > maxv) {
            nmiss += v - maxv - 1;
            nmax = v;
        } else if (!((used >> v) & 1u)) {
            nmiss -= 1;
        }
        if (nmiss > left_after) {
            if (v > maxv) break;  // larger values only add more gaps
            continue;
        }
        ranks[static_cast<std::size_t>(i)] = v;
        weak_orders_rec(k, i + 1, ranks, used | (1u << v), nmax, nmiss, fn);
    }
}

}  // namespace detail

// Visits every weak order of arity k exactly once, in lexicographic rank
// order. k = 0 yields the single empty order.
template <typename Fn>
void for_each_weak_order(int k, Fn&& fn) {
    if (k < 0 || k > kMaxArity) throw std::invalid_argument("arity out of range");
    std::vector<int> ranks(static_cast<std::size_t>(k));
    detail::weak_orders_rec(k, 0, ranks, 0u, -1, 0, fn);
}

std::vector<WeakOrder> all_weak_orders(int k);

}  // namespace qtcs
