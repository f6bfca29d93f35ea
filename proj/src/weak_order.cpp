#include "qtcs/weak_order.hpp"

namespace qtcs {

WeakOrder::WeakOrder(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    int maxv = -1;
    for (int r : ranks_) {
        if (r < 0) throw std::invalid_argument("negative rank");
        maxv = std::max(maxv, r);
    }
    levels_ = maxv + 1;
    if (levels_ > arity()) throw std::invalid_argument("rank exceeds arity");
    std::vector<char> seen(static_cast<std::size_t>(levels_), 0);
    for (int r : ranks_) seen[static_cast<std::size_t>(r)] = 1;
    for (char s : seen) {
        if (!s) throw std::invalid_argument("ranks must occupy contiguous levels from 0");
    }
}

WeakOrder WeakOrder::restricted(std::span<const int> coords) const {
    std::vector<int> keys;
    keys.reserve(coords.size());
    for (int c : coords) keys.push_back(rank(c));
    return of_keys(std::span<const int>(keys));
}

WeakOrder WeakOrder::reversed() const {
    WeakOrder w;
    w.ranks_.reserve(ranks_.size());
    for (int r : ranks_) w.ranks_.push_back(levels_ - 1 - r);
    w.levels_ = levels_;
    return w;
}

std::vector<Rational> WeakOrder::representative() const {
    std::vector<Rational> t;
    t.reserve(ranks_.size());
    for (int r : ranks_) t.emplace_back(r);
    return t;
}

std::uint64_t WeakOrder::min_bits() const {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        if (ranks_[i] > 0) bits |= std::uint64_t{1} << i;
    }
    return bits;
}

WeakOrder orbit_of_tuple(std::span<const Rational> t) {
    return WeakOrder::of_keys(t);
}

WeakOrder orbit_of_tuple(const std::vector<Rational>& t) {
    return orbit_of_tuple(std::span<const Rational>(t));
}

std::uint64_t ordered_bell(int k) {
    // a(n) = sum_{i=1..n} C(n,i) a(n-i)
    std::vector<std::uint64_t> a(static_cast<std::size_t>(k) + 1, 0);
    a[0] = 1;
    for (int n = 1; n <= k; ++n) {
        std::uint64_t c = 1;  // C(n, i)
        std::uint64_t total = 0;
        for (int i = 1; i <= n; ++i) {
            c = c * static_cast<std::uint64_t>(n - i + 1) / static_cast<std::uint64_t>(i);
            total += c * a[static_cast<std::size_t>(n - i)];
        }
        a[static_cast<std::size_t>(n)] = total;
    }
    return a[static_cast<std::size_t>(k)];
}

std::vector<WeakOrder> all_weak_orders(int k) {
    std::vector<WeakOrder> out;
    out.reserve(static_cast<std::size_t>(ordered_bell(k)));
    for_each_weak_order(k, [&](WeakOrder w) { out.push_back(std::move(w)); });
    return out;
}

}  // namespace qtcs
