#include "qtcs/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qtcs {

std::string bits_text(std::uint64_t bits, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

BoolRelation::BoolRelation(int width, std::vector<std::uint64_t> members)
    : width_(width), members_(std::move(members)) {
    if (width < 0 || width > kMaxBitWidth) throw std::invalid_argument("width out of range");
    for (std::uint64_t m : members_) {
        if (width < 64 && (m >> width) != 0) throw std::invalid_argument("member exceeds width");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool BoolRelation::contains(std::uint64_t bits) const {
    return std::binary_search(members_.begin(), members_.end(), bits);
}

BitTuple min_tuple(std::span<const Rational> b) {
    if (b.empty()) throw std::invalid_argument("min-tuple of empty tuple");
    const Rational m = *std::min_element(b.begin(), b.end());
    BitTuple t;
    t.width = static_cast<int>(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] != m) t.bits |= std::uint64_t{1} << i;
    }
    return t;
}

NearAffineResult is_near_affine(const BoolRelation& T) {
    const std::uint64_t ones = all_ones(T.width());
    std::vector<std::uint64_t> pool = T.members();
    pool.push_back(ones);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (std::uint64_t s : pool) {
        for (std::uint64_t s2 : pool) {
            const std::uint64_t image = s ^ s2 ^ ones;
            if (!std::binary_search(pool.begin(), pool.end(), image)) {
                return NearAffineResult{false, s, s2, image};
            }
        }
    }
    return NearAffineResult{};
}

BoolRelation near_affine_closure(const BoolRelation& T) {
    if (T.is_empty()) return T;
    const std::uint64_t ones = all_ones(T.width());
    // Basis of span{t ^ 1 : t in T} by elimination on the highest set bit.
    std::vector<std::uint64_t> basis;
    for (std::uint64_t t : T.members()) {
        std::uint64_t v = t ^ ones;
        for (std::uint64_t b : basis) v = std::min(v, v ^ b);
        if (v) {
            basis.push_back(v);
            std::sort(basis.begin(), basis.end(), std::greater<>());
        }
    }
    std::vector<std::uint64_t> span{0};
    for (std::uint64_t b : basis) {
        const std::size_t n = span.size();
        for (std::size_t i = 0; i < n; ++i) span.push_back(span[i] ^ b);
    }
    std::vector<std::uint64_t> members;
    members.reserve(span.size());
    for (std::uint64_t v : span) {
        if ((v ^ ones) != ones) members.push_back(v ^ ones);
    }
    return BoolRelation(T.width(), std::move(members));
}

void Gf2System::add_row(std::uint64_t coeffs, int rhs) {
    if (width_ < 64 && (coeffs >> width_) != 0)
        throw std::invalid_argument("row exceeds system width");
    rows_.push_back(coeffs);
    rhs_.push_back(static_cast<std::uint8_t>(rhs & 1));
}

void Gf2System::force(int coord, int value) {
    if (coord < 0 || coord >= width_) throw std::invalid_argument("coordinate out of range");
    add_row(std::uint64_t{1} << coord, value);
}

std::optional<Gf2Solution> solve_gf2(const Gf2System& sys) {
    const int w = sys.width();
    std::vector<std::uint64_t> rows = sys.rows();
    std::vector<std::uint8_t> rhs = sys.rhs();
    std::vector<int> pivot_of_col(static_cast<std::size_t>(w), -1);
    std::size_t next_row = 0;
    for (int col = 0; col < w && next_row < rows.size(); ++col) {
        std::size_t found = next_row;
        while (found < rows.size() && !((rows[found] >> col) & 1u)) ++found;
        if (found == rows.size()) continue;
        std::swap(rows[next_row], rows[found]);
        std::swap(rhs[next_row], rhs[found]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next_row && ((rows[r] >> col) & 1u)) {
                rows[r] ^= rows[next_row];
                rhs[r] ^= rhs[next_row];
            }
        }
        pivot_of_col[static_cast<std::size_t>(col)] = static_cast<int>(next_row);
        ++next_row;
    }
    for (std::size_t r = next_row; r < rows.size(); ++r) {
        if (rows[r] == 0 && rhs[r]) return std::nullopt;
    }
    Gf2Solution sol;
    for (int col = 0; col < w; ++col) {
        const int pr = pivot_of_col[static_cast<std::size_t>(col)];
        if (pr >= 0 && rhs[static_cast<std::size_t>(pr)])
            sol.particular |= std::uint64_t{1} << col;
    }
    for (int col = 0; col < w; ++col) {
        if (pivot_of_col[static_cast<std::size_t>(col)] >= 0) continue;
        std::uint64_t v = std::uint64_t{1} << col;
        for (int pc = 0; pc < w; ++pc) {
            const int pr = pivot_of_col[static_cast<std::size_t>(pc)];
            if (pr >= 0 && ((rows[static_cast<std::size_t>(pr)] >> col) & 1u))
                v |= std::uint64_t{1} << pc;
        }
        sol.kernel.push_back(v);
    }
    return sol;
}

std::optional<Gf2Solution> solve_gf2(const Gf2System& sys,
                                     std::span<const std::pair<int, int>> forced) {
    Gf2System combined = sys;
    for (const auto& [coord, value] : forced) combined.force(coord, value);
    return solve_gf2(combined);
}

Gf2System parity_check(const BoolRelation& T) {
    if (!is_near_affine(T).near_affine)
        throw std::invalid_argument("parity_check requires a near-affine relation");
    const int w = T.width();
    const std::uint64_t ones = all_ones(w);
    // Row-reduce a basis of L = {t ^ 1 : t in T u {1}} with lowest-coordinate
    // pivots, then emit the null-space basis: those rows are the checks.
    std::vector<std::uint64_t> basis;           // reduced rows of L
    std::vector<int> pivot_cols;
    auto insert = [&](std::uint64_t v) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if ((v >> pivot_cols[i]) & 1u) v ^= basis[i];
        }
        if (!v) return;
        const int pc = std::countr_zero(v);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if ((basis[i] >> pc) & 1u) basis[i] ^= v;
        }
        basis.push_back(v);
        pivot_cols.push_back(pc);
    };
    for (std::uint64_t t : T.members()) insert(t ^ ones);
    Gf2System sys(w);
    std::vector<char> is_pivot(static_cast<std::size_t>(w), 0);
    for (int pc : pivot_cols) is_pivot[static_cast<std::size_t>(pc)] = 1;
    for (int col = 0; col < w; ++col) {
        if (is_pivot[static_cast<std::size_t>(col)]) continue;
        std::uint64_t row = std::uint64_t{1} << col;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if ((basis[i] >> col) & 1u) row |= std::uint64_t{1} << pivot_cols[i];
        }
        sys.add_row(row, 0);
    }
    return sys;
}

}  // namespace qtcs
