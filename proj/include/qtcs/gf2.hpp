#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtcs/rational.hpp"

namespace qtcs {

// Boolean tuples are packed into single machine words; the relation arity cap
// keeps every width far below 64.
inline constexpr int kMaxBitWidth = 64;

struct BitTuple {
    int width = 0;
    std::uint64_t bits = 0;

    bool bit(int i) const { return (bits >> i) & 1u; }
    friend bool operator==(const BitTuple&, const BitTuple&) = default;
};

inline std::uint64_t all_ones(int width) {
    return width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

std::string bits_text(std::uint64_t bits, int width);

// A set of boolean tuples of one width, canonical (sorted, deduplicated).
class BoolRelation {
public:
    explicit BoolRelation(int width, std::vector<std::uint64_t> members = {});

    int width() const { return width_; }
    const std::vector<std::uint64_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool is_empty() const { return members_.empty(); }
    bool contains(std::uint64_t bits) const;

    friend bool operator==(const BoolRelation&, const BoolRelation&) = default;

private:
    int width_ = 0;
    std::vector<std::uint64_t> members_;
};

// Zeros exactly at the minimum positions of b.
BitTuple min_tuple(std::span<const Rational> b);

struct NearAffineResult {
    bool near_affine = true;
    // When not near-affine: members s, s' with s ^ s' ^ 1 outside T u {1}.
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t image = 0;
};

// T is near-affine iff T u {1...1} is closed under (x, y) -> x ^ y ^ 1.
NearAffineResult is_near_affine(const BoolRelation& T);

// Smallest near-affine superset: the GF(2) span of {t ^ 1 : t in T},
// translated back by ^1, with the all-ones tuple dropped.
BoolRelation near_affine_closure(const BoolRelation& T);

// An affine system over GF(2): rows of coefficient bits with a right-hand
// side bit each. Solutions are x with row . x = rhs for every row.
class Gf2System {
public:
    explicit Gf2System(int width) : width_(width) {}

    void add_row(std::uint64_t coeffs, int rhs);
    void force(int coord, int value);  // adds the row e_coord . x = value

    int width() const { return width_; }
    const std::vector<std::uint64_t>& rows() const { return rows_; }
    const std::vector<std::uint8_t>& rhs() const { return rhs_; }

private:
    int width_ = 0;
    std::vector<std::uint64_t> rows_;
    std::vector<std::uint8_t> rhs_;
};

struct Gf2Solution {
    std::uint64_t particular = 0;
    std::vector<std::uint64_t> kernel;  // basis of the homogeneous kernel
};

// Gaussian elimination with lowest-coordinate-first pivoting. Returns the
// particular solution honoring all rows (and forced bits) plus a kernel
// basis, or nullopt when the system is infeasible.
std::optional<Gf2Solution> solve_gf2(const Gf2System& sys);
std::optional<Gf2Solution> solve_gf2(const Gf2System& sys,
                                     std::span<const std::pair<int, int>> forced);

// Homogeneous system whose solution set is exactly {t ^ 1 : t in T u {1}}.
// Precondition: T near-affine.
Gf2System parity_check(const BoolRelation& T);

}  // namespace qtcs
