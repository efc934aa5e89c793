#pragma once

#include "mbern/matrix.hpp"

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/*
 * Canonical ordering of S_m = {0,1}^m.
 *
 * Index j <-> x with x_i = bit (i-1) of j, so coordinate 1 toggles fastest.
 * For m = 2 the order is (0,0), (1,0), (0,1), (1,1). Subsets alpha of
 * {1..m} use the same bit encoding, which lets the moment and theta vectors
 * share the layout of densities.
 */
namespace mbern {

inline constexpr unsigned kMaxDimension = 30;

using BinaryVector = std::vector<std::uint8_t>;

class DimensionError : public std::invalid_argument
{
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

inline void check_dimension(unsigned m)
{
    if (m < 1 || m > kMaxDimension)
        throw DimensionError("dimension m=" + std::to_string(m) + " outside [1, " +
                             std::to_string(kMaxDimension) + "]");
}

inline std::size_t support_size(unsigned m)
{
    check_dimension(m);
    return std::size_t{1} << m;
}

inline BinaryVector vector_of(std::size_t index, unsigned m)
{
    BinaryVector x(m);
    for (unsigned i = 0; i < m; ++i) x[i] = static_cast<std::uint8_t>((index >> i) & 1U);
    return x;
}

inline std::size_t index_of(std::span<const std::uint8_t> x)
{
    std::size_t j = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) j |= std::size_t{1} << i;
    return j;
}

inline std::vector<BinaryVector> enumerate_support(unsigned m)
{
    const std::size_t n = support_size(m);
    std::vector<BinaryVector> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) out.push_back(vector_of(j, m));
    return out;
}

/// "x_1 x_2 ... x_m" as a compact digit string, e.g. "101".
inline std::string support_label(std::size_t index, unsigned m)
{
    std::string s(m, '0');
    for (unsigned i = 0; i < m; ++i)
        if ((index >> i) & 1U) s[i] = '1';
    return s;
}

inline unsigned weight(std::size_t index) { return static_cast<unsigned>(std::popcount(index)); }

/// Zero-based pair (i, j), i < j.
using Pair = std::pair<unsigned, unsigned>;

/** Pairs in lexicographic order (1,2),(1,3),...,(m-1,m), zero-based. */
inline std::vector<Pair> lex_pairs(unsigned m)
{
    std::vector<Pair> out;
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = i + 1; j < m; ++j) out.emplace_back(i, j);
    return out;
}

inline std::size_t pair_count(unsigned m) { return static_cast<std::size_t>(m) * (m - 1) / 2; }

/** Position of pair (i, j), i < j, zero-based, in lex_pairs order. */
inline std::size_t pair_position(unsigned i, unsigned j, unsigned m)
{
    if (!(i < j && j < m)) throw std::invalid_argument("pair_position: need i < j < m");
    return static_cast<std::size_t>(i) * m - static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

inline std::size_t pair_mask(const Pair& pr) { return (std::size_t{1} << pr.first) | (std::size_t{1} << pr.second); }

/**
 * Subsets of size k as bit masks, ordered lexicographically by their sorted
 * coordinate tuples: for k = 2 this is lex_pairs, for k = 1 coordinates
 * ascending.
 */
inline std::vector<std::size_t> subsets_of_order(unsigned m, unsigned k)
{
    std::vector<std::size_t> out;
    if (k > m) return out;
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::size_t mask = 0;
        for (unsigned v : idx) mask |= std::size_t{1} << v;
        out.push_back(mask);
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && idx[pos] == m - k + static_cast<unsigned>(pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (unsigned t = static_cast<unsigned>(pos) + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
    return out;
}

/**
 * Display order: display row k holds canonical index
 * 2^m - 1 - k (the complement of the bit-ascending index), so the first
 * row is (1,...,1) and the last is (0,...,0).
 */
inline std::size_t paper_row_to_canonical(std::size_t row, unsigned m) { return support_size(m) - 1 - row; }

template <class T>
std::vector<T> to_paper_order(const std::vector<T>& canonical, unsigned m)
{
    std::vector<T> out(canonical.size());
    for (std::size_t k = 0; k < canonical.size(); ++k) out[k] = canonical[paper_row_to_canonical(k, m)];
    return out;
}

template <class T>
std::vector<T> from_paper_order(const std::vector<T>& paper, unsigned m)
{
    std::vector<T> out(paper.size());
    for (std::size_t k = 0; k < paper.size(); ++k) out[paper_row_to_canonical(k, m)] = paper[k];
    return out;
}

using Op2 = std::array<Rational, 4>; ///< 2x2 row-major {a00, a01, a10, a11}

/**
 * Applies (ops[m-1] ⊗ ... ⊗ ops[0]) to v in the canonical layout, i.e. the
 * factor ops[i] acts on coordinate i+1 (bit i). Costs m * 2^m products
 * instead of 4^m for the explicit matrix.
 */
inline RationalVector apply_per_coordinate(std::span<const Op2> ops, RationalVector v)
{
    const std::size_t n = v.size();
    if (n != (std::size_t{1} << ops.size())) throw std::invalid_argument("apply_per_coordinate: length is not 2^m");
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::size_t bit = std::size_t{1} << i;
        const Op2& a = ops[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j & bit) continue;
            Rational v0 = v[j], v1 = v[j | bit];
            v[j] = a[0] * v0 + a[1] * v1;
            v[j | bit] = a[2] * v0 + a[3] * v1;
        }
    }
    return v;
}

inline RationalVector apply_per_coordinate(const Op2& op, unsigned m, RationalVector v)
{
    std::vector<Op2> ops(m, op);
    return apply_per_coordinate(ops, std::move(v));
}

/** Explicit matrix of apply_per_coordinate, for cross-checks against kronecker(). */
inline Matrix per_coordinate_matrix(std::span<const Op2> ops)
{
    Matrix out = Matrix::identity(1);
    for (const Op2& a : ops) out = kronecker(Matrix{{a[0], a[1]}, {a[2], a[3]}}, out);
    return out;
}

} // namespace mbern
