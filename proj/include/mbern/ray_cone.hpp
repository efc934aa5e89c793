#pragma once

#include "mbern/frechet.hpp"
#include "mbern/matrix.hpp"
#include "mbern/rational.hpp"
#include "mbern/support.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/*
 * Extreme rays of {f >= 0 : H f = 0} by the double description method.
 *
 * The cone starts as the nonnegative orthant, generated by the unit
 * vectors. Hyperplanes h f = 0 are inserted one at a time; rays strictly on
 * one side are dropped and every adjacent (+, -) pair is combined into a
 * ray on the hyperplane.
 *
 * Adjacency uses an exact rank test. With H_k the rows inserted so far and
 * S = supp(a) ∪ supp(b), the face spanned by a and b has the tight set
 * {H_k} ∪ {f_j = 0 : j ∉ S}, whose rank is (n - |S|) + rank(H_k[:, S]). The
 * face is 2-dimensional exactly when rank(H_k[:, S]) = |S| - 2. Because an
 * extreme ray after k insertions has support of size at most k + 1, rays
 * are stored sparsely and every rank test is on a k x (k+2) matrix.
 */
namespace mbern {

/** Ray enumeration refused because m is above the configured cap. */
class DimensionCapExceeded : public std::runtime_error
{
public:
    explicit DimensionCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/** Pair-moment targets admit no density at all (the cone is {0}). */
class InfeasibleMoments : public std::runtime_error
{
public:
    explicit InfeasibleMoments(const std::string& what) : std::runtime_error(what) {}
};

enum class ConstraintKind { Margins, PairMoments };

struct ConstraintMatrix
{
    unsigned m = 0;
    ConstraintKind kind = ConstraintKind::Margins;
    std::vector<RationalVector> rows; ///< each of length 2^m
};

/**
 * Margin constraints. Row i is γ_i(1 - x_i) - x_i scaled by q_i: p_i where
 * x_i = 0 and -q_i where x_i = 1, so H f = 0 iff f puts mass p_i on x_i = 1
 * (given Σf = 1).
 */
inline ConstraintMatrix build_h(const FrechetClass& c)
{
    const std::size_t n = support_size(c.m());
    ConstraintMatrix h{c.m(), ConstraintKind::Margins, {}};
    for (unsigned i = 0; i < c.m(); ++i) {
        RationalVector row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = ((j >> i) & 1U) ? Rational(-c.q(i)) : c.p(i);
        h.rows.push_back(std::move(row));
    }
    return h;
}

/**
 * Pair-moment constraints, one row per pair in lex order. Interior rows are
 * γ_ij(1 - x_ij) - x_ij scaled by (1 - μ_ij). At μ_ij = 0 the row is the
 * forbidden-mass constraint Σ_{x_i = x_j = 1} f = 0; at μ_ij = 1 it is
 * Σ_{x_i x_j = 0} f = 0.
 */
inline ConstraintMatrix build_h2(unsigned m, const PairMoments& mu2)
{
    const std::size_t n = support_size(m);
    if (mu2.m != m) throw std::invalid_argument("pair moments dimension does not match m");
    ConstraintMatrix h{m, ConstraintKind::PairMoments, {}};
    for (auto pr : lex_pairs(m)) {
        const Rational& mu = mu2.at(pr.first, pr.second);
        if (mu < 0 || mu > 1)
            throw std::invalid_argument("pair moment (" + std::to_string(pr.first + 1) + "," +
                                        std::to_string(pr.second + 1) + ") = " + format_rational(mu) +
                                        " is outside [0, 1]");
        const std::size_t mask = pair_mask(pr);
        RationalVector row(n);
        for (std::size_t j = 0; j < n; ++j) {
            const bool both = (j & mask) == mask;
            if (mu == 0) row[j] = both ? 1 : 0;
            else if (mu == 1) row[j] = both ? 0 : 1;
            else row[j] = both ? Rational(mu - 1) : mu;
        }
        h.rows.push_back(std::move(row));
    }
    return h;
}

/** An extreme ray kept as a primitive nonnegative integer vector over its support. */
struct SparseRay
{
    std::uint64_t support = 0;
    std::vector<std::pair<std::uint8_t, Integer>> entries; ///< ascending index
};

struct RayEnumerationOptions
{
    unsigned max_dimension = 6; ///< refuse m above this; callers fall back to direct LP
};

struct RayEnumerationStats
{
    std::vector<std::size_t> rays_after_insertion;
    std::size_t adjacency_tests = 0;
};

namespace detail {

inline std::vector<Integer> integer_row(const RationalVector& row)
{
    Integer l = 1;
    for (const auto& v : row) l = boost::multiprecision::lcm(l, Integer(denominator(v)));
    std::vector<Integer> out;
    out.reserve(row.size());
    for (const auto& v : row) out.push_back(numerator(v) * (l / denominator(v)));
    Integer g = 0;
    for (const auto& v : out) g = boost::multiprecision::gcd(g, v);
    if (g > 1)
        for (auto& v : out) v /= g;
    return out;
}

/// Rank of rows[:, columns] by fraction-free elimination.
inline std::size_t column_rank(const std::vector<std::vector<Integer>>& rows, std::uint64_t columns)
{
    std::vector<unsigned> cols;
    for (std::uint64_t s = columns; s; s &= s - 1) cols.push_back(static_cast<unsigned>(std::countr_zero(s)));
    std::vector<std::vector<Integer>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Integer> v;
        v.reserve(cols.size());
        bool nonzero = false;
        for (unsigned c : cols) {
            v.push_back(r[c]);
            nonzero = nonzero || r[c] != 0;
        }
        if (nonzero) a.push_back(std::move(v));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols.size() && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            Integer f = a[i][c], g = a[rank][c];
            for (std::size_t k = c; k < cols.size(); ++k) a[i][k] = a[i][k] * g - a[rank][k] * f;
        }
        ++rank;
    }
    return rank;
}

inline Integer evaluate(const std::vector<Integer>& h, const SparseRay& r)
{
    Integer s = 0;
    for (const auto& [j, v] : r.entries) s += h[j] * v;
    return s;
}

/// a_coef * a + b_coef * b, both coefficients positive, reduced to a primitive vector.
inline SparseRay combine(const SparseRay& a, const Integer& a_coef, const SparseRay& b, const Integer& b_coef)
{
    SparseRay out;
    out.support = a.support | b.support;
    auto ia = a.entries.begin(), ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
            out.entries.emplace_back(ia->first, ia->second * a_coef);
            ++ia;
        } else if (ia == a.entries.end() || ib->first < ia->first) {
            out.entries.emplace_back(ib->first, ib->second * b_coef);
            ++ib;
        } else {
            out.entries.emplace_back(ia->first, ia->second * a_coef + ib->second * b_coef);
            ++ia;
            ++ib;
        }
    }
    Integer g = 0;
    for (const auto& e : out.entries) g = boost::multiprecision::gcd(g, e.second);
    if (g > 1)
        for (auto& e : out.entries) e.second /= g;
    return out;
}

} // namespace detail

/**
 * Double description over the integers. Returns primitive generators of the
 * extreme rays of {f >= 0 : H f = 0}, unsorted. Requires m <= 6 so that a
 * support fits in 64 bits.
 */
inline std::vector<SparseRay> enumerate_sparse_rays(const ConstraintMatrix& h, RayEnumerationStats* stats = nullptr)
{
    if (h.m > 6) throw DimensionCapExceeded("sparse ray enumeration supports m <= 6");
    const std::size_t n = support_size(h.m);
    std::vector<SparseRay> rays;
    rays.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        rays.push_back(SparseRay{std::uint64_t{1} << j, {{static_cast<std::uint8_t>(j), Integer(1)}}});

    std::vector<std::vector<Integer>> inserted;
    for (const auto& row : h.rows) {
        const std::vector<Integer> hrow = detail::integer_row(row);
        std::vector<std::size_t> pos, neg;
        std::vector<Integer> value(rays.size());
        std::vector<SparseRay> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = detail::evaluate(hrow, rays[r]);
            if (value[r] > 0) pos.push_back(r);
            else if (value[r] < 0) neg.push_back(r);
            else next.push_back(rays[r]);
        }
        const std::size_t max_support = inserted.size() + 2;
        for (std::size_t a : pos)
            for (std::size_t b : neg) {
                const std::uint64_t s = rays[a].support | rays[b].support;
                const auto size = static_cast<std::size_t>(std::popcount(s));
                if (size > max_support) continue;
                if (stats) ++stats->adjacency_tests;
                if (detail::column_rank(inserted, s) + 2 != size) continue;
                // value[a] > 0 > value[b]: value[a] * b - value[b] * a lies on the hyperplane
                next.push_back(detail::combine(rays[b], value[a], rays[a], Integer(-value[b])));
            }
        rays = std::move(next);
        inserted.push_back(hrow);
        if (stats) stats->rays_after_insertion.push_back(rays.size());
    }
    return rays;
}

/** Columns are ray densities of a class (or of a μ2-constrained family). */
struct RayMatrix
{
    unsigned m = 0;
    std::vector<Density> columns;

    std::size_t n_rays() const { return columns.size(); }

    /// 2^m x n_F matrix with rays as columns.
    Matrix as_matrix() const
    {
        Matrix out(support_size(m), columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c)
            for (std::size_t r = 0; r < out.rows(); ++r) out(r, c) = columns[c][r];
        return out;
    }

    /// R λ for simplex weights λ.
    Density combine(const RationalVector& lambda) const
    {
        if (lambda.size() != columns.size()) throw std::invalid_argument("lambda length does not match ray count");
        RationalVector f(support_size(m));
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (lambda[c] == 0) continue;
            for (std::size_t r = 0; r < f.size(); ++r)
                if (columns[c][r] != 0) f[r] += lambda[c] * columns[c][r];
        }
        return Density(std::move(f));
    }
};

/** Normalizes primitive rays to unit mass, deduplicates and sorts them. */
inline RayMatrix ray_densities(unsigned m, const std::vector<SparseRay>& rays)
{
    RayMatrix out{m, {}};
    out.columns.reserve(rays.size());
    const std::size_t n = support_size(m);
    for (const auto& r : rays) {
        Integer total = 0;
        for (const auto& e : r.entries) total += e.second;
        RationalVector f(n);
        for (const auto& [j, v] : r.entries) f[j] = Rational(v, total);
        out.columns.emplace_back(std::move(f));
    }
    std::sort(out.columns.begin(), out.columns.end());
    out.columns.erase(std::unique(out.columns.begin(), out.columns.end()), out.columns.end());
    return out;
}

/** Every extreme ray of {f >= 0 : H f = 0}, normalized to a density, sorted. */
inline RayMatrix extreme_rays(const ConstraintMatrix& h, const RayEnumerationOptions& opts = {},
                              RayEnumerationStats* stats = nullptr)
{
    if (h.m > opts.max_dimension)
        throw DimensionCapExceeded("ray enumeration refused for m=" + std::to_string(h.m) + " (cap " +
                                   std::to_string(opts.max_dimension) + "); use the direct LP mode");
    return ray_densities(h.m, enumerate_sparse_rays(h, stats));
}

inline RayMatrix extreme_rays(const FrechetClass& c, const RayEnumerationOptions& opts = {},
                              RayEnumerationStats* stats = nullptr)
{
    return extreme_rays(build_h(c), opts, stats);
}

/** Selected moments of each ray: column i holds the order-k moments of ray i. */
struct MomentMap
{
    unsigned order = 0;
    std::vector<std::size_t> subsets; ///< α per row, lex order of coordinate tuples
    Matrix entries;

    std::size_t rows() const { return entries.rows(); }
    std::size_t cols() const { return entries.cols(); }
};

inline MomentMap moment_map(const RayMatrix& r, unsigned order)
{
    if (order != 1 && order != 2) throw std::invalid_argument("moment_map supports orders 1 and 2");
    MomentMap out{order, subsets_of_order(r.m, order), Matrix(0, 0)};
    out.entries = Matrix(out.subsets.size(), r.n_rays());
    for (std::size_t c = 0; c < r.n_rays(); ++c) {
        RationalVector mom = moment_vector(r.columns[c]);
        for (std::size_t k = 0; k < out.subsets.size(); ++k) out.entries(k, c) = mom[out.subsets[k]];
    }
    return out;
}

} // namespace mbern
