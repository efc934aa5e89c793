#pragma once

#include "mbern/matrix.hpp"
#include "mbern/rational.hpp"
#include "mbern/support.hpp"

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/*
 * Fréchet classes of multivariate Bernoulli distributions and the linear
 * maps between density f, CDF F, the FGM-restriction parameter theta and
 * the moment vector.
 *
 *   f = D^{⊗m} F,                    D = [[1,0],[-1,1]]
 *   F = Λ_p U_p θ,                   U_{p_i} = [[1, p_i],[1, 0]]
 *   E[X^α] = M^{⊗m} f,               M = [[1,1],[0,1]]
 *
 * Every ⊗ product is laid out so the factor for coordinate i acts on bit
 * i-1 of the canonical index (see support.hpp).
 */
namespace mbern {

/** A vector that is supposed to be a distribution but is not. */
class InvalidDistribution : public std::invalid_argument
{
public:
    explicit InvalidDistribution(const std::string& what) : std::invalid_argument(what) {}
};

/** The class F(p_1, ..., p_m) of m-variate Bernoulli laws with margins p. */
class FrechetClass
{
public:
    explicit FrechetClass(RationalVector p) : p_(std::move(p))
    {
        check_dimension(static_cast<unsigned>(p_.size()));
        q_.reserve(p_.size());
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (!(p_[i] > 0 && p_[i] < 1))
                throw std::invalid_argument("margin p_" + std::to_string(i + 1) + " = " + format_rational(p_[i]) +
                                            " is not in (0, 1)");
            q_.push_back(1 - p_[i]);
        }
    }

    unsigned m() const { return static_cast<unsigned>(p_.size()); }
    const RationalVector& p() const { return p_; }
    const RationalVector& q() const { return q_; }
    const Rational& p(std::size_t i) const { return p_[i]; }
    const Rational& q(std::size_t i) const { return q_[i]; }
    Rational odds(std::size_t i) const { return p_[i] / q_[i]; }

    /// p_i q_i p_j q_j, the squared correlation scale of pair (i, j).
    Rational pair_variance(unsigned i, unsigned j) const { return p_[i] * q_[i] * p_[j] * q_[j]; }

    bool operator==(const FrechetClass&) const = default;

private:
    RationalVector p_;
    RationalVector q_;
};

/** A probability vector over S_m in canonical order. Validated on construction. */
class Density
{
public:
    Density() = default;
    explicit Density(RationalVector values) : values_(std::move(values))
    {
        const std::size_t n = values_.size();
        if (n < 2 || (n & (n - 1)) != 0) throw InvalidDistribution("density length " + std::to_string(n) + " is not 2^m");
        m_ = static_cast<unsigned>(std::countr_zero(n));
        Rational total = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (values_[j] < 0)
                throw InvalidDistribution("density entry at " + support_label(j, m_) + " is negative (" +
                                          format_rational(values_[j]) + ")");
            total += values_[j];
        }
        if (total != 1) throw InvalidDistribution("density sums to " + format_rational(total) + ", not 1");
    }

    unsigned m() const { return m_; }
    std::size_t size() const { return values_.size(); }
    const RationalVector& values() const { return values_; }
    const Rational& operator[](std::size_t j) const { return values_[j]; }

    auto operator<=>(const Density& o) const { return values_ <=> o.values_; }
    bool operator==(const Density&) const = default;

private:
    unsigned m_ = 0;
    RationalVector values_;
};

/** CDF values over S_m. Not validated: theta maps produce arbitrary vectors. */
struct Cdf
{
    unsigned m = 0;
    RationalVector values;
};

/** Coefficients θ_α indexed by subset α (bit-encoded like support points). */
struct ThetaVector
{
    unsigned m = 0;
    RationalVector entries;

    const Rational& operator[](std::size_t alpha) const { return entries[alpha]; }
    const Rational& pair(unsigned i, unsigned j) const { return entries[pair_mask({i, j})]; }
};

/** E[X_i X_j] (or a target for it) for i < j in lex pair order. */
struct PairMoments
{
    unsigned m = 0;
    RationalVector entries;

    PairMoments() = default;
    PairMoments(unsigned dim, RationalVector values) : m(dim), entries(std::move(values))
    {
        if (entries.size() != pair_count(m))
            throw std::invalid_argument("pair moments: expected " + std::to_string(pair_count(m)) + " entries, got " +
                                        std::to_string(entries.size()));
    }
    const Rational& at(unsigned i, unsigned j) const { return entries[pair_position(i, j, m)]; }

    /// Targets converted from correlations may leave [0, 1]; such targets are simply infeasible.
    bool in_unit_range() const
    {
        for (const auto& v : entries)
            if (v < 0 || v > 1) return false;
        return true;
    }
};

/** ρ_ij for i < j in lex pair order. */
struct CorrelationSpec
{
    unsigned m = 0;
    RationalVector entries;

    CorrelationSpec() = default;
    CorrelationSpec(unsigned dim, RationalVector values) : m(dim), entries(std::move(values))
    {
        if (entries.size() != pair_count(m))
            throw std::invalid_argument("correlations: expected " + std::to_string(pair_count(m)) + " entries, got " +
                                        std::to_string(entries.size()));
        for (std::size_t k = 0; k < entries.size(); ++k)
            if (entries[k] < -1 || entries[k] > 1)
                throw std::invalid_argument("correlation #" + std::to_string(k + 1) + " = " +
                                            format_rational(entries[k]) + " is outside [-1, 1]");
    }
    const Rational& at(unsigned i, unsigned j) const { return entries[pair_position(i, j, m)]; }
};

/**
 * A correlation value (μ - p_i p_j) / sqrt(p_i q_i p_j q_j) kept exact as a
 * numerator over the square root of a rational radicand.
 */
struct CorrelationValue
{
    Rational numerator;
    Rational radicand;

    /// Exact rational value when the radicand is a perfect square.
    bool exact(Rational& out) const
    {
        Rational root;
        if (!exact_sqrt(radicand, root)) return false;
        out = numerator / root;
        return true;
    }

    Rational approx() const
    {
        Rational v;
        if (exact(v)) return v;
        return numerator / sqrt_rational(radicand);
    }

    double to_double() const { return mbern::to_double(approx()); }

    std::string exact_string() const
    {
        Rational v;
        if (exact(v)) return format_rational(v);
        return "(" + format_rational(numerator) + ")/sqrt(" + format_rational(radicand) + ")";
    }

    std::string decimal(unsigned places) const { return format_fixed(approx(), places); }
};

namespace ops {
inline const Op2 kDifference{1, 0, -1, 1};
inline const Op2 kCumulative{1, 0, 1, 1};
inline const Op2 kMoment{1, 1, 0, 1};
} // namespace ops

inline Matrix difference_matrix(unsigned m) { return kron_power(Matrix{{1, 0}, {-1, 1}}, m); }
inline Matrix moment_matrix(unsigned m) { return kron_power(Matrix{{1, 1}, {0, 1}}, m); }

/** f = D^{⊗m} F. Throws InvalidDistribution when F is not a CDF. */
inline Density density_from_cdf(const Cdf& cdf)
{
    if (cdf.values.size() != support_size(cdf.m)) throw std::invalid_argument("cdf length is not 2^m");
    return Density(apply_per_coordinate(ops::kDifference, cdf.m, cdf.values));
}

/** Inverse of density_from_cdf: cumulative sums along every coordinate. */
inline Cdf cdf_from_density(const Density& f)
{
    return Cdf{f.m(), apply_per_coordinate(ops::kCumulative, f.m(), f.values())};
}

namespace detail {
inline std::vector<Op2> u_factors(const FrechetClass& c)
{
    std::vector<Op2> u;
    for (unsigned i = 0; i < c.m(); ++i) u.push_back(Op2{1, c.p(i), 1, 0});
    return u;
}
inline std::vector<Op2> u_inverse_factors(const FrechetClass& c)
{
    std::vector<Op2> u;
    for (unsigned i = 0; i < c.m(); ++i) u.push_back(Op2{0, 1, 1 / c.p(i), -1 / c.p(i)});
    return u;
}
/// Λ_p diagonal: product of q_i over coordinates with x_i = 0.
inline RationalVector lambda_diagonal(const FrechetClass& c)
{
    const std::size_t n = support_size(c.m());
    RationalVector d(n, Rational(1));
    for (std::size_t j = 0; j < n; ++j)
        for (unsigned i = 0; i < c.m(); ++i)
            if (!((j >> i) & 1U)) d[j] *= c.q(i);
    return d;
}
} // namespace detail

/** F = Λ_p U_p θ. No validity check; Theorem-1 style conditions are only necessary. */
inline Cdf cdf_from_theta(const FrechetClass& c, const ThetaVector& theta)
{
    if (theta.m != c.m() || theta.entries.size() != support_size(c.m()))
        throw std::invalid_argument("theta dimension does not match the class");
    auto u = detail::u_factors(c);
    RationalVector v = apply_per_coordinate(u, theta.entries);
    RationalVector d = detail::lambda_diagonal(c);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= d[j];
    return Cdf{c.m(), std::move(v)};
}

/** Y_p = D^{⊗m} Λ_p U_p as an explicit matrix. */
inline Matrix y_matrix(const FrechetClass& c)
{
    auto u = detail::u_factors(c);
    Matrix up = per_coordinate_matrix(u);
    RationalVector d = detail::lambda_diagonal(c);
    for (std::size_t r = 0; r < up.rows(); ++r)
        for (std::size_t k = 0; k < up.cols(); ++k) up(r, k) *= d[r];
    return difference_matrix(c.m()) * up;
}

/** θ = Y_p^{-1} f, applied factor by factor: U_p^{-1} Λ_p^{-1} (D^{⊗m})^{-1} f. */
inline ThetaVector theta_from_density(const FrechetClass& c, const Density& f)
{
    if (f.m() != c.m()) throw std::invalid_argument("density dimension does not match the class");
    RationalVector v = apply_per_coordinate(ops::kCumulative, c.m(), f.values());
    RationalVector d = detail::lambda_diagonal(c);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] /= d[j];
    auto uinv = detail::u_inverse_factors(c);
    return ThetaVector{c.m(), apply_per_coordinate(uinv, std::move(v))};
}

/** E[X^α] for every subset α: entry α is the sum of f(x) over x ⊇ α. */
inline RationalVector moment_vector(const Density& f)
{
    return apply_per_coordinate(ops::kMoment, f.m(), f.values());
}

/** Entries of order k (|α| = k) in lex order of their coordinate tuples. */
inline RationalVector select_moments(const RationalVector& moments, unsigned m, unsigned k)
{
    if (moments.size() != support_size(m)) throw std::invalid_argument("moment vector length is not 2^m");
    if (k > m) throw std::invalid_argument("moment order exceeds dimension");
    RationalVector out;
    for (std::size_t alpha : subsets_of_order(m, k)) out.push_back(moments[alpha]);
    return out;
}

inline RationalVector margins_of(const Density& f) { return select_moments(moment_vector(f), f.m(), 1); }

inline PairMoments pair_moments_of(const Density& f)
{
    return PairMoments(f.m(), select_moments(moment_vector(f), f.m(), 2));
}

/// Whether f has margins exactly p.
inline bool in_class(const FrechetClass& c, const Density& f) { return f.m() == c.m() && margins_of(f) == c.p(); }

/// sqrt(p_i q_i p_j q_j), exact or on the rounding grid of sqrt_rational.
inline Rational correlation_scale(const FrechetClass& c, unsigned i, unsigned j)
{
    return sqrt_rational(c.pair_variance(i, j));
}

/** μ_ij = ρ_ij sqrt(p_i q_i p_j q_j) + p_i p_j. */
inline PairMoments mu2_from_rho(const FrechetClass& c, const CorrelationSpec& rho)
{
    if (rho.m != c.m()) throw std::invalid_argument("correlation dimension does not match the class");
    RationalVector mu;
    for (auto [i, j] : lex_pairs(c.m())) {
        mu.push_back(rho.at(i, j) * correlation_scale(c, i, j) + c.p(i) * c.p(j));
    }
    return PairMoments(c.m(), std::move(mu));
}

inline CorrelationValue correlation_value(const FrechetClass& c, unsigned i, unsigned j, const Rational& mu)
{
    return CorrelationValue{mu - c.p(i) * c.p(j), c.pair_variance(i, j)};
}

/** ρ_ij = (μ_ij - p_i p_j) / sqrt(p_i q_i p_j q_j), clamped to [-1, 1] against rounding. */
inline CorrelationSpec rho_from_mu2(const FrechetClass& c, const PairMoments& mu)
{
    if (mu.m != c.m()) throw std::invalid_argument("moment dimension does not match the class");
    RationalVector rho;
    for (auto [i, j] : lex_pairs(c.m())) {
        Rational v = correlation_value(c, i, j, mu.at(i, j)).approx();
        if (v > 1) v = 1;
        if (v < -1) v = -1;
        rho.push_back(v);
    }
    return CorrelationSpec(c.m(), std::move(rho));
}

} // namespace mbern
