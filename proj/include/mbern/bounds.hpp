#pragma once

#include "mbern/frechet.hpp"
#include "mbern/lp.hpp"
#include "mbern/ray_cone.hpp"
#include "mbern/support.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mbern {

/** Attainable range of E[X_i X_j] and ρ_ij within a class. */
struct PairBound
{
    unsigned i = 0, j = 0; ///< zero-based, i < j
    Rational moment_lo, moment_hi;
    CorrelationValue rho_lo, rho_hi;
    std::size_t argmin = 0, argmax = 0; ///< attaining ray (ray path) or 0
};

/** Per pair, min and max over the corresponding A_2p row. */
inline std::vector<PairBound> pair_bounds(const FrechetClass& c, const RayMatrix& rays)
{
    if (rays.m != c.m() || rays.n_rays() == 0) throw std::invalid_argument("pair_bounds: rays do not match the class");
    MomentMap a2p = moment_map(rays, 2);
    std::vector<PairBound> out;
    auto pairs = lex_pairs(c.m());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        PairBound pb;
        pb.i = pairs[k].first;
        pb.j = pairs[k].second;
        for (std::size_t r = 0; r < a2p.cols(); ++r) {
            const Rational& v = a2p.entries(k, r);
            if (r == 0 || v < pb.moment_lo) {
                pb.moment_lo = v;
                pb.argmin = r;
            }
            if (r == 0 || v > pb.moment_hi) {
                pb.moment_hi = v;
                pb.argmax = r;
            }
        }
        pb.rho_lo = correlation_value(c, pb.i, pb.j, pb.moment_lo);
        pb.rho_hi = correlation_value(c, pb.i, pb.j, pb.moment_hi);
        out.push_back(std::move(pb));
    }
    return out;
}

/** Same bounds without rays: two LPs per pair over {f >= 0, Σf = 1, margins = p}. */
inline std::vector<PairBound> pair_bounds_direct(const FrechetClass& c)
{
    const unsigned m = c.m();
    const std::size_t n = support_size(m);
    Matrix a(m + 1, n);
    RationalVector b{Rational(1)};
    for (std::size_t x = 0; x < n; ++x) a(0, x) = 1;
    for (unsigned i = 0; i < m; ++i) {
        for (std::size_t x = 0; x < n; ++x)
            if ((x >> i) & 1U) a(i + 1, x) = 1;
        b.push_back(c.p(i));
    }
    std::vector<PairBound> out;
    for (auto pr : lex_pairs(m)) {
        const std::size_t mask = pair_mask(pr);
        RationalVector cost(n);
        for (std::size_t x = 0; x < n; ++x)
            if ((x & mask) == mask) cost[x] = 1;
        PairBound pb;
        pb.i = pr.first;
        pb.j = pr.second;
        LpResult lo = solve_lp(LinearProgram{a, b, cost});
        for (auto& v : cost) v = -v;
        LpResult hi = solve_lp(LinearProgram{a, b, cost});
        if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal)
            throw std::logic_error("class polytope LP failed");
        pb.moment_lo = lo.objective;
        pb.moment_hi = -hi.objective;
        pb.rho_lo = correlation_value(c, pb.i, pb.j, pb.moment_lo);
        pb.rho_hi = correlation_value(c, pb.i, pb.j, pb.moment_hi);
        out.push_back(std::move(pb));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bivariate closed forms
// ---------------------------------------------------------------------------

namespace detail {
inline void check_margin(const Rational& p)
{
    if (!(p > 0 && p < 1)) throw std::invalid_argument("margin " + format_rational(p) + " is not in (0, 1)");
}
} // namespace detail

struct FrechetBoundDensities
{
    Density lower; ///< f_L, from F_L(x) = max{F_1(x_1) + F_2(x_2) - 1, 0}
    Density upper; ///< f_U, from F_U(x) = min{F_1(x_1), F_2(x_2)}
};

/** Densities of the lower and upper Fréchet–Hoeffding bounds of F(p1, p2). */
inline FrechetBoundDensities bivariate_frechet_densities(const Rational& p1, const Rational& p2)
{
    detail::check_margin(p1);
    detail::check_margin(p2);
    const Rational f1[2] = {1 - p1, 1}, f2[2] = {1 - p2, 1};
    Cdf lower{2, RationalVector(4)}, upper{2, RationalVector(4)};
    for (std::size_t j = 0; j < 4; ++j) {
        const Rational& a = f1[j & 1U];
        const Rational& b = f2[(j >> 1) & 1U];
        lower.values[j] = std::max(Rational(a + b - 1), Rational(0));
        upper.values[j] = std::min(a, b);
    }
    return {density_from_cdf(lower), density_from_cdf(upper)};
}

/** λ f_L + (1 - λ) f_U. */
inline Density bivariate_mixture(const Rational& p1, const Rational& p2, const Rational& lambda)
{
    if (lambda < 0 || lambda > 1) throw std::invalid_argument("mixture weight " + format_rational(lambda) + " is not in [0, 1]");
    auto [fl, fu] = bivariate_frechet_densities(p1, p2);
    RationalVector f(4);
    for (std::size_t j = 0; j < 4; ++j) f[j] = lambda * fl[j] + (1 - lambda) * fu[j];
    return Density(std::move(f));
}

/** Recovers λ = (f(0,0) - f_U(0,0)) / (f_L(0,0) - f_U(0,0)) for f in F(p1, p2). */
inline Rational bivariate_mixture_weight(const Density& f)
{
    if (f.m() != 2) throw std::invalid_argument("bivariate_mixture_weight needs m = 2");
    RationalVector p = margins_of(f);
    auto [fl, fu] = bivariate_frechet_densities(p[0], p[1]);
    return (f[0] - fu[0]) / (fl[0] - fu[0]);
}

struct BivariateRanges
{
    Rational theta_lo, theta_hi;
    Rational moment_lo, moment_hi;
    CorrelationValue rho_lo, rho_hi;
    Rational rho_lo_squared, rho_hi_squared; ///< the closed-form radicands, e.g. q1q2/(p1p2)
    bool wide_case = false;                  ///< q1 + q2 > 1 (after relabelling so q2 >= q1)
};

/**
 * Closed-form ranges of θ12, E[X1X2] and ρ12 on F(p1, p2). The formulas are
 * stated for q2 >= q1; inputs are relabelled internally, which leaves all
 * three ranges unchanged.
 */
inline BivariateRanges bivariate_analytic_ranges(Rational p1, Rational p2)
{
    detail::check_margin(p1);
    detail::check_margin(p2);
    if (1 - p2 < 1 - p1) std::swap(p1, p2);
    const Rational q1 = 1 - p1, q2 = 1 - p2;
    const Rational s2 = p1 * q1 * p2 * q2;
    BivariateRanges r;
    r.wide_case = q1 + q2 > 1;
    r.theta_hi = 1 / (p1 * q2);
    r.moment_hi = 1 - q2;
    r.rho_hi = CorrelationValue{1 - q2 - p1 * p2, s2};
    r.rho_hi_squared = p2 * q1 / (p1 * q2);
    if (!r.wide_case) {
        r.theta_lo = -1 / (p1 * p2);
        r.moment_lo = 1 - q1 - q2;
        r.rho_lo = CorrelationValue{1 - q1 - q2 - p1 * p2, s2};
        r.rho_lo_squared = q1 * q2 / (p1 * p2);
    } else {
        r.theta_lo = (q1 + q2 - 1 - q1 * q2) / (q1 * q2 * p1 * p2);
        r.moment_lo = 0;
        r.rho_lo = CorrelationValue{-p1 * p2, s2};
        r.rho_lo_squared = p1 * p2 / (q1 * q2);
    }
    return r;
}

struct BivariateClassSummary
{
    Rational p1, p2;
    Density f_lower, f_upper;
    BivariateRanges ranges;
};

inline BivariateClassSummary bivariate_summary(const Rational& p1, const Rational& p2)
{
    auto [fl, fu] = bivariate_frechet_densities(p1, p2);
    return {p1, p2, std::move(fl), std::move(fu), bivariate_analytic_ranges(p1, p2)};
}

// ---------------------------------------------------------------------------
// Margins given pair moments
// ---------------------------------------------------------------------------

struct MarginRange
{
    Rational lo, hi;
};

/** Per coordinate, min and max of the A_1μ2 row over the rays of {f >= 0 : H_2 f = 0}. */
inline std::vector<MarginRange> margin_bounds_given_mu2(const RayMatrix& mu2_rays)
{
    if (mu2_rays.n_rays() == 0) throw InfeasibleMoments("pair moments admit no density");
    MomentMap a1 = moment_map(mu2_rays, 1);
    std::vector<MarginRange> out;
    for (std::size_t i = 0; i < a1.rows(); ++i) {
        MarginRange r{a1.entries(i, 0), a1.entries(i, 0)};
        for (std::size_t c = 1; c < a1.cols(); ++c) {
            r.lo = std::min(r.lo, a1.entries(i, c));
            r.hi = std::max(r.hi, a1.entries(i, c));
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<MarginRange> margin_bounds_given_mu2(unsigned m, const PairMoments& mu2,
                                                        const RayEnumerationOptions& opts = {})
{
    return margin_bounds_given_mu2(extreme_rays(build_h2(m, mu2), opts));
}

} // namespace mbern
