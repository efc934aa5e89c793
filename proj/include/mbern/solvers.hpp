#pragma once

#include "mbern/frechet.hpp"
#include "mbern/lp.hpp"
#include "mbern/matrix.hpp"
#include "mbern/ray_cone.hpp"
#include "mbern/support.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbern {

enum class FitStatus { Feasible, Infeasible };

/** Row-labelled Farkas vector for the linear system a fit tried to satisfy. */
struct Certificate
{
    std::vector<std::string> row_labels;
    Matrix a;
    RationalVector b;
    RationalVector y;

    bool verify() const { return is_farkas_certificate(a, b, y); }
};

struct FitResult
{
    FitStatus status = FitStatus::Infeasible;
    RationalVector lambda;           ///< weights over rays (ray path only)
    std::optional<Density> density;  ///< set when feasible
    std::optional<Certificate> certificate;
    std::optional<Rational> objective; ///< minimize_higher_moments only
    std::size_t pivots = 0;

    bool feasible() const { return status == FitStatus::Feasible; }
};

namespace detail {

inline std::string pair_label(const std::string& what, const Pair& pr)
{
    return what + "(" + std::to_string(pr.first + 1) + "," + std::to_string(pr.second + 1) + ")";
}

/// Rows and labels of {Σf = 1, margins = p, pair moments = μ2} over the full support.
inline void moment_system(unsigned m, const RationalVector* p, const PairMoments& mu2, Matrix& a,
                          RationalVector& b, std::vector<std::string>& labels)
{
    const std::size_t n = support_size(m);
    std::vector<std::pair<std::size_t, Rational>> rows; // (subset α, target)
    std::vector<std::string> names;
    rows.emplace_back(0, Rational(1));
    names.emplace_back("sum");
    if (p) {
        for (unsigned i = 0; i < m; ++i) {
            rows.emplace_back(std::size_t{1} << i, (*p)[i]);
            names.push_back("p" + std::to_string(i + 1));
        }
    }
    auto pairs = lex_pairs(m);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        rows.emplace_back(pair_mask(pairs[k]), mu2.entries[k]);
        names.push_back(pair_label("mu", pairs[k]));
    }
    a = Matrix(rows.size(), n);
    b.clear();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t alpha = rows[r].first;
        for (std::size_t x = 0; x < n; ++x)
            if ((x & alpha) == alpha) a(r, x) = 1;
        b.push_back(rows[r].second);
    }
    labels = std::move(names);
}

inline FitResult finish(const LpResult& lp, Matrix a, RationalVector b, std::vector<std::string> labels)
{
    FitResult out;
    out.pivots = lp.pivots;
    if (lp.status == LpStatus::Infeasible) {
        out.status = FitStatus::Infeasible;
        out.certificate = Certificate{std::move(labels), std::move(a), std::move(b), lp.farkas};
        if (!out.certificate->verify()) throw std::logic_error("unverifiable infeasibility certificate");
        return out;
    }
    if (lp.status != LpStatus::Optimal) throw std::logic_error("moment LP cannot be unbounded");
    out.status = FitStatus::Feasible;
    return out;
}

/// Σ over subsets α ⊆ x with |α| >= 3 of 1, i.e. the weight of x in 1'(M^{⊗m})_{3..m} f.
inline Rational higher_moment_weight(std::size_t x)
{
    const unsigned k = weight(x);
    const std::size_t all = std::size_t{1} << k;
    return Rational(static_cast<long long>(all - 1 - k - static_cast<std::size_t>(k) * (k - 1) / 2));
}

} // namespace detail

/**
 * Finds λ on the simplex with A_2p λ = μ2, where A_2p is the pair-moment
 * map of R. Returns R λ when it exists, a Farkas certificate otherwise.
 */
inline FitResult fit_lambda(const RayMatrix& rays, const MomentMap& a2p, const PairMoments& mu2)
{
    if (a2p.order != 2 || a2p.cols() != rays.n_rays() || mu2.m != rays.m || a2p.rows() != mu2.entries.size())
        throw std::invalid_argument("fit_lambda: dimension mismatch");
    Matrix a(a2p.rows() + 1, a2p.cols());
    RationalVector b;
    std::vector<std::string> labels;
    auto pairs = lex_pairs(rays.m);
    for (std::size_t r = 0; r < a2p.rows(); ++r) {
        for (std::size_t c = 0; c < a2p.cols(); ++c) a(r, c) = a2p.entries(r, c);
        b.push_back(mu2.entries[r]);
        labels.push_back(detail::pair_label("mu", pairs[r]));
    }
    for (std::size_t c = 0; c < a2p.cols(); ++c) a(a2p.rows(), c) = 1;
    b.emplace_back(1);
    labels.emplace_back("sum");
    LpResult lp = solve_lp(LinearProgram{a, b, {}});
    FitResult out = detail::finish(lp, std::move(a), std::move(b), std::move(labels));
    if (out.feasible()) {
        out.lambda = lp.x;
        out.density = rays.combine(lp.x);
    }
    return out;
}

inline FitResult fit_lambda(const RayMatrix& rays, const PairMoments& mu2)
{
    return fit_lambda(rays, moment_map(rays, 2), mu2);
}

/** LP feasibility directly over f: Σf = 1, margins = p, pair moments = μ2, f >= 0. */
inline FitResult fit_density_direct(const FrechetClass& c, const PairMoments& mu2)
{
    if (mu2.m != c.m()) throw std::invalid_argument("fit_density_direct: dimension mismatch");
    Matrix a;
    RationalVector b;
    std::vector<std::string> labels;
    detail::moment_system(c.m(), &c.p(), mu2, a, b, labels);
    LpResult lp = solve_lp(LinearProgram{a, b, {}});
    FitResult out = detail::finish(lp, std::move(a), std::move(b), std::move(labels));
    if (out.feasible()) out.density = Density(lp.x);
    return out;
}

/**
 * Among densities with margins p and pair moments μ2, one minimizing the sum
 * of all moments of order >= 3.
 */
inline FitResult minimize_higher_moments(const FrechetClass& c, const PairMoments& mu2)
{
    if (mu2.m != c.m()) throw std::invalid_argument("minimize_higher_moments: dimension mismatch");
    Matrix a;
    RationalVector b;
    std::vector<std::string> labels;
    detail::moment_system(c.m(), &c.p(), mu2, a, b, labels);
    RationalVector cost(a.cols());
    for (std::size_t x = 0; x < cost.size(); ++x) cost[x] = detail::higher_moment_weight(x);
    LpResult lp = solve_lp(LinearProgram{a, b, cost});
    FitResult out = detail::finish(lp, std::move(a), std::move(b), std::move(labels));
    if (out.feasible()) {
        out.density = Density(lp.x);
        out.objective = lp.objective;
    }
    return out;
}

/** Same objective, optimized over λ on the ray simplex. */
inline FitResult minimize_higher_moments(const RayMatrix& rays, const MomentMap& a2p, const PairMoments& mu2)
{
    FitResult feas = fit_lambda(rays, a2p, mu2);
    if (!feas.feasible()) return feas;
    Matrix a(a2p.rows() + 1, a2p.cols());
    RationalVector b = mu2.entries;
    b.emplace_back(1);
    for (std::size_t r = 0; r < a2p.rows(); ++r)
        for (std::size_t c = 0; c < a2p.cols(); ++c) a(r, c) = a2p.entries(r, c);
    RationalVector cost(a2p.cols());
    for (std::size_t c = 0; c < a2p.cols(); ++c) {
        a(a2p.rows(), c) = 1;
        for (std::size_t x = 0; x < support_size(rays.m); ++x)
            if (rays.columns[c][x] != 0) cost[c] += detail::higher_moment_weight(x) * rays.columns[c][x];
    }
    LpResult lp = solve_lp(LinearProgram{a, b, cost});
    if (lp.status != LpStatus::Optimal) throw std::logic_error("ray LP lost feasibility");
    FitResult out;
    out.status = FitStatus::Feasible;
    out.lambda = lp.x;
    out.density = rays.combine(lp.x);
    out.objective = lp.objective;
    out.pivots = feas.pivots + lp.pivots;
    return out;
}

/** Feasibility of margins p jointly with pair moments μ2 via λ over the rays of the H_2 cone. */
inline FitResult solve_margins_given_mu2(const RayMatrix& mu2_rays, const RationalVector& p)
{
    if (p.size() != mu2_rays.m) throw std::invalid_argument("solve_margins_given_mu2: dimension mismatch");
    MomentMap a1 = moment_map(mu2_rays, 1);
    Matrix a(a1.rows() + 1, a1.cols());
    RationalVector b;
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < a1.rows(); ++r) {
        for (std::size_t c = 0; c < a1.cols(); ++c) a(r, c) = a1.entries(r, c);
        b.push_back(p[r]);
        labels.push_back("p" + std::to_string(r + 1));
    }
    for (std::size_t c = 0; c < a1.cols(); ++c) a(a1.rows(), c) = 1;
    b.emplace_back(1);
    labels.emplace_back("sum");
    LpResult lp = solve_lp(LinearProgram{a, b, {}});
    FitResult out = detail::finish(lp, std::move(a), std::move(b), std::move(labels));
    if (out.feasible()) {
        out.lambda = lp.x;
        out.density = mu2_rays.combine(lp.x);
    }
    return out;
}

inline FitResult solve_margins_given_mu2(unsigned m, const PairMoments& mu2, const RationalVector& p,
                                         const RayEnumerationOptions& opts = {})
{
    RayMatrix rays = extreme_rays(build_h2(m, mu2), opts);
    if (rays.n_rays() == 0) {
        // empty cone: report through the direct system so a certificate is still produced
        Matrix a;
        RationalVector b;
        std::vector<std::string> labels;
        detail::moment_system(m, &p, mu2, a, b, labels);
        LpResult lp = solve_lp(LinearProgram{a, b, {}});
        return detail::finish(lp, std::move(a), std::move(b), std::move(labels));
    }
    return solve_margins_given_mu2(rays, p);
}

// ---------------------------------------------------------------------------
// Nearest feasible correlation
// ---------------------------------------------------------------------------

struct ProjectionResult
{
    CorrelationSpec rho_star;
    PairMoments mu2_star;
    Rational squared_distance = 0; ///< exact, in ρ coordinates with the target's rational μ
    double distance = 0;
    RationalVector lambda; ///< over rays (ray mode); empty in direct mode
    Density density;
    std::size_t iterations = 0;
    std::vector<std::size_t> corral;  ///< ids of the hull points carrying weight
    RationalVector corral_weights;
};

/** A hull vertex handed back by a linear-minimization oracle. */
struct HullPoint
{
    RationalVector moments; ///< pair moments of the vertex density
    Density density;
    std::size_t id = 0; ///< ray index in ray mode
};

/// Returns a vertex minimizing Σ_k weight_k dir_k P_k over the hull of attainable pair moments.
using HullOracle = std::function<HullPoint(const RationalVector& weighted_direction)>;

namespace detail {

class MinNormPoint
{
public:
    MinNormPoint(RationalVector weights, RationalVector target) : w_(std::move(weights)), t_(std::move(target)) {}

    Rational inner(const RationalVector& u, const RationalVector& v) const
    {
        Rational s = 0;
        for (std::size_t k = 0; k < u.size(); ++k)
            if (u[k] != 0 && v[k] != 0) s += w_[k] * u[k] * v[k];
        return s;
    }

    RationalVector shifted(const RationalVector& moments) const
    {
        RationalVector d(moments.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = moments[k] - t_[k];
        return d;
    }

    /**
     * Wolfe's corral iteration. `corral` receives the final support points and
     * `weights` their convex weights; returns x = Σ weights_i d_i.
     */
    RationalVector run(const HullOracle& oracle, std::vector<HullPoint>& corral, RationalVector& lam,
                       std::size_t max_iterations, std::size_t& iterations)
    {
        std::vector<RationalVector> d;
        for (const auto& h : corral) d.push_back(shifted(h.moments));
        RationalVector x = combination(d, lam);
        for (iterations = 0; iterations < max_iterations; ++iterations) {
            const Rational xx = inner(x, x);
            if (xx == 0) return x;
            RationalVector dir(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) dir[k] = w_[k] * x[k];
            HullPoint cand = oracle(dir);
            RationalVector dc = shifted(cand.moments);
            if (inner(x, dc) >= xx) return x; // x is the nearest point
            for (const auto& h : corral)
                if (h.moments == cand.moments) return x;
            corral.push_back(std::move(cand));
            d.push_back(std::move(dc));
            lam.emplace_back(0);
            while (true) {
                RationalVector alpha = affine_minimizer(d);
                bool interior = true;
                for (const auto& a : alpha) interior = interior && a > 0;
                if (interior) {
                    lam = std::move(alpha);
                    break;
                }
                std::optional<Rational> theta;
                for (std::size_t i = 0; i < alpha.size(); ++i) {
                    if (alpha[i] > 0 || lam[i] - alpha[i] == 0) continue;
                    Rational s = lam[i] / (lam[i] - alpha[i]);
                    if (!theta || s < *theta) theta = s;
                }
                if (!theta) throw std::logic_error("min-norm point: no blocking corral point");
                for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = *theta * alpha[i] + (1 - *theta) * lam[i];
                for (std::size_t i = lam.size(); i-- > 0;)
                    if (lam[i] == 0) {
                        lam.erase(lam.begin() + static_cast<std::ptrdiff_t>(i));
                        d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
                        corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(i));
                    }
            }
            x = combination(d, lam);
        }
        throw std::runtime_error("min-norm point: iteration cap reached");
    }

private:
    static RationalVector combination(const std::vector<RationalVector>& d, const RationalVector& lam)
    {
        RationalVector x(d.empty() ? 0 : d.front().size());
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t k = 0; k < x.size(); ++k) x[k] += lam[i] * d[i][k];
        return x;
    }

    /// Weights α (Σα = 1) of the min-norm point of the affine hull of d.
    RationalVector affine_minimizer(const std::vector<RationalVector>& d) const
    {
        const std::size_t s = d.size();
        Matrix a(s + 1, s + 1);
        RationalVector rhs(s + 1);
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = i; j < s; ++j) a(i, j) = a(j, i) = inner(d[i], d[j]);
            a(i, s) = -1;
            a(s, i) = 1;
        }
        rhs[s] = 1;
        auto sol = solve(std::move(a), std::move(rhs));
        if (!sol) throw std::logic_error("min-norm point: corral lost affine independence");
        sol->pop_back();
        return *sol;
    }

    RationalVector w_;
    RationalVector t_;
};

inline ProjectionResult project(const FrechetClass& c, const CorrelationSpec& rho, const HullOracle& oracle,
                                HullPoint start, std::size_t max_iterations)
{
    if (rho.m != c.m()) throw std::invalid_argument("nearest_feasible_correlation: dimension mismatch");
    const PairMoments target = mu2_from_rho(c, rho);
    RationalVector weights;
    for (auto [i, j] : lex_pairs(c.m())) weights.push_back(1 / c.pair_variance(i, j));
    MinNormPoint solver(weights, target.entries);

    std::vector<HullPoint> corral{std::move(start)};
    RationalVector lam{Rational(1)};
    ProjectionResult out;
    RationalVector x = solver.run(oracle, corral, lam, max_iterations, out.iterations);

    RationalVector mu(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) mu[k] = target.entries[k] + x[k];
    out.mu2_star = PairMoments(c.m(), mu);
    out.squared_distance = solver.inner(x, x);
    out.distance = std::sqrt(to_double(out.squared_distance));
    out.rho_star = out.squared_distance == 0 ? rho : rho_from_mu2(c, out.mu2_star);
    RationalVector f(support_size(c.m()));
    for (std::size_t i = 0; i < corral.size(); ++i)
        for (std::size_t k = 0; k < f.size(); ++k)
            if (corral[i].density[k] != 0) f[k] += lam[i] * corral[i].density[k];
    out.density = Density(std::move(f));
    for (const auto& h : corral) out.corral.push_back(h.id);
    out.corral_weights = std::move(lam);
    return out;
}

} // namespace detail

/// Iteration cap for the min-norm point search.
inline constexpr std::size_t kMaxProjectionIterations = 100000;

/**
 * Feasible correlations nearest to rho in Euclidean distance, over the
 * convex hull of the ray moment points. The squared distance in ρ
 * coordinates is a weighted least squares in μ with rational weights
 * 1/(p_i q_i p_j q_j), so the search is exact.
 */
inline ProjectionResult nearest_feasible_correlation(const FrechetClass& c, const RayMatrix& rays,
                                                     const CorrelationSpec& rho)
{
    if (rays.m != c.m() || rays.n_rays() == 0) throw std::invalid_argument("nearest: rays do not match the class");
    MomentMap a2p = moment_map(rays, 2);
    auto point = [&](std::size_t i) { return HullPoint{a2p.entries.column(i), rays.columns[i], i}; };
    HullOracle oracle = [&](const RationalVector& dir) {
        std::size_t best = 0;
        Rational best_val;
        for (std::size_t i = 0; i < a2p.cols(); ++i) {
            Rational v = 0;
            for (std::size_t k = 0; k < dir.size(); ++k)
                if (dir[k] != 0) v += dir[k] * a2p.entries(k, i);
            if (i == 0 || v < best_val) {
                best = i;
                best_val = std::move(v);
            }
        }
        return point(best);
    };
    // start from the ray whose moment point is closest to the target
    const PairMoments target = mu2_from_rho(c, rho);
    std::size_t start = 0;
    Rational start_dist;
    for (std::size_t i = 0; i < a2p.cols(); ++i) {
        Rational d = 0;
        auto pairs = lex_pairs(c.m());
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            Rational e = a2p.entries(k, i) - target.entries[k];
            d += e * e / c.pair_variance(pairs[k].first, pairs[k].second);
        }
        if (i == 0 || d < start_dist) {
            start = i;
            start_dist = std::move(d);
        }
    }
    ProjectionResult out = detail::project(c, rho, oracle, point(start), kMaxProjectionIterations);
    out.lambda.assign(rays.n_rays(), Rational(0));
    for (std::size_t i = 0; i < out.corral.size(); ++i) out.lambda[out.corral[i]] = out.corral_weights[i];
    return out;
}

/**
 * Same projection without rays: the linear-minimization step is an exact LP
 * over {f >= 0, Σf = 1, margins = p}, whose optimal vertices generate the
 * hull on demand.
 */
inline ProjectionResult nearest_feasible_correlation_direct(const FrechetClass& c, const CorrelationSpec& rho)
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
    const auto pairs = lex_pairs(m);
    std::size_t counter = 0;
    HullOracle oracle = [&](const RationalVector& dir) {
        RationalVector cost(n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t k = 0; k < pairs.size(); ++k)
                if (dir[k] != 0 && (x & pair_mask(pairs[k])) == pair_mask(pairs[k])) cost[x] += dir[k];
        LpResult lp = solve_lp(LinearProgram{a, b, cost});
        if (lp.status != LpStatus::Optimal) throw std::logic_error("class polytope LP failed");
        Density f(lp.x);
        return HullPoint{pair_moments_of(f).entries, std::move(f), counter++};
    };
    HullPoint start = oracle(RationalVector(pairs.size()));
    return detail::project(c, rho, oracle, std::move(start), kMaxProjectionIterations);
}

} // namespace mbern
