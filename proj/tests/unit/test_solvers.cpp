#include "mbern/bounds.hpp"
#include "mbern/solvers.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mbern;

namespace {

Rational r(const char* s) { return parse_rational(s); }
const Rational half = Rational(1) / 2;
const Rational quarter = Rational(1) / 4;

const FrechetClass& symmetric3()
{
    static const FrechetClass c(RationalVector(3, half));
    return c;
}

const RayMatrix& symmetric3_rays()
{
    static const RayMatrix rays = extreme_rays(symmetric3());
    return rays;
}

PairMoments target(const FrechetClass& c, RationalVector rho) { return mu2_from_rho(c, CorrelationSpec(c.m(), std::move(rho))); }

void expect_exact_fit(const FitResult& fit, const FrechetClass& c, const PairMoments& mu)
{
    ASSERT_TRUE(fit.feasible());
    ASSERT_TRUE(fit.density.has_value());
    EXPECT_TRUE(in_class(c, *fit.density));
    EXPECT_EQ(pair_moments_of(*fit.density).entries, mu.entries);
}

double rho_distance(const RationalVector& a, const std::vector<double>& b)
{
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (to_double(a[k]) - b[k]) * (to_double(a[k]) - b[k]);
    return std::sqrt(s);
}

oracle::GridResult grid_oracle(const FrechetClass& c, const RayMatrix& rays, const std::vector<double>& rho)
{
    MomentMap a2 = moment_map(rays, 2);
    std::vector<std::vector<double>> a(a2.rows(), std::vector<double>(a2.cols()));
    for (std::size_t i = 0; i < a2.rows(); ++i)
        for (std::size_t j = 0; j < a2.cols(); ++j) a[i][j] = to_double(a2.entries(i, j));
    std::vector<double> pp, s;
    for (auto [i, j] : lex_pairs(c.m())) {
        pp.push_back(to_double(c.p(i) * c.p(j)));
        s.push_back(std::sqrt(to_double(c.pair_variance(i, j))));
    }
    return oracle::grid_projection(a, pp, s, rho);
}

} // namespace

TEST(FitLambda, UncorrelatedSymmetricClass)
{
    const PairMoments mu = target(symmetric3(), {0, 0, 0});
    EXPECT_EQ(mu.entries, (RationalVector{quarter, quarter, quarter}));
    FitResult fit = fit_lambda(symmetric3_rays(), mu);
    expect_exact_fit(fit, symmetric3(), mu);
    Rational total = 0;
    for (const auto& l : fit.lambda) {
        EXPECT_GE(l, 0);
        total += l;
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(symmetric3_rays().combine(fit.lambda), *fit.density);
}

TEST(FitLambda, ReferenceWitnessForMixedCorrelations)
{
    const PairMoments mu = target(symmetric3(), {r("0.2"), r("-0.3"), r("0.4")});
    expect_exact_fit(fit_lambda(symmetric3_rays(), mu), symmetric3(), mu);
    Density reference(RationalVector{r("0.1625"), r("0.1875"), r("0.0125"), r("0.1375"), r("0.1375"), r("0.0125"),
                                   r("0.1875"), r("0.1625")});
    EXPECT_TRUE(in_class(symmetric3(), reference));
    EXPECT_EQ(pair_moments_of(reference).entries, mu.entries);
}

TEST(FitLambda, InfeasibleTargetCarriesCertificate)
{
    const PairMoments mu = target(symmetric3(), {r("0.9"), r("-0.3"), r("0.6")});
    FitResult fit = fit_lambda(symmetric3_rays(), mu);
    ASSERT_FALSE(fit.feasible());
    ASSERT_TRUE(fit.certificate.has_value());
    EXPECT_TRUE(fit.certificate->verify());
    EXPECT_EQ(fit.certificate->row_labels.size(), fit.certificate->y.size());
    EXPECT_FALSE(fit.density.has_value());

    FitResult direct = fit_density_direct(symmetric3(), mu);
    ASSERT_FALSE(direct.feasible());
    EXPECT_TRUE(direct.certificate->verify());
}

TEST(FitLambda, RejectsMismatchedDimensions)
{
    EXPECT_THROW(fit_lambda(symmetric3_rays(), PairMoments(2, {quarter})), std::invalid_argument);
}

TEST(FitDirect, UncorrelatedTargetsInAnyDimension)
{
    for (unsigned m = 2; m <= 6; ++m) {
        RationalVector p;
        for (unsigned i = 0; i < m; ++i) p.push_back(Rational(i + 1) / (m + 2));
        FrechetClass c(p);
        const PairMoments mu = target(c, RationalVector(pair_count(m), 0));
        expect_exact_fit(fit_density_direct(c, mu), c, mu);
    }
}

TEST(FitDirect, FiveDimensionalTarget)
{
    FrechetClass c(RationalVector(5, half));
    // (1,2) (1,3) (1,4) (1,5) (2,3) (2,4) (2,5) (3,4) (3,5) (4,5)
    const PairMoments mu = target(c, {r("0.3"), r("0.2"), r("0.2"), r("0.1"), r("-0.2"), r("0.3"), r("0.2"), r("0.2"),
                                      r("0.1"), r("-0.2")});
    expect_exact_fit(fit_density_direct(c, mu), c, mu);
}

TEST(FitDirect, AgreesWithRayPathOnRandomTargets)
{
    std::mt19937_64 gen(67);
    std::uniform_int_distribution<int> num(-10, 10);
    const FrechetClass c(RationalVector{r("1/4"), r("1/7"), r("1/3")});
    const RayMatrix rays = extreme_rays(c);
    const MomentMap a2p = moment_map(rays, 2);
    int feasible = 0;
    for (int t = 0; t < 50; ++t) {
        // targets spread over and beyond each pair's Fréchet range
        RationalVector entries;
        for (auto [i, j] : lex_pairs(3)) entries.push_back(std::min(c.p(i), c.p(j)) * (Rational(num(gen)) / 16 + half));
        const PairMoments mu(3, entries);
        FitResult a = fit_lambda(rays, a2p, mu), b = fit_density_direct(c, mu);
        EXPECT_EQ(a.feasible(), b.feasible());
        if (a.feasible()) {
            ++feasible;
            expect_exact_fit(a, c, mu);
            expect_exact_fit(b, c, mu);
        } else {
            EXPECT_TRUE(a.certificate->verify());
            EXPECT_TRUE(b.certificate->verify());
        }
    }
    EXPECT_GT(feasible, 5);
}

TEST(FitBoundary, ExactBoundsAreFeasibleAndBeyondIsNot)
{
    const FrechetClass c(RationalVector{r("1/4"), r("3/4"), half});
    const RayMatrix rays = extreme_rays(c);
    const MomentMap a2p = moment_map(rays, 2);
    for (const PairBound& b : pair_bounds(c, rays)) {
        const std::size_t k = pair_position(b.i, b.j, 3);
        for (std::size_t ray : {b.argmin, b.argmax}) {
            PairMoments mu = pair_moments_of(rays.columns[ray]);
            EXPECT_TRUE(fit_lambda(rays, a2p, mu).feasible());
            PairMoments out = mu;
            out.entries[k] += ray == b.argmax ? Rational(1, 1000) : Rational(-1, 1000);
            EXPECT_FALSE(fit_lambda(rays, a2p, out).feasible());
            EXPECT_FALSE(fit_density_direct(c, out).feasible());
        }
    }
}

TEST(MinimizeHigherMoments, BivariateObjectiveIsEmpty)
{
    FrechetClass c(RationalVector{r("1/3"), r("1/2")});
    FitResult fit = minimize_higher_moments(c, PairMoments(2, {r("1/5")}));
    ASSERT_TRUE(fit.feasible());
    EXPECT_EQ(*fit.objective, 0);
}

TEST(MinimizeHigherMoments, UncorrelatedSymmetricTrivariate)
{
    // hand-derived: f(110) = f(101) = f(011) = f(000) = 1/4 meets every constraint with E[X1X2X3] = 0
    const PairMoments mu(3, {quarter, quarter, quarter});
    FitResult direct = minimize_higher_moments(symmetric3(), mu);
    expect_exact_fit(direct, symmetric3(), mu);
    EXPECT_EQ(*direct.objective, 0);
    EXPECT_EQ(moment_vector(*direct.density)[7], 0);

    FitResult rays = minimize_higher_moments(symmetric3_rays(), moment_map(symmetric3_rays(), 2), mu);
    expect_exact_fit(rays, symmetric3(), mu);
    EXPECT_EQ(*rays.objective, 0);
}

TEST(MinimizeHigherMoments, ComonotoneTargetForcesTripleMoment)
{
    const PairMoments mu(3, {half, half, half});
    FitResult fit = minimize_higher_moments(symmetric3(), mu);
    expect_exact_fit(fit, symmetric3(), mu);
    EXPECT_EQ(*fit.objective, half);
    EXPECT_EQ(fit.density->values(), (RationalVector{half, 0, 0, 0, 0, 0, 0, half}));
}

TEST(MinimizeHigherMoments, RayAndDirectPathsAgreeAtFourDimensions)
{
    const FrechetClass c(RationalVector{half, r("1/3"), r("2/3"), r("1/4")});
    const RayMatrix rays = extreme_rays(c);
    const MomentMap a2p = moment_map(rays, 2);
    std::mt19937_64 gen(71);
    for (int t = 0; t < 5; ++t) {
        const PairMoments mu = pair_moments_of(rays.combine(oracle::random_weights(gen, rays.n_rays())));
        FitResult a = minimize_higher_moments(c, mu), b = minimize_higher_moments(rays, a2p, mu);
        expect_exact_fit(a, c, mu);
        expect_exact_fit(b, c, mu);
        EXPECT_EQ(*a.objective, *b.objective);
        // objective equals Σ_{|α| >= 3} E[X^α] of the returned density
        RationalVector mom = moment_vector(*a.density);
        Rational direct = 0;
        for (std::size_t alpha = 0; alpha < mom.size(); ++alpha)
            if (weight(alpha) >= 3) direct += mom[alpha];
        EXPECT_EQ(direct, *a.objective);
    }
}

TEST(MinimizeHigherMoments, InfeasibleTargetReportsCertificate)
{
    FitResult fit = minimize_higher_moments(symmetric3(), target(symmetric3(), {r("0.9"), r("-0.3"), r("0.6")}));
    ASSERT_FALSE(fit.feasible());
    EXPECT_TRUE(fit.certificate->verify());
}

TEST(MarginsGivenMu2, WorkedExamples)
{
    const PairMoments mu(2, {quarter});
    FitResult a = solve_margins_given_mu2(2, mu, {half, half});
    ASSERT_TRUE(a.feasible());
    EXPECT_EQ(margins_of(*a.density), (RationalVector{half, half}));
    EXPECT_EQ(pair_moments_of(*a.density).entries[0], quarter);

    FitResult b = solve_margins_given_mu2(2, mu, {quarter, quarter});
    ASSERT_TRUE(b.feasible());
    EXPECT_EQ(b.density->values(), (RationalVector{3 * quarter, 0, 0, quarter}));

    FitResult c = solve_margins_given_mu2(2, mu, {Rational(1) / 8, half});
    ASSERT_FALSE(c.feasible());
    EXPECT_TRUE(c.certificate->verify());
}

TEST(Nearest, FeasibleTargetIsFixed)
{
    const CorrelationSpec rho(3, {r("0.2"), r("-0.3"), r("0.4")});
    ProjectionResult pr = nearest_feasible_correlation(symmetric3(), symmetric3_rays(), rho);
    EXPECT_EQ(pr.squared_distance, 0);
    EXPECT_EQ(pr.rho_star.entries, rho.entries);
    EXPECT_EQ(pr.distance, 0);
    EXPECT_TRUE(in_class(symmetric3(), pr.density));
    EXPECT_EQ(pair_moments_of(pr.density).entries, mu2_from_rho(symmetric3(), rho).entries);
}

TEST(Nearest, InfeasibleTargetBeatsReferencePointAndMatchesOracle)
{
    const CorrelationSpec rho(3, {r("0.9"), r("-0.3"), r("0.6")});
    ProjectionResult pr = nearest_feasible_correlation(symmetric3(), symmetric3_rays(), rho);
    const std::vector<double> target{0.9, -0.3, 0.6};
    const double reference = rho_distance({r("19/30"), r("1/3"), r("-1/30")}, target);
    EXPECT_LE(pr.distance, reference);
    EXPECT_GT(pr.distance, 0);
    EXPECT_NEAR(pr.distance, rho_distance(pr.rho_star.entries, target), 1e-12);

    // returned density realizes ρ* exactly in the moment domain
    EXPECT_TRUE(in_class(symmetric3(), pr.density));
    EXPECT_EQ(pair_moments_of(pr.density).entries, pr.mu2_star.entries);
    EXPECT_EQ(symmetric3_rays().combine(pr.lambda), pr.density);

    const oracle::GridResult g = grid_oracle(symmetric3(), symmetric3_rays(), target);
    EXPECT_NEAR(pr.distance, std::sqrt(g.squared_distance), 1e-6);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(to_double(pr.rho_star.entries[k]), g.rho[k], 1e-6);
}

TEST(Nearest, CornerTargetMatchesOracle)
{
    for (const auto& t : {std::vector<double>{1, 1, 1}, std::vector<double>{-1, -1, -1}, std::vector<double>{1, -1, 1}}) {
        RationalVector rho;
        for (double v : t) rho.emplace_back(static_cast<int>(v));
        ProjectionResult pr = nearest_feasible_correlation(symmetric3(), symmetric3_rays(), CorrelationSpec(3, rho));
        const oracle::GridResult g = grid_oracle(symmetric3(), symmetric3_rays(), t);
        EXPECT_NEAR(pr.distance, std::sqrt(g.squared_distance), 1e-6);
    }
}

TEST(Nearest, AsymmetricClassMatchesOracle)
{
    const FrechetClass c(RationalVector{r("1/4"), r("1/7"), r("1/3")});
    const RayMatrix rays = extreme_rays(c);
    const std::vector<double> target{0.7, 0.8, -0.5};
    ProjectionResult pr =
        nearest_feasible_correlation(c, rays, CorrelationSpec(3, {r("0.7"), r("0.8"), r("-0.5")}));
    const oracle::GridResult g = grid_oracle(c, rays, target);
    EXPECT_NEAR(pr.distance, std::sqrt(g.squared_distance), 1e-6);
    EXPECT_TRUE(in_class(c, pr.density));
}

TEST(Nearest, DirectModeAgreesWithRays)
{
    for (const auto& rho : {RationalVector{r("0.9"), r("-0.3"), r("0.6")}, RationalVector{1, 1, 1},
                            RationalVector{r("0.1"), 0, r("-0.1")}}) {
        const CorrelationSpec spec(3, rho);
        ProjectionResult a = nearest_feasible_correlation(symmetric3(), symmetric3_rays(), spec);
        ProjectionResult b = nearest_feasible_correlation_direct(symmetric3(), spec);
        EXPECT_EQ(a.squared_distance, b.squared_distance);
        EXPECT_EQ(a.mu2_star.entries, b.mu2_star.entries);
        EXPECT_TRUE(in_class(symmetric3(), b.density));
        EXPECT_EQ(pair_moments_of(b.density).entries, b.mu2_star.entries);
    }
}
