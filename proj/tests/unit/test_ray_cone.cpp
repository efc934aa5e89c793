#include "mbern/bounds.hpp"
#include "mbern/lp.hpp"
#include "mbern/ray_cone.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace mbern;

namespace {

Rational r(const char* s) { return parse_rational(s); }
const Rational half = Rational(1) / 2;

RationalVector apply_rows(const ConstraintMatrix& h, const RationalVector& f)
{
    RationalVector out;
    for (const auto& row : h.rows) out.push_back(dot(row, f));
    return out;
}

bool all_zero(const RationalVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::set<RationalVector> as_set(const RayMatrix& rays)
{
    std::set<RationalVector> out;
    for (const auto& c : rays.columns) out.insert(c.values());
    return out;
}

// Reference table for p = (1/4, 1/7, 1/3), rows in display order (1,1,1) first, 3 decimals.
const std::vector<std::vector<double>> kSeventhsTable = {
    {0, 0, 0, 0, 0, 0, 0, 0, 0.06, 0.143, 0.143},
    {0, 0, 0, 0, 0.083, 0.143, 0.143, 0.113, 0.083, 0, 0},
    {0, 0, 0.107, 0.25, 0.25, 0, 0.19, 0.22, 0.19, 0, 0.107},
    {0.333, 0.333, 0.226, 0.083, 0, 0.19, 0, 0, 0, 0.19, 0.083},
    {0, 0.143, 0.143, 0, 0, 0, 0, 0.03, 0, 0, 0},
    {0.143, 0, 0, 0.143, 0.06, 0, 0, 0, 0, 0, 0},
    {0.25, 0.107, 0, 0, 0, 0.25, 0.06, 0, 0, 0.107, 0},
    {0.274, 0.417, 0.524, 0.524, 0.607, 0.417, 0.607, 0.637, 0.667, 0.56, 0.667},
};

} // namespace

TEST(BuildH, UnivariateRowAndKernel)
{
    FrechetClass c(RationalVector{half});
    ConstraintMatrix h = build_h(c);
    ASSERT_EQ(h.rows.size(), 1u);
    EXPECT_EQ(h.rows[0][0], -h.rows[0][1]); // proportional to (1, -1)
    EXPECT_GT(h.rows[0][0], 0);
    RayMatrix rays = extreme_rays(c);
    ASSERT_EQ(rays.n_rays(), 1u);
    EXPECT_EQ(rays.columns[0].values(), (RationalVector{half, half}));
}

TEST(BuildH, RowsAreScaledOdds)
{
    FrechetClass c(RationalVector{r("1/4"), r("1/7"), r("1/3")});
    ConstraintMatrix h = build_h(c);
    ASSERT_EQ(h.rows.size(), 3u);
    for (unsigned i = 0; i < 3; ++i)
        for (std::size_t x = 0; x < 8; ++x) {
            const bool xi = (x >> i) & 1U;
            // γ_i (1 - x_i) - x_i scaled by q_i
            EXPECT_EQ(h.rows[i][x], c.q(i) * (c.odds(i) * (xi ? 0 : 1) - (xi ? 1 : 0)));
        }
}

TEST(BuildH, KernelIsTheClass)
{
    FrechetClass c(RationalVector{half, half});
    const Rational q = Rational(1) / 4;
    EXPECT_TRUE(all_zero(apply_rows(build_h(c), {q, q, q, q})));
    EXPECT_FALSE(all_zero(apply_rows(build_h(c), {half, half, 0, 0})));
    std::mt19937_64 gen(41);
    for (int t = 0; t < 30; ++t) {
        const unsigned m = 1 + static_cast<unsigned>(t % 4);
        oracle::Vec p;
        for (unsigned i = 0; i < m; ++i) p.push_back(oracle::random_margin(gen));
        FrechetClass cls(p);
        Density f(oracle::random_density(gen, m));
        EXPECT_EQ(all_zero(apply_rows(build_h(cls), f.values())), in_class(cls, f));
    }
}

TEST(BuildH2, WorkedExamples)
{
    const Rational q = Rational(1) / 4;
    ConstraintMatrix h = build_h2(2, PairMoments(2, {q}));
    EXPECT_TRUE(all_zero(apply_rows(h, {q, q, q, q})));
    EXPECT_TRUE(all_zero(apply_rows(h, {3 * q, 0, 0, q})));
    EXPECT_FALSE(all_zero(apply_rows(h, {half, 0, 0, half})));

    ConstraintMatrix zero = build_h2(2, PairMoments(2, {0}));
    EXPECT_EQ(zero.rows[0], (RationalVector{0, 0, 0, 1})); // f(1,1) = 0
    ConstraintMatrix one = build_h2(2, PairMoments(2, {1}));
    EXPECT_EQ(one.rows[0], (RationalVector{1, 1, 1, 0}));

    EXPECT_THROW(build_h2(2, PairMoments(2, {Rational(-1) / 10})), std::invalid_argument);
    EXPECT_THROW(build_h2(2, PairMoments(2, {Rational(11) / 10})), std::invalid_argument);
}

TEST(BuildH2, KernelFixesPairMoments)
{
    std::mt19937_64 gen(43);
    for (int t = 0; t < 30; ++t) {
        const unsigned m = 2 + static_cast<unsigned>(t % 3);
        Density f(oracle::random_density(gen, m));
        PairMoments mu = pair_moments_of(f);
        EXPECT_TRUE(all_zero(apply_rows(build_h2(m, mu), f.values())));
        Density g(oracle::random_density(gen, m));
        EXPECT_EQ(all_zero(apply_rows(build_h2(m, mu), g.values())), pair_moments_of(g).entries == mu.entries);
    }
}

TEST(ExtremeRays, BivariateClassIsTheSegmentBetweenFrechetBounds)
{
    std::mt19937_64 gen(47);
    for (int t = 0; t < 25; ++t) {
        const Rational p1 = oracle::random_margin(gen), p2 = oracle::random_margin(gen);
        RayMatrix rays = extreme_rays(FrechetClass(RationalVector{p1, p2}));
        auto [fl, fu] = bivariate_frechet_densities(p1, p2);
        EXPECT_EQ(as_set(rays), (std::set<RationalVector>{fl.values(), fu.values()}));
    }
}

TEST(ExtremeRays, TrivariateCounts)
{
    EXPECT_EQ(extreme_rays(FrechetClass(RationalVector{half, half, half})).n_rays(), 6u);
    EXPECT_EQ(extreme_rays(FrechetClass(RationalVector{r("1/4"), r("3/4"), half})).n_rays(), 6u);
    EXPECT_EQ(extreme_rays(FrechetClass(RationalVector{r("1/4"), r("1/7"), r("1/3")})).n_rays(), 11u);
}

TEST(ExtremeRays, FiveDimensionalSymmetricCount)
{
    RayEnumerationStats stats;
    RayMatrix rays = extreme_rays(FrechetClass(RationalVector(5, half)), {}, &stats);
    EXPECT_EQ(rays.n_rays(), 2712u);
    EXPECT_EQ(stats.rays_after_insertion.back(), 2712u);
}

TEST(ExtremeRays, RefusesAboveTheCap)
{
    EXPECT_THROW(extreme_rays(FrechetClass(RationalVector(7, half))), DimensionCapExceeded);
    EXPECT_THROW(extreme_rays(FrechetClass(RationalVector(4, half)), RayEnumerationOptions{3}), DimensionCapExceeded);
}

TEST(ExtremeRays, MatchesTheSeventhsReferenceTable)
{
    const FrechetClass c(RationalVector{r("1/4"), r("1/7"), r("1/3")});
    RayMatrix rays = extreme_rays(c);
    ASSERT_EQ(rays.n_rays(), kSeventhsTable.front().size());
    std::vector<bool> used(rays.n_rays(), false);
    for (std::size_t col = 0; col < rays.n_rays(); ++col) {
        bool found = false;
        for (std::size_t k = 0; k < rays.n_rays() && !found; ++k) {
            if (used[k]) continue;
            bool close = true;
            for (std::size_t row = 0; row < 8; ++row)
                close = close && std::abs(to_double(rays.columns[k][paper_row_to_canonical(row, 3)]) -
                                          kSeventhsTable[row][col]) < 5e-3;
            if (close) used[k] = found = true;
        }
        EXPECT_TRUE(found) << "reference column " << col + 1;
    }
}

TEST(ExtremeRays, ColumnsAreValidDistinctAndExtreme)
{
    for (const auto& p : {RationalVector{half, half, half}, RationalVector{r("1/4"), r("3/4"), half},
                          RationalVector{r("1/4"), r("1/7"), r("1/3")}, RationalVector{r("2/3"), r("1/5"), r("3/8"), r("1/2")}}) {
        const FrechetClass c(p);
        const ConstraintMatrix h = build_h(c);
        RayMatrix rays = extreme_rays(c);
        EXPECT_TRUE(std::is_sorted(rays.columns.begin(), rays.columns.end()));
        EXPECT_EQ(as_set(rays).size(), rays.n_rays());
        for (const auto& col : rays.columns) {
            EXPECT_TRUE(all_zero(apply_rows(h, col.values())));
            EXPECT_TRUE(in_class(c, col));
        }
        // no column is a convex combination of the others
        for (std::size_t k = 0; k < rays.n_rays(); ++k) {
            Matrix a(support_size(c.m()) + 1, rays.n_rays() - 1);
            RationalVector b = rays.columns[k].values();
            b.push_back(1);
            std::size_t out = 0;
            for (std::size_t j = 0; j < rays.n_rays(); ++j) {
                if (j == k) continue;
                for (std::size_t x = 0; x < support_size(c.m()); ++x) a(x, out) = rays.columns[j][x];
                a(support_size(c.m()), out) = 1;
                ++out;
            }
            EXPECT_EQ(solve_lp(LinearProgram{a, b, {}}).status, LpStatus::Infeasible);
        }
    }
}

TEST(ExtremeRays, ConvexCombinationsStayInClass)
{
    std::mt19937_64 gen(53);
    const FrechetClass c(RationalVector{r("1/4"), r("1/7"), r("1/3")});
    RayMatrix rays = extreme_rays(c);
    for (int t = 0; t < 50; ++t) EXPECT_TRUE(in_class(c, rays.combine(oracle::random_weights(gen, rays.n_rays()))));
}

TEST(ExtremeRays, DeterministicOutput)
{
    const FrechetClass c(RationalVector{r("2/5"), r("1/3"), r("5/6"), r("1/2")});
    RayMatrix a = extreme_rays(c), b = extreme_rays(c);
    EXPECT_EQ(a.columns, b.columns);
}

TEST(ExtremeRays, AgreesWithBasicSolutionOracle)
{
    std::mt19937_64 gen(59);
    for (int t = 0; t < 30; ++t) {
        const unsigned m = 2 + static_cast<unsigned>(t % 2);
        oracle::Vec p;
        for (unsigned i = 0; i < m; ++i) p.push_back(oracle::random_margin(gen));
        EXPECT_EQ(as_set(extreme_rays(FrechetClass(p))), oracle::class_vertices(p));
    }
}

TEST(ExtremeRays, PairMomentCone)
{
    // E[X1X2] = 1/4 at m = 2: vertices of {f >= 0, Σf = 1, f(1,1) = 1/4}
    RayMatrix rays = extreme_rays(build_h2(2, PairMoments(2, {Rational(1) / 4})));
    const Rational q = Rational(1) / 4;
    EXPECT_EQ(as_set(rays), (std::set<RationalVector>{{3 * q, 0, 0, q}, {0, 3 * q, 0, q}, {0, 0, 3 * q, q}}));
    for (const auto& col : rays.columns) EXPECT_EQ(pair_moments_of(col).entries[0], q);
}

TEST(MomentMap, SymmetricTrivariateRowsSpanZeroToHalf)
{
    RayMatrix rays = extreme_rays(FrechetClass(RationalVector{half, half, half}));
    MomentMap a2 = moment_map(rays, 2);
    ASSERT_EQ(a2.rows(), 3u);
    ASSERT_EQ(a2.cols(), 6u);
    for (std::size_t k = 0; k < 3; ++k) {
        RationalVector row(a2.entries.row(k).begin(), a2.entries.row(k).end());
        EXPECT_EQ(*std::min_element(row.begin(), row.end()), Rational(0));
        EXPECT_EQ(*std::max_element(row.begin(), row.end()), half);
    }
}

TEST(MomentMap, BivariateEntriesAreFrechetMoments)
{
    const Rational p1 = r("1/3"), p2 = r("3/4");
    MomentMap a2 = moment_map(extreme_rays(FrechetClass(RationalVector{p1, p2})), 2);
    ASSERT_EQ(a2.cols(), 2u);
    std::set<Rational> vals{a2.entries(0, 0), a2.entries(0, 1)};
    EXPECT_EQ(vals, (std::set<Rational>{std::max(Rational(p1 + p2 - 1), Rational(0)), std::min(p1, p2)}));
}

TEST(MomentMap, SeventhsPairOneTwoRange)
{
    MomentMap a2 = moment_map(extreme_rays(FrechetClass(RationalVector{r("1/4"), r("1/7"), r("1/3")})), 2);
    RationalVector row(a2.entries.row(0).begin(), a2.entries.row(0).end());
    EXPECT_EQ(*std::min_element(row.begin(), row.end()), Rational(0));
    EXPECT_EQ(*std::max_element(row.begin(), row.end()), r("1/7"));
    MomentMap a1 = moment_map(extreme_rays(FrechetClass(RationalVector{r("1/4"), r("1/7"), r("1/3")})), 1);
    for (std::size_t c = 0; c < a1.cols(); ++c) EXPECT_EQ(a1.entries(1, c), r("1/7"));
}
