#pragma once

#include "mbern/frechet.hpp"
#include "mbern/support.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

/*
 * I.i.d. draws from a density over S_m by inversion of the cumulative table.
 *
 * Each draw is one output u of std::mt19937_64, whose sequence is fixed by
 * the standard, read as u / 2^64 in [0, 1). Thresholds are the exact
 * cumulative sums rounded up onto the 2^-64 grid, so every support point is
 * selected with probability within 2^-64 of its mass and zero-mass points
 * are never selected.
 */
namespace mbern {

inline constexpr const char* kGeneratorId = "mt19937_64";

struct SampleBatch
{
    unsigned m = 0;
    std::uint64_t seed = 0;
    std::string generator_id = kGeneratorId;
    std::vector<std::uint64_t> draws; ///< canonical support index per draw

    std::size_t n() const { return draws.size(); }
    BinaryVector row(std::size_t k) const { return vector_of(draws[k], m); }
};

namespace detail {
using u128 = unsigned __int128;

inline std::vector<u128> inversion_thresholds(const Density& f)
{
    const Integer two64 = Integer(1) << 64;
    std::vector<u128> t;
    t.reserve(f.size());
    Rational cum = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        cum += f[j];
        Rational scaled = cum * Rational(two64);
        Integer c = numerator(scaled) / denominator(scaled);
        if (c * denominator(scaled) != numerator(scaled)) c += 1;
        const Integer hi = c >> 64, lo = c & (two64 - 1);
        t.push_back((static_cast<u128>(hi.convert_to<std::uint64_t>()) << 64) | lo.convert_to<std::uint64_t>());
    }
    return t;
}
} // namespace detail

inline SampleBatch sample(const Density& f, std::size_t n, std::uint64_t seed)
{
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    const auto thresholds = detail::inversion_thresholds(f);
    std::mt19937_64 gen(seed);
    SampleBatch batch{f.m(), seed, kGeneratorId, {}};
    batch.draws.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const detail::u128 u = gen();
        auto it = std::upper_bound(thresholds.begin(), thresholds.end(), u);
        batch.draws.push_back(static_cast<std::uint64_t>(it - thresholds.begin()));
    }
    return batch;
}

/** Exact sample means (k = 1) or sample pair moments in lex order (k = 2). */
inline RationalVector empirical_moments(const SampleBatch& batch, unsigned k)
{
    if (k != 1 && k != 2) throw std::invalid_argument("empirical_moments supports orders 1 and 2");
    const auto subsets = subsets_of_order(batch.m, k);
    std::vector<std::uint64_t> counts(subsets.size(), 0);
    for (std::uint64_t x : batch.draws)
        for (std::size_t s = 0; s < subsets.size(); ++s)
            if ((x & subsets[s]) == subsets[s]) ++counts[s];
    RationalVector out;
    for (auto c : counts) out.emplace_back(Rational(Integer(c), Integer(batch.n())));
    return out;
}

/** Empirical frequency of every support point. */
inline RationalVector empirical_distribution(const SampleBatch& batch)
{
    std::vector<std::uint64_t> counts(support_size(batch.m), 0);
    for (std::uint64_t x : batch.draws) ++counts[x];
    RationalVector out;
    for (auto c : counts) out.emplace_back(Rational(Integer(c), Integer(batch.n())));
    return out;
}

/** CSV with header x_1..x_m and one draw per row. */
inline void write_batch_csv(std::ostream& os, const SampleBatch& batch)
{
    for (unsigned i = 0; i < batch.m; ++i) os << (i ? "," : "") << "x_" << (i + 1);
    os << '\n';
    for (std::uint64_t x : batch.draws) {
        for (unsigned i = 0; i < batch.m; ++i) os << (i ? "," : "") << ((x >> i) & 1U);
        os << '\n';
    }
}

} // namespace mbern
