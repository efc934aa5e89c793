#pragma once

#include "mbern/matrix.hpp"
#include "mbern/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

/*
 * Exact rational simplex for   min c'x  s.t.  A x = b,  x >= 0.
 *
 * Two phases over a dense tableau. Phase 1 adds one artificial per row
 * (rows are first negated where b_i < 0) and minimizes their sum. Pricing
 * is Dantzig's rule; the lexicographic ratio test prevents cycling, with
 * Bland's smallest-index rule as a fallback when pivots stall. When phase 1 ends with a positive optimum, the phase-1
 * dual w gives the Farkas vector y = -w with y'A >= 0 and y'b < 0.
 */
namespace mbern {

struct LinearProgram
{
    Matrix a;
    RationalVector b;
    RationalVector c; ///< empty means pure feasibility (c = 0)
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult
{
    LpStatus status = LpStatus::Infeasible;
    RationalVector x;        ///< primal solution when Optimal
    Rational objective = 0;  ///< c'x when Optimal
    RationalVector farkas;   ///< y with y'A >= 0, y'b < 0 when Infeasible
    std::size_t pivots = 0;
};

/** True when y proves {A x = b, x >= 0} empty: y'A >= 0 componentwise and y'b < 0. */
inline bool is_farkas_certificate(const Matrix& a, const RationalVector& b, const RationalVector& y)
{
    if (y.size() != a.rows() || b.size() != a.rows()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (y[i] != 0 && a(i, j) != 0) s += y[i] * a(i, j);
        if (s < 0) return false;
    }
    return dot(y, b) < 0;
}

namespace detail {

class SimplexTableau
{
public:
    SimplexTableau(const LinearProgram& lp) : rows_(lp.a.rows()), vars_(lp.a.cols())
    {
        if (lp.b.size() != rows_) throw std::invalid_argument("LP: b length does not match A");
        if (!lp.c.empty() && lp.c.size() != vars_) throw std::invalid_argument("LP: c length does not match A");
        width_ = vars_ + rows_ + 1;
        t_ = Matrix(rows_ + 1, width_);
        sign_.assign(rows_, 1);
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (lp.b[i] < 0) sign_[i] = -1;
            for (std::size_t j = 0; j < vars_; ++j)
                if (lp.a(i, j) != 0) t_(i, j) = sign_[i] * lp.a(i, j);
            t_(i, vars_ + i) = 1;
            t_(i, width_ - 1) = sign_[i] * lp.b[i];
            basis_[i] = vars_ + i;
        }
    }

    LpResult run(const RationalVector& cost)
    {
        LpResult res;
        // phase 1: reduced costs of the artificial objective
        for (std::size_t j = 0; j < width_; ++j) {
            Rational s = 0;
            if (j < vars_ || j == width_ - 1)
                for (std::size_t i = 0; i < rows_; ++i) s += t_(i, j);
            t_(rows_, j) = j < vars_ ? Rational(-s) : (j == width_ - 1 ? Rational(-s) : Rational(0));
        }
        iterate(width_ - 1, res.pivots);
        const Rational phase1 = -t_(rows_, width_ - 1);
        if (phase1 > 0) {
            res.status = LpStatus::Infeasible;
            res.farkas.resize(rows_);
            for (std::size_t i = 0; i < rows_; ++i) {
                // reduced cost of artificial i is 1 - w_i
                Rational w = 1 - t_(rows_, vars_ + i);
                res.farkas[i] = -w * sign_[i];
            }
            return res;
        }
        drive_out_artificials(res.pivots);

        // phase 2
        for (std::size_t j = 0; j < width_; ++j) t_(rows_, j) = 0;
        if (!cost.empty()) {
            for (std::size_t j = 0; j < vars_; ++j) t_(rows_, j) = cost[j];
            for (std::size_t i = 0; i < rows_; ++i) {
                const std::size_t bj = basis_[i];
                if (bj >= vars_ || cost[bj] == 0) continue;
                const Rational cb = cost[bj];
                for (std::size_t j = 0; j < width_; ++j)
                    if (t_(i, j) != 0) t_(rows_, j) -= cb * t_(i, j);
            }
        }
        if (!iterate(vars_, res.pivots)) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.x.assign(vars_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < vars_) res.x[basis_[i]] = t_(i, width_ - 1);
        res.objective = -t_(rows_, width_ - 1);
        return res;
    }

private:
    void pivot(std::size_t r, std::size_t c)
    {
        const Rational inv = 1 / t_(r, c);
        for (std::size_t j = 0; j < width_; ++j)
            if (t_(r, j) != 0) t_(r, j) *= inv;
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width_; ++j)
            if (t_(r, j) != 0) nz.push_back(j);
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == r || t_(i, c) == 0) continue;
            const Rational f = t_(i, c);
            for (std::size_t j : nz) t_(i, j) -= f * t_(r, j);
        }
        basis_[r] = c;
    }

    /**
     * Simplex iterations over columns [0, limit). False when unbounded.
     * Dantzig pricing with the lexicographic ratio test: ties on the
     * minimum ratio are broken by the rows of B^-1 (the artificial columns),
     * which prevents cycling. A very long degenerate run still switches to
     * Bland's rule for the rest of the phase as a backstop.
     */
    bool iterate(std::size_t limit, std::size_t& pivots)
    {
        bool bland = false;
        std::size_t degenerate_run = 0;
        while (true) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (t_(rows_, j) >= 0) continue;
                if (enter == limit || (!bland && t_(rows_, j) < t_(rows_, enter))) enter = j;
                if (bland) break;
            }
            if (enter == limit) return true;
            std::size_t leave = rows_;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (t_(i, enter) <= 0) continue;
                Rational ratio = t_(i, width_ - 1) / t_(i, enter);
                if (leave == rows_ || ratio < best || (ratio == best && prefer(i, leave, enter, bland))) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == rows_) return false;
            degenerate_run = best == 0 ? degenerate_run + 1 : 0;
            if (degenerate_run > 50 * rows_ + 100) bland = true;
            pivot(leave, enter);
            ++pivots;
        }
    }

    /// Tie-break between rows a and b with equal minimum ratio.
    bool prefer(std::size_t a, std::size_t b, std::size_t enter, bool bland) const
    {
        if (!bland)
            for (std::size_t k = 0; k < rows_; ++k) {
                const Rational va = t_(a, vars_ + k) / t_(a, enter), vb = t_(b, vars_ + k) / t_(b, enter);
                if (va != vb) return va < vb;
            }
        return basis_[a] < basis_[b];
    }

    /// After a zero phase-1 optimum, replace basic artificials by real columns where possible.
    void drive_out_artificials(std::size_t& pivots)
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < vars_) continue;
            for (std::size_t j = 0; j < vars_; ++j)
                if (t_(i, j) != 0) {
                    pivot(i, j);
                    ++pivots;
                    break;
                }
            // otherwise the row is redundant; its artificial stays basic at zero
        }
    }

    std::size_t rows_;
    std::size_t vars_;
    std::size_t width_ = 0;
    Matrix t_;
    std::vector<int> sign_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

/** Solves the LP exactly. Infeasible results carry a verified Farkas vector. */
inline LpResult solve_lp(const LinearProgram& lp)
{
    detail::SimplexTableau tableau(lp);
    LpResult res = tableau.run(lp.c);
    if (res.status == LpStatus::Infeasible && !is_farkas_certificate(lp.a, lp.b, res.farkas))
        throw std::logic_error("simplex produced an invalid infeasibility certificate");
    return res;
}

} // namespace mbern
