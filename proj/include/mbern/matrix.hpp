#pragma once

#include "mbern/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mbern {

/** Dense row-major matrix of exact rationals. */
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    RationalVector column(std::size_t c) const
    {
        RationalVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    RationalVector data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline RationalVector operator*(const Matrix& a, std::span<const Rational> x)
{
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimensions differ");
    RationalVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rational acc = 0;
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (x[k] != 0) acc += a(i, k) * x[k];
        out[i] = std::move(acc);
    }
    return out;
}

inline RationalVector operator*(const Matrix& a, const RationalVector& x)
{
    return a * std::span<const Rational>(x);
}

/** Standard Kronecker product: entry (ra*d + rb, ca*l + cb) = a(ra,ca) * b(rb,cb). */
inline Matrix kronecker(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            if (a(ra, ca) == 0) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = a(ra, ca) * b(rb, cb);
        }
    return out;
}

/** a ⊗ a ⊗ ... ⊗ a (n factors); n = 0 gives the 1x1 identity. */
inline Matrix kron_power(const Matrix& a, unsigned n)
{
    Matrix out = Matrix::identity(1);
    for (unsigned i = 0; i < n; ++i) out = kronecker(out, a);
    return out;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
    return acc;
}

/** Rank by exact Gaussian elimination. */
inline std::size_t rank(Matrix m)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(piv, k));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
        }
        ++r;
    }
    return r;
}

/** Solves the square system a x = b exactly; nullopt when a is singular. */
inline std::optional<RationalVector> solve(Matrix a, RationalVector b)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: system is not square");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
            std::swap(b[c], b[piv]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rational f = a(i, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k) a(i, k) -= f * a(c, k);
            b[i] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a(i, i);
    return b;
}

} // namespace mbern
