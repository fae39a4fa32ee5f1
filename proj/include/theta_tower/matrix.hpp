#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace theta_tower
{

/// Dense row-major matrix over an exact ring (Integer or Rational).
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows)
        {
            if (r.size() != cols_)
                throw std::invalid_argument("ragged matrix literal");
            for (long v : r)
                data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
            {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const T& f)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += f * (*this)(src, j);
    }
    /// col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const T& f)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += f * (*this)(i, src);
    }
    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = -(*this)(r, j);
    }
    void negate_col(std::size_t c)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, c) = -(*this)(i, c);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

inline bool is_symmetric(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m(i, j) != m(j, i))
                return false;
    return true;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return Integer(1);
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (a(k, k) == 0)
        {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return Integer(0);
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
            {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Inverse over the rationals; throws std::domain_error when singular.
inline RatMatrix inverse(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            throw std::domain_error("singular matrix");
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        Rational pivot = a(c, c);
        for (std::size_t j = 0; j < n; ++j)
        {
            a(c, j) /= pivot;
            inv(c, j) /= pivot;
        }
        for (std::size_t r = 0; r < n; ++r)
        {
            if (r == c || a(r, c) == 0)
                continue;
            Rational f = -a(r, c);
            a.add_row(r, c, f);
            inv.add_row(r, c, f);
        }
    }
    return inv;
}

/// Result of a Smith decomposition: left * input * right == diagonal.
struct SmithForm
{
    IntMatrix left;   // unimodular, rows x rows
    IntMatrix right;  // unimodular, cols x cols
    IntMatrix diagonal;
    std::vector<Integer> invariant_factors; // nonzero diagonal entries d_1 | d_2 | ...
};

inline SmithForm smith_normal_form(const IntMatrix& input)
{
    const std::size_t r = input.rows();
    const std::size_t c = input.cols();
    IntMatrix a = input;
    IntMatrix u = IntMatrix::identity(r);
    IntMatrix v = IntMatrix::identity(c);
    const std::size_t steps = std::min(r, c);

    for (std::size_t k = 0; k < steps; ++k)
    {
        while (true)
        {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = k, pj = k;
            Integer best;
            for (std::size_t i = k; i < r; ++i)
                for (std::size_t j = k; j < c; ++j)
                    if (a(i, j) != 0 && (!found || abs(a(i, j)) < best))
                    {
                        found = true;
                        best = abs(a(i, j));
                        pi = i;
                        pj = j;
                    }
            if (!found)
                break;
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            bool clean = true;
            for (std::size_t i = k + 1; i < r; ++i)
            {
                if (a(i, k) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, k).get_mpz_t(), a(k, k).get_mpz_t());
                a.add_row(i, k, -q);
                u.add_row(i, k, -q);
                if (a(i, k) != 0)
                    clean = false;
            }
            for (std::size_t j = k + 1; j < c; ++j)
            {
                if (a(k, j) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(k, j).get_mpz_t(), a(k, k).get_mpz_t());
                a.add_col(j, k, -q);
                v.add_col(j, k, -q);
                if (a(k, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Divisibility condition on the rest of the block.
            bool divides = true;
            for (std::size_t i = k + 1; i < r && divides; ++i)
                for (std::size_t j = k + 1; j < c; ++j)
                    if (a(i, j) % a(k, k) != 0)
                    {
                        a.add_row(k, i, Integer(1));
                        u.add_row(k, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(k, k) < 0)
        {
            a.negate_row(k);
            u.negate_row(k);
        }
    }

    SmithForm out{u, v, a, {}};
    for (std::size_t k = 0; k < steps; ++k)
        if (a(k, k) != 0)
            out.invariant_factors.push_back(a(k, k));
    return out;
}

/// Basis (as columns) of the integer kernel { x in Z^n : A x = 0 }.
/// The columns span the full kernel lattice, not merely a finite-index sublattice.
inline IntMatrix integer_kernel(const IntMatrix& a_in)
{
    const std::size_t r = a_in.rows();
    const std::size_t n = a_in.cols();
    IntMatrix a = a_in;
    IntMatrix u = IntMatrix::identity(n);
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < r && pivot < n; ++i)
    {
        // Column Euclid on row i across columns [pivot, n).
        while (true)
        {
            std::size_t best = n;
            for (std::size_t j = pivot; j < n; ++j)
                if (a(i, j) != 0 && (best == n || abs(a(i, j)) < abs(a(i, best))))
                    best = j;
            if (best == n)
                break;
            a.swap_cols(pivot, best);
            u.swap_cols(pivot, best);
            bool done = true;
            for (std::size_t j = pivot + 1; j < n; ++j)
            {
                if (a(i, j) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(i, pivot).get_mpz_t());
                a.add_col(j, pivot, -q);
                u.add_col(j, pivot, -q);
                if (a(i, j) != 0)
                    done = false;
            }
            if (done)
            {
                ++pivot;
                break;
            }
        }
    }
    IntMatrix kernel(n, n - pivot);
    for (std::size_t j = pivot; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            kernel(i, j - pivot) = u(i, j);
    return kernel;
}

/// Rank over Q.
inline std::size_t rank(const RatMatrix& m)
{
    RatMatrix a = m;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < a.cols() && rk < a.rows(); ++c)
    {
        std::size_t p = rk;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(rk, p);
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            if (i == rk || a(i, c) == 0)
                continue;
            Rational f = -a(i, c) / a(rk, c);
            a.add_row(i, rk, f);
        }
        ++rk;
    }
    return rk;
}

} // namespace theta_tower
