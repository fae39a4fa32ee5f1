#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "arith.hpp"
#include "lattice.hpp"
#include "matrix.hpp"

namespace theta_tower
{

/// Short-vector enumeration (Fincke-Pohst) for an integer positive definite form.
///
/// The quadratic form is decomposed exactly over Q as sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2.
/// The decomposition is converted to double only to derive coordinate ranges, and those
/// ranges are widened by a safety margin; every candidate is then accepted or rejected by
/// its exact integer norm, so the output is exact.
class ShortVectorEnumerator
{
public:
    explicit ShortVectorEnumerator(const IntMatrix& form) : n_(form.rows()), q_(n_ * n_)
    {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                q_[i * n_ + j] = to_long(form(i, j));
        // Exact LDL^T with the "upper" convention used by Fincke-Pohst.
        RatMatrix a = to_rational(form);
        diag_.assign(n_, 0.0);
        mu_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
        {
            for (std::size_t j = i + 1; j < n_; ++j)
            {
                a(j, i) = a(i, j);
                a(i, j) /= a(i, i);
            }
            for (std::size_t k = i + 1; k < n_; ++k)
                for (std::size_t l = k; l < n_; ++l)
                    a(k, l) -= a(k, i) * a(i, l);
        }
        for (std::size_t i = 0; i < n_; ++i)
        {
            diag_[i] = a(i, i).get_d();
            for (std::size_t j = i + 1; j < n_; ++j)
                mu_[i * n_ + j] = a(i, j).get_d();
        }
    }

    std::size_t dim() const { return n_; }

    /// Visits every x with x^T Q x <= bound (including 0). Callback gets (coords, exact norm).
    void for_each(std::int64_t bound, const std::function<void(std::span<const long>, std::int64_t)>& visit) const
    {
        if (bound < 0)
            return;
        std::vector<long> x(n_, 0);
        if (n_ == 0)
        {
            visit(std::span<const long>(x.data(), 0), 0);
            return;
        }
        std::vector<double> remaining(n_ + 1, 0.0);
        remaining[n_] = static_cast<double>(bound);
        recurse(static_cast<long>(n_) - 1, x, remaining, bound, visit);
    }

    std::int64_t exact_norm(std::span<const long> x) const
    {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n_; ++i)
        {
            if (x[i] == 0)
                continue;
            std::int64_t row = 0;
            for (std::size_t j = 0; j < n_; ++j)
                row = checked_add(row, checked_mul(q_[i * n_ + j], x[j]));
            s = checked_add(s, checked_mul(row, x[i]));
        }
        return s;
    }

private:
    void recurse(long i, std::vector<long>& x, std::vector<double>& remaining, std::int64_t bound,
                 const std::function<void(std::span<const long>, std::int64_t)>& visit) const
    {
        double center = 0.0;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n_; ++j)
            center += mu_[i * n_ + j] * static_cast<double>(x[j]);
        const double budget = remaining[i + 1];
        const double radius = std::sqrt(std::max(0.0, budget / diag_[i])) + 1e-6;
        const long lo = static_cast<long>(std::ceil(-center - radius));
        const long hi = static_cast<long>(std::floor(-center + radius));
        for (long v = lo; v <= hi; ++v)
        {
            x[i] = v;
            const double t = static_cast<double>(v) + center;
            remaining[i] = budget - diag_[i] * t * t;
            if (remaining[i] < -1e-6 * (1.0 + static_cast<double>(bound)))
                continue;
            if (i == 0)
            {
                std::int64_t nrm = exact_norm(x);
                if (nrm <= bound)
                    visit(std::span<const long>(x.data(), n_), nrm);
            }
            else
            {
                recurse(i - 1, x, remaining, bound, visit);
            }
        }
        x[i] = 0;
    }

    std::size_t n_;
    std::vector<std::int64_t> q_;
    std::vector<double> diag_;
    std::vector<double> mu_;
};

/// All lattice vectors (basis coordinates) with norm exactly N, sorted lexicographically.
inline std::vector<LatticeVector> vectors_of_norm(const GramLattice& lattice, long norm_value)
{
    if (norm_value < 0)
        throw LatticeError("norm must be nonnegative");
    std::vector<std::vector<long>> found;
    ShortVectorEnumerator en(lattice.gram());
    en.for_each(norm_value, [&](std::span<const long> x, std::int64_t nrm) {
        if (nrm == norm_value)
            found.emplace_back(x.begin(), x.end());
    });
    std::sort(found.begin(), found.end());
    std::vector<LatticeVector> out;
    out.reserve(found.size());
    for (const auto& f : found)
    {
        LatticeVector v;
        for (long c : f)
            v.coords.emplace_back(c);
        out.push_back(std::move(v));
    }
    return out;
}

/// Number of lattice vectors of each norm 0..max_norm (index = norm).
inline std::vector<std::int64_t> shell_counts(const GramLattice& lattice, long max_norm)
{
    std::vector<std::int64_t> counts(static_cast<std::size_t>(max_norm) + 1, 0);
    ShortVectorEnumerator en(lattice.gram());
    en.for_each(max_norm, [&](std::span<const long>, std::int64_t nrm) { ++counts[static_cast<std::size_t>(nrm)]; });
    return counts;
}

/// Dual-lattice enumeration. Visits every x in L^dual (given in L-basis coordinates)
/// with (x, x) <= bound, together with its exact norm.
inline void for_each_dual_vector(const GramLattice& lattice, const Rational& bound,
                                 const std::function<void(const LatticeVector&, const Rational&)>& visit)
{
    const std::size_t n = lattice.rank();
    RatMatrix ginv = inverse(to_rational(lattice.gram()));
    // Scale G^{-1} to an integer matrix: dual-basis Gram is G^{-1}.
    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), ginv(i, j).get_den_mpz_t());
    IntMatrix scaled(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
        {
            Rational v = ginv(i, j) * Rational(den);
            scaled(i, j) = v.get_num();
        }
    const std::int64_t scaled_bound = to_long(floor(bound * Rational(den)));
    ShortVectorEnumerator en(scaled);
    en.for_each(scaled_bound, [&](std::span<const long> y, std::int64_t nrm) {
        // x = G^{-1} y in L-basis coordinates
        LatticeVector x = LatticeVector::zero(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (y[j] != 0)
                    x.coords[i] += ginv(i, j) * y[j];
        visit(x, Rational(nrm) / Rational(den));
    });
}

} // namespace theta_tower
