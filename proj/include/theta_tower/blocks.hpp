#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "arith.hpp"
#include "enumerate.hpp"
#include "lattice.hpp"
#include "series.hpp"

namespace theta_tower
{

// ---------------------------------------------------------------------------
// Odd Jacobi theta function and Dedekind eta

/// theta(tau, z) = sum_{n odd} (-4/n) q^{n^2/8} zeta^{n/2}, from the sum formula.
inline FourierExpansion theta_sum(int qprec)
{
    FourierExpansion f(1, qprec);
    for (int n = 1; 3 * n * n < qprec; n += 2)
        for (int s : {n, -n})
            f.add_term(make_exponent(3 * n * n, {s}), Rational(kronecker_minus4(s)));
    return f;
}

/// theta from the Jacobi triple product
/// -q^{1/8} zeta^{-1/2} prod_{n>=1} (1 - q^{n-1} zeta)(1 - q^n zeta^{-1})(1 - q^n).
inline FourierExpansion theta_product(int qprec)
{
    if (qprec <= 3)
        return FourierExpansion(1, qprec);
    const int inner = qprec - 3;
    FourierExpansion p = FourierExpansion::one(1, inner);
    auto binomial = [](int a, int u) {
        FourierExpansion b = FourierExpansion::one(1);
        b.add_term(make_exponent(a, {u}), Rational(-1));
        return b;
    };
    for (int n = 1; kQUnit * (n - 1) < inner; ++n)
    {
        p = mul(p, binomial(kQUnit * (n - 1), 2), inner);
        p = mul(p, binomial(kQUnit * n, -2), inner);
        p = mul(p, binomial(kQUnit * n, 0), inner);
    }
    return mul(p, FourierExpansion::monomial(1, make_exponent(3, {-1}), Rational(-1)));
}

/// theta(tau, z) to the given precision; the sum formula and the triple product are both
/// evaluated and must agree.
inline FourierExpansion theta(int qprec)
{
    FourierExpansion s = theta_sum(qprec);
    FourierExpansion p = theta_product(qprec);
    if (!(s == p))
        throw std::logic_error("theta: sum formula and triple product disagree");
    return s;
}

/// prod_{n>=1} (1 - q^n) via Euler's pentagonal number theorem.
inline FourierExpansion euler_product(int qprec)
{
    // sum_k (-1)^k q^{k(3k-1)/2} over all integers k
    FourierExpansion f(0, qprec);
    f.add_term(Exponent{}, Rational(1));
    for (long k = 1; kQUnit * (k * (3 * k - 1) / 2) < qprec; ++k)
        for (long pent : {k * (3 * k - 1) / 2, k * (3 * k + 1) / 2})
            if (kQUnit * pent < qprec)
                f.add_term(Exponent{static_cast<int>(kQUnit * pent), {}}, Rational(k % 2 == 0 ? 1 : -1));
    return f;
}

/// eta(tau)^e = q^{e/24} prod (1 - q^n)^e for e >= 0.
inline FourierExpansion eta_pow(int e, int qprec)
{
    if (e < 0)
        throw SeriesError("eta_pow: exponent must be nonnegative");
    if (e == 0)
        return FourierExpansion::one(0, qprec);
    if (qprec <= e)
        return FourierExpansion(0, qprec);
    const int inner = qprec - e;
    return shift_q(power(euler_product(inner), static_cast<unsigned>(e), inner), e);
}

/// theta(tau, sum_j c_j z_j) as an m-variable series.
inline FourierExpansion theta_linear(const std::vector<int>& c, int qprec)
{
    bool nonzero = false;
    for (int x : c)
        nonzero = nonzero || x != 0;
    if (!nonzero)
        throw SeriesError("theta_linear: coefficient vector must be nonzero");
    const FourierExpansion t = theta(qprec);
    FourierExpansion f(c.size(), qprec);
    for (const auto& [e, v] : t.terms())
    {
        Exponent x;
        x.a = e.a;
        for (std::size_t j = 0; j < c.size(); ++j)
            x.u[j] = c[j] * e.u[0];
        f.add_term(x, v);
    }
    return f;
}

/// The theta block prod_{j=1}^m theta(tau, z_j).
inline FourierExpansion theta_mA1(std::size_t m, int qprec)
{
    const FourierExpansion t = theta(qprec);
    FourierExpansion f = FourierExpansion::one(m);
    for (std::size_t j = 0; j < m; ++j)
        f = mul(f, embed_vars(t, m, {j}), qprec);
    return f.truncated(qprec);
}

// ---------------------------------------------------------------------------
// Even theta constants and the weak form phi_{0,1}

namespace detail
{
/// theta_2, theta_3, theta_4 as functions of z (one variable).
inline FourierExpansion theta_even(int which, int qprec)
{
    FourierExpansion f(1, qprec);
    if (which == 2)
    {
        // sum_n q^{(2n+1)^2/8} zeta^{(2n+1)/2}
        for (int k = 1; 3 * k * k < qprec; k += 2)
            for (int s : {k, -k})
                f.add_term(make_exponent(3 * k * k, {s}), Rational(1));
        return f;
    }
    // sum_n (+-1)^n q^{n^2/2} zeta^n
    for (int n = 0; 12 * n * n < qprec; ++n)
        for (int s : {n, -n})
        {
            f.add_term(make_exponent(12 * n * n, {2 * s}), Rational(which == 4 && n % 2 ? -1 : 1));
            if (n == 0)
                break;
        }
    return f;
}

/// (theta_i(z) / theta_i(0))^2 for i = 2, 3, 4.
inline FourierExpansion theta_ratio_squared(int which, int qprec)
{
    const int lead = which == 2 ? 6 : 0;
    FourierExpansion t = theta_even(which, qprec + lead);
    FourierExpansion sq = shift_q(mul(t, t, qprec + lead), -lead);
    FourierExpansion den = inverse(restrict_var(sq, 0));
    return mul(sq, extend_vars(den, 1), qprec);
}
} // namespace detail

/// phi_{0,1}(tau, z) = 4 sum_{i=2,3,4} (theta_i(z)/theta_i(0))^2, one variable.
inline FourierExpansion phi01(int qprec)
{
    FourierExpansion s(1, qprec);
    for (int which : {2, 3, 4})
        s = add(s, detail::theta_ratio_squared(which, qprec));
    return scale(s, Rational(4));
}

/// phi_{0,1}(tau, z_var) in m variables.
inline FourierExpansion phi01_in(std::size_t m, std::size_t var, int qprec)
{
    return embed_vars(phi01(qprec), m, {var});
}

// ---------------------------------------------------------------------------
// E8 theta function pulled back to mA1

/// E8 vectors as doubled ambient integer coordinates, all norms up to max_norm.
struct E8Shells
{
    long max_norm = 0;
    std::vector<std::array<int, 8>> vectors;
};

inline E8Shells enumerate_e8_shells(long max_norm)
{
    const GramLattice e8 = lattice_E8();
    const auto& basis = e8.ambient()->basis;
    std::array<std::array<int, 8>, 8> b2{};
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t k = 0; k < 8; ++k)
            b2[i][k] = static_cast<int>(to_long(basis(i, k) * 2));
    E8Shells out;
    out.max_norm = max_norm;
    ShortVectorEnumerator en(e8.gram());
    en.for_each(max_norm, [&](std::span<const long> x, std::int64_t) {
        std::array<int, 8> w{};
        for (std::size_t i = 0; i < 8; ++i)
            if (x[i] != 0)
                for (std::size_t k = 0; k < 8; ++k)
                    w[k] += static_cast<int>(x[i]) * b2[i][k];
        out.vectors.push_back(w);
    });
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
}

/// Largest E8 norm needed for a series with the given watermark.
inline long e8_norm_bound(int qprec)
{
    // q-exponent (v, v)/2 in 1/24 units is 12 (v, v); need 12 (v, v) < qprec.
    return qprec <= 0 ? -1 : (qprec - 1) / 12;
}

/// E_{4, mA1}(tau, z) = sum_{v in E8} q^{(v,v)/2} prod_j zeta_j^{(v, eps_j)}, m = 0..4.
/// With `shells` the E8 vectors are taken from a precomputed table instead of enumerated.
inline FourierExpansion eps4(std::size_t m, int qprec, const E8Shells* shells = nullptr)
{
    if (m > 4)
        throw SeriesError("eps4: m must be in 0..4");
    const long bound = e8_norm_bound(qprec);
    std::optional<E8Shells> local;
    if (shells == nullptr || shells->max_norm < bound)
    {
        local = enumerate_e8_shells(bound);
        shells = &*local;
    }
    const auto chain = e8_chain();
    std::array<std::array<int, 8>, 4> eps{};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 8; ++k)
            eps[j][k] = static_cast<int>(to_long(chain[j][k]));
    std::map<Exponent, long> counts;
    for (const auto& w : shells->vectors)
    {
        long nrm4 = 0; // 4 (v, v)
        for (int c : w)
            nrm4 += static_cast<long>(c) * c;
        if (nrm4 > 4 * bound)
            continue;
        Exponent e;
        e.a = static_cast<int>(3 * nrm4); // 24 * (v, v) / 2
        for (std::size_t j = 0; j < m; ++j)
        {
            // u_j = 4 * (eps-coordinate) = 2 (v, eps_j) = (w, eps_j)
            int s = 0;
            for (std::size_t k = 0; k < 8; ++k)
                s += w[k] * eps[j][k];
            e.u[j] = s;
        }
        ++counts[e];
    }
    FourierExpansion f(m, qprec);
    for (const auto& [e, c] : counts)
        f.add_term(e, Rational(c));
    return f;
}

// ---------------------------------------------------------------------------
// Representation numbers of the complement duals

/// Vectors of K_m^dual (K_m = orthogonal complement of the first m chain vectors in E8),
/// stored as doubled ambient coordinates, for counting
/// s_m(n, l) = #{ x in K_m^dual : (x, x) = 2n - (l, l), l + x in E8 }.
class ComplementDualShells
{
public:
    ComplementDualShells(std::size_t m, const Rational& max_norm) : m_(m), max_norm_(max_norm)
    {
        if (m > 4)
            throw LatticeError("complement shells defined for m = 0..4");
        const GramLattice k = chain_complement(m);
        for_each_dual_vector(k, max_norm, [&](const LatticeVector& x, const Rational& nrm) {
            const AmbientVector a = to_ambient(k, x);
            std::array<int, 8> w{};
            for (std::size_t i = 0; i < 8; ++i)
                w[i] = static_cast<int>(to_long(a[i] * 2));
            vectors_.emplace_back(nrm, w);
        });
        std::sort(vectors_.begin(), vectors_.end());
    }

    std::size_t m() const { return m_; }

    /// l given in eps-coordinates (l = sum_j l_j eps_j with 2 l_j integral).
    std::int64_t count(long n, const std::vector<Rational>& l) const
    {
        if (l.size() != m_)
            throw LatticeError("l must have one eps-coordinate per A1 factor");
        const auto chain = e8_chain();
        std::array<int, 8> l2{}; // 2 l in ambient coordinates
        Rational lnorm = 0;
        for (std::size_t j = 0; j < m_; ++j)
        {
            const Rational twice = l[j] * 2;
            if (!is_integer(twice))
                throw LatticeError("l is not in the dual of mA1");
            lnorm += l[j] * l[j] * 2;
            for (std::size_t k = 0; k < 8; ++k)
                l2[k] += static_cast<int>(to_long(twice * chain[j][k]));
        }
        const Rational target = Rational(2 * n) - lnorm;
        if (target < 0)
            return 0;
        if (target > max_norm_)
            throw LatticeError("requested norm exceeds the enumerated range");
        auto lo = std::lower_bound(vectors_.begin(), vectors_.end(), target,
                                   [](const auto& v, const Rational& t) { return v.first < t; });
        std::int64_t c = 0;
        for (auto it = lo; it != vectors_.end() && it->first == target; ++it)
        {
            std::array<int, 8> s{};
            for (std::size_t k = 0; k < 8; ++k)
                s[k] = it->second[k] + l2[k];
            if (in_e8_doubled(s))
                ++c;
        }
        return c;
    }

    /// E8 membership for doubled ambient coordinates: all even or all odd, coordinate sum
    /// divisible by 4 (i.e. the undoubled sum is even).
    static bool in_e8_doubled(const std::array<int, 8>& s)
    {
        const int parity = s[0] & 1;
        long sum = 0;
        for (int c : s)
        {
            if ((c & 1) != parity)
                return false;
            sum += c;
        }
        return floor_mod(sum, 4) == 0;
    }

private:
    std::size_t m_;
    Rational max_norm_;
    std::vector<std::pair<Rational, std::array<int, 8>>> vectors_;
};

/// s_m(n, l) for a single pair.
inline std::int64_t s_m_count(std::size_t m, long n, const std::vector<Rational>& l)
{
    Rational lnorm = 0;
    for (const auto& x : l)
        lnorm += x * x * 2;
    const Rational target = Rational(2 * n) - lnorm;
    if (target < 0)
        return 0;
    return ComplementDualShells(m, target).count(n, l);
}

} // namespace theta_tower
