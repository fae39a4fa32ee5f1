#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace theta_tower
{

/// Maximum number of elliptic variables a series may carry.
inline constexpr std::size_t kMaxVars = 8;
/// q-exponents are stored in units of 1/24.
inline constexpr int kQUnit = 24;
/// Elliptic exponents u are stored so that the Fourier index l has eps-coordinates u/4;
/// the monomial is prod_j zeta_j^{u_j/2}, and (l, l) = sum u_j^2 / 8 for the form 2(.,.).
inline constexpr int kEllipticUnit = 4;

class SeriesError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Exponent of one term: q^{a/24} prod_j zeta_j^{u_j/2}.
struct Exponent
{
    int a = 0;
    std::array<int, kMaxVars> u{};

    auto operator<=>(const Exponent&) const = default;
    bool operator==(const Exponent&) const = default;

    /// Hyperbolic-norm ingredient (l, l) = sum u_j^2 / 8.
    Rational lattice_norm(std::size_t m) const
    {
        long s = 0;
        for (std::size_t j = 0; j < m; ++j)
            s += static_cast<long>(u[j]) * u[j];
        return make_rational(s, 8);
    }
};

inline Exponent make_exponent(int a, std::initializer_list<int> u)
{
    Exponent e;
    e.a = a;
    std::size_t i = 0;
    for (int v : u)
        e.u.at(i++) = v;
    return e;
}

/// Sparse exact Fourier expansion in q and m elliptic variables, truncated at a q-precision
/// watermark: every term with q-exponent below qprec/24 is known exactly, nothing at or above
/// it is stored. Series that are exact polynomials carry the watermark `kExact`.
class FourierExpansion
{
public:
    static constexpr int kExact = 1 << 29;
    using TermMap = std::map<Exponent, Rational>;

    FourierExpansion() = default;
    FourierExpansion(std::size_t vars, int qprec) : vars_(vars), qprec_(std::min(qprec, kExact))
    {
        if (vars > kMaxVars)
            throw SeriesError("at most " + std::to_string(kMaxVars) + " elliptic variables supported");
        if (qprec < 0)
            throw SeriesError("negative precision watermark");
    }

    static FourierExpansion zero(std::size_t vars, int qprec) { return FourierExpansion(vars, qprec); }
    static FourierExpansion one(std::size_t vars, int qprec = kExact)
    {
        FourierExpansion f(vars, qprec);
        f.add_term(Exponent{}, Rational(1));
        return f;
    }
    static FourierExpansion monomial(std::size_t vars, const Exponent& e, const Rational& c, int qprec = kExact)
    {
        FourierExpansion f(vars, qprec);
        f.add_term(e, c);
        return f;
    }

    std::size_t vars() const { return vars_; }
    int qprec() const { return qprec_; }
    bool is_exact() const { return qprec_ >= kExact; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Accumulates c at e. Terms at or above the watermark are discarded; zeros are dropped.
    void add_term(const Exponent& e, const Rational& c)
    {
        check_exponent(e);
        if (e.a >= qprec_ || c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted)
        {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Rational coeff(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Smallest stored q-exponent; for the zero series the watermark (it is zero below it).
    int valuation() const { return terms_.empty() ? qprec_ : terms_.begin()->first.a; }

    FourierExpansion truncated(int qprec) const
    {
        FourierExpansion r(vars_, std::min(qprec, qprec_));
        for (const auto& [e, c] : terms_)
        {
            if (e.a >= r.qprec_)
                break;
            r.terms_.emplace_hint(r.terms_.end(), e, c);
        }
        return r;
    }

    bool operator==(const FourierExpansion& o) const
    {
        return vars_ == o.vars_ && qprec_ == o.qprec_ && terms_ == o.terms_;
    }

    /// All distinct q-exponents present, ascending.
    std::vector<int> q_exponents() const
    {
        std::vector<int> out;
        for (const auto& [e, c] : terms_)
            if (out.empty() || out.back() != e.a)
                out.push_back(e.a);
        return out;
    }

    /// Sub-series of one q-exponent.
    std::vector<std::pair<Exponent, Rational>> row(int a) const
    {
        std::vector<std::pair<Exponent, Rational>> out;
        auto it = std::find_if(terms_.begin(), terms_.end(), [a](const auto& t) { return t.first.a >= a; });
        for (; it != terms_.end() && it->first.a == a; ++it)
            out.emplace_back(it->first, it->second);
        return out;
    }

private:
    friend FourierExpansion raw_with_qprec(FourierExpansion f, int qprec);

    void check_exponent(const Exponent& e) const
    {
        for (std::size_t j = vars_; j < kMaxVars; ++j)
            if (e.u[j] != 0)
                throw SeriesError("exponent uses a variable beyond the series' arity");
    }

    std::size_t vars_ = 0;
    int qprec_ = kExact;
    TermMap terms_;
};

namespace detail
{
inline int saturating_add(int a, int b)
{
    long s = static_cast<long>(a) + b;
    return static_cast<int>(std::min<long>(s, FourierExpansion::kExact));
}

inline void require_same_vars(const FourierExpansion& f, const FourierExpansion& g, const char* op)
{
    if (f.vars() != g.vars())
        throw SeriesError(std::string(op) + ": series have different numbers of variables (" +
                          std::to_string(f.vars()) + " vs " + std::to_string(g.vars()) + ")");
}
} // namespace detail

inline FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g)
{
    detail::require_same_vars(f, g, "add");
    FourierExpansion r(f.vars(), std::min(f.qprec(), g.qprec()));
    for (const auto& [e, c] : f.terms())
        r.add_term(e, c);
    for (const auto& [e, c] : g.terms())
        r.add_term(e, c);
    return r;
}

inline FourierExpansion scale(const FourierExpansion& f, const Rational& c)
{
    FourierExpansion r(f.vars(), f.qprec());
    if (c == 0)
        return r;
    for (const auto& [e, v] : f.terms())
        r.add_term(e, v * c);
    return r;
}

inline FourierExpansion subtract(const FourierExpansion& f, const FourierExpansion& g)
{
    return add(f, scale(g, Rational(-1)));
}

inline FourierExpansion operator+(const FourierExpansion& f, const FourierExpansion& g) { return add(f, g); }
inline FourierExpansion operator-(const FourierExpansion& f, const FourierExpansion& g) { return subtract(f, g); }
inline FourierExpansion operator*(const Rational& c, const FourierExpansion& f) { return scale(f, c); }

/// Product of two series with nonnegative q-valuation. The result watermark is
/// min(qprec_f + val_g, qprec_g + val_f), optionally capped by `cap`.
inline FourierExpansion mul(const FourierExpansion& f, const FourierExpansion& g, int cap = FourierExpansion::kExact)
{
    detail::require_same_vars(f, g, "mul");
    for (const auto* s : {&f, &g})
        if (!s->empty() && s->terms().begin()->first.a < 0)
            throw SeriesError("mul: negative q-valuation is not supported");
    const int prec = std::min({detail::saturating_add(f.qprec(), g.valuation()),
                               detail::saturating_add(g.qprec(), f.valuation()), cap});
    FourierExpansion r(f.vars(), prec);
    const std::size_t m = f.vars();
    std::map<Exponent, Rational> acc;
    for (const auto& [ef, cf] : f.terms())
    {
        if (ef.a >= prec)
            break;
        for (const auto& [eg, cg] : g.terms())
        {
            const int a = ef.a + eg.a;
            if (a >= prec)
                break;
            Exponent e;
            e.a = a;
            for (std::size_t j = 0; j < m; ++j)
                e.u[j] = ef.u[j] + eg.u[j];
            auto [it, inserted] = acc.try_emplace(e);
            if (inserted)
                mpq_mul(it->second.get_mpq_t(), cf.get_mpq_t(), cg.get_mpq_t());
            else
                it->second += cf * cg;
        }
    }
    for (auto& [e, c] : acc)
        r.add_term(e, c);
    return r;
}

inline FourierExpansion operator*(const FourierExpansion& f, const FourierExpansion& g) { return mul(f, g); }

/// f^e by repeated squaring (e >= 0), truncated at `cap`.
inline FourierExpansion power(const FourierExpansion& f, unsigned e, int cap = FourierExpansion::kExact)
{
    FourierExpansion result = FourierExpansion::one(f.vars(), std::min(cap, FourierExpansion::kExact));
    FourierExpansion base = f.truncated(cap);
    while (e > 0)
    {
        if (e & 1u)
            result = mul(result, base, cap);
        e >>= 1u;
        if (e)
            base = mul(base, base, cap);
    }
    return result;
}

/// Multiplies by q^{da/24}; the watermark moves with the series. The result must keep
/// nonnegative exponents.
inline FourierExpansion shift_q(const FourierExpansion& f, int da)
{
    const int prec = f.is_exact() ? FourierExpansion::kExact : f.qprec() + da;
    if (prec < 0)
        throw SeriesError("shift_q: watermark would become negative");
    FourierExpansion r(f.vars(), prec);
    for (const auto& [e, c] : f.terms())
    {
        Exponent s = e;
        s.a += da;
        if (s.a < 0)
            throw SeriesError("shift_q: negative q-exponent");
        r.add_term(s, c);
    }
    return r;
}

/// Reciprocal of a series in q alone with nonzero constant term.
inline FourierExpansion inverse(const FourierExpansion& f)
{
    if (f.vars() != 0)
        throw SeriesError("inverse: only series without elliptic variables can be inverted");
    const Rational c0 = f.coeff(Exponent{});
    if (c0 == 0)
        throw SeriesError("inverse: constant term must be nonzero");
    if (f.is_exact() && f.size() > 1)
        throw SeriesError("inverse: needs a finite watermark for a non-monomial series");
    FourierExpansion g(0, f.qprec());
    if (f.is_exact())
    {
        g.add_term(Exponent{}, 1 / c0);
        return g;
    }
    std::vector<Rational> coeffs(static_cast<std::size_t>(f.qprec()), Rational(0));
    std::vector<std::pair<int, Rational>> fterms;
    for (const auto& [e, c] : f.terms())
        if (e.a > 0)
            fterms.emplace_back(e.a, c);
    coeffs[0] = 1 / c0;
    for (int a = 1; a < f.qprec(); ++a)
    {
        Rational s = 0;
        for (const auto& [b, c] : fterms)
        {
            if (b > a)
                break;
            const auto& prev = coeffs[static_cast<std::size_t>(a - b)];
            if (prev != 0)
                s += c * prev;
        }
        coeffs[static_cast<std::size_t>(a)] = -s / c0;
    }
    for (int a = 0; a < f.qprec(); ++a)
        if (coeffs[static_cast<std::size_t>(a)] != 0)
            g.add_term(Exponent{a, {}}, coeffs[static_cast<std::size_t>(a)]);
    return g;
}

/// Places the variables of f at positions `slots` of an m-variable series.
inline FourierExpansion embed_vars(const FourierExpansion& f, std::size_t m, const std::vector<std::size_t>& slots)
{
    if (slots.size() != f.vars())
        throw SeriesError("embed_vars: need one slot per variable");
    for (auto s : slots)
        if (s >= m)
            throw SeriesError("embed_vars: slot out of range");
    FourierExpansion r(m, f.qprec());
    for (const auto& [e, c] : f.terms())
    {
        Exponent x;
        x.a = e.a;
        for (std::size_t j = 0; j < f.vars(); ++j)
            x.u[slots[j]] += e.u[j];
        r.add_term(x, c);
    }
    return r;
}

/// Series in q alone viewed as a series in m variables (constant in all of them).
inline FourierExpansion extend_vars(const FourierExpansion& f, std::size_t m)
{
    std::vector<std::size_t> slots(f.vars());
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    return embed_vars(f, m, slots);
}

/// Sets z_var = 0 and merges coefficients.
inline FourierExpansion restrict_var(const FourierExpansion& f, std::size_t var)
{
    if (var >= f.vars())
        throw SeriesError("restrict_var: variable index out of range");
    FourierExpansion r(f.vars() - 1, f.qprec());
    for (const auto& [e, c] : f.terms())
    {
        Exponent x;
        x.a = e.a;
        for (std::size_t j = 0, k = 0; j < f.vars(); ++j)
            if (j != var)
                x.u[k++] = e.u[j];
        r.add_term(x, c);
    }
    return r;
}

/// Pullback along the last variable: phi(tau, (z_1..z_{m-1}, 0)).
inline FourierExpansion pullback_last(const FourierExpansion& f)
{
    if (f.vars() == 0)
        throw SeriesError("pullback_last: series has no elliptic variable");
    return restrict_var(f, f.vars() - 1);
}

namespace detail
{
inline FourierExpansion derivative_at_zero(const FourierExpansion& f, std::size_t var, int order)
{
    if (var >= f.vars())
        throw SeriesError("derivative: variable index out of range");
    FourierExpansion r(f.vars() - 1, f.qprec());
    for (const auto& [e, c] : f.terms())
    {
        if (e.u[var] == 0)
            continue;
        // ((1/2 pi i) d/dz)^order zeta^{u/2} = (u/2)^order zeta^{u/2}
        Rational factor(1);
        const Rational half_u = make_rational(e.u[var], 2);
        for (int k = 0; k < order; ++k)
            factor *= half_u;
        Exponent x;
        x.a = e.a;
        for (std::size_t j = 0, k = 0; j < f.vars(); ++j)
            if (j != var)
                x.u[k++] = e.u[j];
        r.add_term(x, c * factor);
    }
    return r;
}
} // namespace detail

/// ((1/2 pi i) d/dz_var)^2 at z_var = 0. A term contributes c (u/2)^2.
inline FourierExpansion second_derivative_at_zero(const FourierExpansion& f, std::size_t var)
{
    return detail::derivative_at_zero(f, var, 2);
}

/// (1/2 pi i) d/dz_var at z_var = 0. A term contributes c (u/2).
inline FourierExpansion first_derivative_at_zero(const FourierExpansion& f, std::size_t var)
{
    return detail::derivative_at_zero(f, var, 1);
}

/// (sigma . phi)(tau, z) = phi(tau, sigma . z), realized by moving exponent component i to sigma[i].
inline FourierExpansion permute_vars(const FourierExpansion& f, const std::vector<std::size_t>& sigma)
{
    if (sigma.size() != f.vars())
        throw SeriesError("permute_vars: permutation size does not match number of variables");
    std::vector<bool> seen(sigma.size(), false);
    for (auto s : sigma)
    {
        if (s >= sigma.size() || seen[s])
            throw SeriesError("permute_vars: not a permutation");
        seen[s] = true;
    }
    FourierExpansion r(f.vars(), f.qprec());
    for (const auto& [e, c] : f.terms())
    {
        Exponent x;
        x.a = e.a;
        for (std::size_t j = 0; j < f.vars(); ++j)
            x.u[sigma[j]] = e.u[j];
        r.add_term(x, c);
    }
    return r;
}

/// z_var -> -z_var.
inline FourierExpansion reflect_var(const FourierExpansion& f, std::size_t var)
{
    if (var >= f.vars())
        throw SeriesError("reflect_var: variable index out of range");
    FourierExpansion r(f.vars(), f.qprec());
    for (const auto& [e, c] : f.terms())
    {
        Exponent x = e;
        x.u[var] = -x.u[var];
        r.add_term(x, c);
    }
    return r;
}

inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t m)
{
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::vector<std::size_t> transposition(std::size_t m, std::size_t i, std::size_t j)
{
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::swap(p[i], p[j]);
    return p;
}

/// Average over all m! variable permutations.
inline FourierExpansion symmetrize(const FourierExpansion& f)
{
    const auto perms = all_permutations(f.vars());
    std::map<Exponent, Rational> acc;
    for (const auto& sigma : perms)
        for (const auto& [e, c] : f.terms())
        {
            Exponent x;
            x.a = e.a;
            for (std::size_t j = 0; j < f.vars(); ++j)
                x.u[sigma[j]] = e.u[j];
            acc[x] += c;
        }
    FourierExpansion r(f.vars(), f.qprec());
    const Rational inv(1, static_cast<unsigned long>(perms.size()));
    for (auto& [e, c] : acc)
        r.add_term(e, c * inv);
    return r;
}

enum class SupportClass
{
    weak,
    holomorphic,
    cusp
};

inline const char* to_string(SupportClass c)
{
    switch (c)
    {
    case SupportClass::weak:
        return "weak";
    case SupportClass::holomorphic:
        return "holomorphic";
    case SupportClass::cusp:
        return "cusp";
    }
    return "?";
}

/// Hyperbolic norm 2 n t - (l, l) of a term, n = a/24.
inline Rational hyperbolic_norm(const Exponent& e, std::size_t m, const Rational& index)
{
    return Rational(2 * e.a) * index / kQUnit - e.lattice_norm(m);
}

/// weak if some term has negative hyperbolic norm, cusp if all are positive, holomorphic otherwise.
/// The zero series is classified as cusp.
inline SupportClass support_class(const FourierExpansion& f, const Rational& index)
{
    if (index <= 0)
        throw SeriesError("support_class: index must be positive");
    bool boundary = false;
    for (const auto& [e, c] : f.terms())
    {
        const Rational h = hyperbolic_norm(e, f.vars(), index);
        if (h < 0)
            return SupportClass::weak;
        if (h == 0)
            boundary = true;
    }
    return boundary ? SupportClass::holomorphic : SupportClass::cusp;
}

/// Equality on the common watermark.
inline bool equal_to_common_precision(const FourierExpansion& f, const FourierExpansion& g)
{
    if (f.vars() != g.vars())
        return false;
    const int p = std::min(f.qprec(), g.qprec());
    return f.truncated(p).terms() == g.truncated(p).terms();
}

/// The unique alpha with target = alpha * source on the common watermark, if one exists.
/// Fails when the supports differ, a ratio differs, or both series vanish.
inline std::optional<Rational> fit_ratio(const FourierExpansion& source, const FourierExpansion& target)
{
    if (source.vars() != target.vars())
        return std::nullopt;
    const int p = std::min(source.qprec(), target.qprec());
    const auto s = source.truncated(p);
    const auto t = target.truncated(p);
    if (s.size() != t.size() || s.empty())
        return std::nullopt;
    std::optional<Rational> alpha;
    auto it = t.terms().begin();
    for (const auto& [e, c] : s.terms())
    {
        if (it->first != e)
            return std::nullopt;
        Rational r = it->second / c;
        if (!alpha)
            alpha = r;
        else if (*alpha != r)
            return std::nullopt;
        ++it;
    }
    return alpha;
}

/// Printable label of a q-exponent in units of 1/24, e.g. "q^3" or "q^(1/8)".
inline std::string q_label(int a)
{
    Rational r = make_rational(a, kQUnit);
    if (is_integer(r))
        return "q^" + r.get_num().get_str();
    return "q^(" + r.get_str() + ")";
}

/// Printable label of an elliptic exponent in eps-coordinates, e.g. "r^(1/2,0)".
inline std::string r_label(const Exponent& e, std::size_t m)
{
    if (m == 0)
        return "";
    std::string s = "r^(";
    for (std::size_t j = 0; j < m; ++j)
    {
        if (j)
            s += ",";
        s += to_short_string(make_rational(e.u[j], kEllipticUnit));
    }
    return s + ")";
}

} // namespace theta_tower
