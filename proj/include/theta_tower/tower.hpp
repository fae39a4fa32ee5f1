#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "blocks.hpp"
#include "series.hpp"

namespace theta_tower
{

/// A Fourier expansion together with its declared modular data.
struct JacobiFormObject
{
    std::string name;
    HalfInteger weight;
    Rational index{1};                  // t in J_{k, L; t}
    int eta_char = 0;                   // character v_eta^{eta_char}, reduced mod 24
    std::optional<int> vpi_sign;        // sign under every transposition of variables, if declared
    SupportClass declared = SupportClass::holomorphic;
    FourierExpansion expansion;

    std::size_t m() const { return expansion.vars(); }
};

class DiagramViolation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline SupportClass combine_support(SupportClass a, SupportClass b)
{
    if (a == SupportClass::weak || b == SupportClass::weak)
        return SupportClass::weak;
    if (a == SupportClass::cusp || b == SupportClass::cusp)
        return SupportClass::cusp;
    return SupportClass::holomorphic;
}

/// Product with weights, indices and characters combined.
inline JacobiFormObject bookkeeping_mul(const JacobiFormObject& f, const JacobiFormObject& g)
{
    JacobiFormObject r;
    r.name = f.name + "*" + g.name;
    r.weight = f.weight + g.weight;
    r.index = f.index + g.index;
    r.eta_char = static_cast<int>(floor_mod(f.eta_char + g.eta_char, 24));
    if (f.vpi_sign && g.vpi_sign)
        r.vpi_sign = *f.vpi_sign * *g.vpi_sign;
    r.declared = combine_support(f.declared, g.declared);
    r.expansion = mul(f.expansion, g.expansion);
    return r;
}

/// Problems with the declared data of an object, empty when consistent.
inline std::vector<std::string> invariant_violations(const JacobiFormObject& f)
{
    std::vector<std::string> out;
    if (f.index <= 0)
    {
        out.push_back("index must be positive");
        return out;
    }
    const SupportClass actual = support_class(f.expansion, f.index);
    if (actual != f.declared)
        out.push_back(std::string("declared ") + to_string(f.declared) + " but expansion is " + to_string(actual));
    for (const auto& [e, c] : f.expansion.terms())
        if (floor_mod(e.a - f.eta_char, kQUnit) != 0)
        {
            out.push_back("q-exponent " + q_label(e.a) + " incompatible with eta character " +
                          std::to_string(f.eta_char));
            break;
        }
    if (f.vpi_sign)
        for (std::size_t i = 0; i + 1 < f.m(); ++i)
        {
            auto swapped = permute_vars(f.expansion, transposition(f.m(), i, i + 1));
            if (!(swapped == scale(f.expansion, Rational(*f.vpi_sign))))
            {
                out.push_back("transposition of z" + std::to_string(i + 1) + ", z" + std::to_string(i + 2) +
                              " does not act by the declared sign");
                break;
            }
        }
    return out;
}

/// Normalized heat operator on index-1 forms of weight k in m variables:
/// c~(n, l) = (2n - (l, l) - (k - m/2)/6) c(n, l) + 4 (k - m/2) sum_{j>=1} sigma_1(j) c(n - j, l),
/// which is H_k divided by (2 pi i)^2 det S. The watermark is unchanged.
inline FourierExpansion heat(const FourierExpansion& f, const HalfInteger& k)
{
    const std::size_t m = f.vars();
    const Rational shift = k.value() - make_rational(static_cast<long>(m), 2);
    const Rational constant = shift / 6;
    FourierExpansion r(m, f.qprec());
    if (f.is_exact())
        throw SeriesError("heat: needs a finite watermark");
    for (const auto& [e, c] : f.terms())
    {
        const Rational diag = make_rational(2 * e.a, kQUnit) - e.lattice_norm(m) - constant;
        r.add_term(e, diag * c);
        for (int j = 1; e.a + kQUnit * j < f.qprec(); ++j)
        {
            Exponent x = e;
            x.a += kQUnit * j;
            r.add_term(x, c * shift * 4 * Rational(sigma1(j)));
        }
    }
    return r;
}

inline JacobiFormObject heat(const JacobiFormObject& f, std::optional<HalfInteger> k = std::nullopt)
{
    if (f.index != 1)
        throw SeriesError("heat: defined for index 1 only");
    JacobiFormObject r = f;
    const HalfInteger kk = k.value_or(f.weight);
    r.name = "H(" + f.name + ")";
    r.weight = kk + HalfInteger::whole(2);
    r.expansion = heat(f.expansion, kk);
    r.declared = support_class(r.expansion, r.index);
    return r;
}

inline std::string mA1_label(std::size_t m) { return std::to_string(m) + "A1"; }

inline JacobiFormObject eps4_form(std::size_t m, int qprec, const E8Shells* shells = nullptr)
{
    JacobiFormObject f;
    f.name = "eps4," + mA1_label(m);
    f.weight = HalfInteger::whole(4);
    f.vpi_sign = 1;
    f.declared = SupportClass::holomorphic;
    f.expansion = eps4(m, qprec, shells);
    return f;
}

/// E_{6, mA1} as the normalized heat image of E_{4, mA1}.
inline JacobiFormObject eps6_form(std::size_t m, int qprec, const E8Shells* shells = nullptr)
{
    JacobiFormObject f = heat(eps4_form(m, qprec, shells));
    f.name = "eps6," + mA1_label(m);
    f.declared = SupportClass::holomorphic;
    return f;
}

/// Whether phi and its heat image are either both cusp forms or both not.
inline bool cusp_preservation_check(const JacobiFormObject& f)
{
    const bool before = support_class(f.expansion, f.index) == SupportClass::cusp;
    const bool after = support_class(heat(f).expansion, f.index) == SupportClass::cusp;
    return before == after;
}

inline std::string tower_name(int k, std::size_t m)
{
    if (m == 0)
        return "Delta12";
    return "phi" + std::to_string(k) + "," + mA1_label(m);
}

/// phi_{k, mA1} = sym( eta^{24-6j} prod_{i<=j} theta(z_i)^2 prod_{i>j} phi01(z_i)/12 ), k = 12 - 2j,
/// for 0 <= j <= m <= 4; j = m gives psi_{k, mA1} = eta^{24-6m} theta_{mA1}^2 and m = 0 gives Delta.
inline JacobiFormObject tower_form(int k, std::size_t m, int qprec)
{
    if (k % 2 != 0 || k > 12)
        throw SeriesError("tower_form: weight must be even and at most 12");
    const std::size_t j = static_cast<std::size_t>((12 - k) / 2);
    if (m > 4 || j > m)
        throw SeriesError("tower_form: need 0 <= (12-k)/2 <= m <= 4");
    FourierExpansion acc = extend_vars(eta_pow(24 - 6 * static_cast<int>(j), qprec), m);
    if (j > 0)
    {
        const FourierExpansion t = theta(qprec);
        const FourierExpansion t2 = mul(t, t, qprec);
        for (std::size_t i = 0; i < j; ++i)
            acc = mul(acc, embed_vars(t2, m, {i}), qprec);
    }
    if (j < m)
    {
        const FourierExpansion p = scale(phi01(qprec), Rational(1, 12));
        for (std::size_t i = j; i < m; ++i)
            acc = mul(acc, embed_vars(p, m, {i}), qprec);
    }
    acc = acc.truncated(qprec);
    if (j > 0 && j < m)
        acc = symmetrize(acc);
    JacobiFormObject f;
    f.name = tower_name(k, m);
    f.weight = HalfInteger::whole(k);
    f.vpi_sign = 1;
    f.declared = m == 4 ? SupportClass::holomorphic : SupportClass::cusp;
    f.expansion = std::move(acc);
    return f;
}

inline JacobiFormObject psi_diag(std::size_t m, int qprec)
{
    return tower_form(12 - 2 * static_cast<int>(m), m, qprec);
}

/// alpha with target = alpha * image, or a DiagramViolation naming the edge.
inline Rational fit_edge(const FourierExpansion& image, const FourierExpansion& target, const std::string& edge)
{
    auto alpha = fit_ratio(image, target);
    if (!alpha)
        throw DiagramViolation("edge " + edge + ": image is not proportional to the target");
    return *alpha;
}

/// Solid edge: pullback along the last variable, fitted against the target.
inline Rational pullback_edge_check(const JacobiFormObject& source, const JacobiFormObject& target)
{
    if (source.weight != target.weight)
        throw DiagramViolation("edge " + source.name + " -> " + target.name + ": weights differ");
    return fit_edge(pullback_last(source.expansion), target.expansion, source.name + " -> " + target.name);
}

/// Dashed edge: second derivative in the last variable at 0; raises the weight by 2.
inline Rational dashed_arrow_check(const JacobiFormObject& source, const JacobiFormObject& target)
{
    if (source.weight + HalfInteger::whole(2) != target.weight)
        throw DiagramViolation("edge " + source.name + " -> " + target.name + ": weight must rise by 2");
    return fit_edge(second_derivative_at_zero(source.expansion, source.m() - 1), target.expansion,
                    source.name + " -> " + target.name);
}

/// psi_{12-2m, mA1} -> psi_{12-2(m-1), (m-1)A1}.
inline Rational dashed_arrow_check(std::size_t m, int qprec)
{
    if (m < 1 || m > 4)
        throw SeriesError("dashed_arrow_check: m must be in 1..4");
    return dashed_arrow_check(psi_diag(m, qprec), psi_diag(m - 1, qprec));
}

// ---------------------------------------------------------------------------
// Theta blocks on 4A1 and the weight-24 cusp form

inline std::vector<std::vector<int>> theta_block_factors(int j)
{
    // Coordinates pair (z_a, z_b) and (z_c, z_d); each pair contributes theta(z_a - z_b) theta(z_a + z_b).
    static const int pairs[3][4] = {{0, 1, 2, 3}, {2, 1, 0, 3}, {0, 2, 1, 3}};
    if (j < 1 || j > 3)
        throw SeriesError("theta_block: j must be 1, 2 or 3");
    const auto& p = pairs[j - 1];
    std::vector<std::vector<int>> out;
    for (int half = 0; half < 2; ++half)
        for (int s : {-1, 1})
        {
            std::vector<int> c(4, 0);
            c[static_cast<std::size_t>(p[2 * half])] = 1;
            c[static_cast<std::size_t>(p[2 * half + 1])] = s;
            out.push_back(c);
        }
    return out;
}

inline JacobiFormObject theta_block_j(int j, int qprec)
{
    FourierExpansion acc = FourierExpansion::one(4);
    for (const auto& c : theta_block_factors(j))
        acc = mul(acc, theta_linear(c, qprec), qprec);
    JacobiFormObject f;
    f.name = "theta_block" + std::to_string(j);
    f.weight = HalfInteger::whole(2);
    f.eta_char = 12;
    f.declared = SupportClass::holomorphic;
    f.expansion = acc.truncated(qprec);
    return f;
}

/// Delta_24 = prod_j eta^12 theta_block_j on 4A1.
inline JacobiFormObject delta24(int qprec)
{
    // Each factor has valuation 1, so factors are needed to qprec - 2 (in q units of 1).
    const int factor_prec = std::max(0, qprec - 2 * kQUnit);
    const FourierExpansion e12 = extend_vars(eta_pow(12, factor_prec), 4);
    FourierExpansion acc = FourierExpansion::one(4);
    for (int j = 1; j <= 3; ++j)
        acc = mul(acc, mul(e12, theta_block_j(j, factor_prec).expansion, factor_prec), qprec);
    JacobiFormObject f;
    f.name = "Delta24";
    f.weight = HalfInteger::whole(24);
    f.index = 3;
    f.eta_char = 0;
    f.vpi_sign = -1;
    f.declared = SupportClass::cusp;
    f.expansion = acc.truncated(qprec);
    return f;
}

} // namespace theta_tower
