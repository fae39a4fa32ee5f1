#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "cache.hpp"
#include "config.hpp"
#include "diagram.hpp"
#include "discriminant.hpp"
#include "enumerate.hpp"
#include "golay.hpp"
#include "registry.hpp"
#include "report.hpp"
#include "series.hpp"
#include "tower.hpp"

namespace theta_tower
{

/// Shared inputs of the verification suites.
struct SuiteContext
{
    Settings settings;
    const EnumerationCache* cache = nullptr; // optional source of stored shells and series
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"paper-tables", "tower-diagram", "heat", "lattice", "golay"};
    return names;
}

namespace detail
{
/// One printed coefficient: eps-coordinates with optional "±" prefix, and the value.
struct PrintedTerm
{
    std::vector<std::string> coords;
    long value;
};

inline void expand_printed(const PrintedTerm& t, std::size_t i, Exponent& e, int a,
                           std::map<Exponent, Rational>& out)
{
    if (i == t.coords.size())
    {
        e.a = a;
        out[e] = t.value;
        return;
    }
    std::string c = t.coords[i];
    const bool both = c.rfind("±", 0) == 0;
    if (both)
        c = c.substr(std::string("±").size());
    const Rational v = parse_rational(c);
    for (int s : {1, -1})
    {
        if (s == -1 && (!both || v == 0))
            break;
        e.u[i] = static_cast<int>(to_long(v * kEllipticUnit * s));
        expand_printed(t, i + 1, e, a, out);
    }
    e.u[i] = 0;
}

inline std::string row_text(const std::map<Exponent, Rational>& row, std::size_t m)
{
    std::string s;
    for (const auto& [e, c] : row)
    {
        if (!s.empty())
            s += " ";
        s += (m == 0 ? std::string("1") : r_label(e, m)) + "=" + to_short_string(c);
    }
    return s.empty() ? "(empty)" : s;
}

inline std::map<Exponent, Rational> series_row(const FourierExpansion& f, int a)
{
    std::map<Exponent, Rational> out;
    for (const auto& [e, c] : f.row(a))
        out[e] = c;
    return out;
}

inline std::map<Exponent, Rational> printed_row(const std::vector<PrintedTerm>& terms, int a)
{
    std::map<Exponent, Rational> out;
    for (const auto& t : terms)
    {
        Exponent e;
        expand_printed(t, 0, e, a, out);
    }
    return out;
}

inline const E8Shells* maybe_shells(const SuiteContext& ctx, long max_norm, std::optional<E8Shells>& holder)
{
    if (!ctx.cache)
        return nullptr;
    holder = ctx.cache->e8_shells(max_norm);
    return &*holder;
}

template <typename F>
void guarded(VerificationReport& r, const std::string& id, const std::string& description,
             const std::string& provenance, F&& body)
{
    try
    {
        body();
    }
    catch (const std::exception& ex)
    {
        r.fail(id, description, ex.what(), provenance);
    }
}
} // namespace detail

// ---------------------------------------------------------------------------
// paper-tables: printed Eisenstein-type expansions, representation-number identities,
// the s_m oracle and the theta identities.

inline VerificationReport run_paper_tables(const SuiteContext& ctx)
{
    using detail::PrintedTerm;
    VerificationReport r;
    r.suite = "paper-tables";
    std::optional<E8Shells> holder;
    const E8Shells* shells = detail::maybe_shells(ctx, 6, holder);

    const std::map<std::size_t, std::vector<std::vector<PrintedTerm>>> printed{
        {1,
         {{{{"0"}, 1}},
          {{{"±1"}, 1}, {{"±1/2"}, 56}, {{"0"}, 126}},
          {{{"±1"}, 126}, {{"±1/2"}, 576}, {{"0"}, 756}},
          {{{"±3/2"}, 56}, {{"±1"}, 756}, {{"±1/2"}, 1512}, {{"0"}, 2072}}}},
        {2,
         {{{{"0", "0"}, 1}},
          {{{"0", "0"}, 60},
           {{"±1/2", "0"}, 32},
           {{"0", "±1/2"}, 32},
           {{"±1/2", "±1/2"}, 12},
           {{"±1", "0"}, 1},
           {{"0", "±1"}, 1}},
          {{{"0", "0"}, 252},
           {{"±1/2", "0"}, 192},
           {{"0", "±1/2"}, 192},
           {{"±1/2", "±1/2"}, 160},
           {{"±1", "0"}, 60},
           {{"0", "±1"}, 60},
           {{"±1", "±1/2"}, 32},
           {{"±1/2", "±1"}, 32},
           {{"±1", "±1"}, 1}}}},
        {3,
         {{{{"0", "0", "0"}, 1}},
          {{{"0", "0", "0"}, 26},
           {{"±1/2", "0", "0"}, 16},
           {{"0", "±1/2", "0"}, 16},
           {{"0", "0", "±1/2"}, 16},
           {{"±1/2", "±1/2", "0"}, 8},
           {{"±1/2", "0", "±1/2"}, 8},
           {{"0", "±1/2", "±1/2"}, 8},
           {{"±1/2", "±1/2", "±1/2"}, 2},
           {{"±1", "0", "0"}, 1},
           {{"0", "±1", "0"}, 1},
           {{"0", "0", "±1"}, 1}}}},
    };
    for (const auto& [m, rows] : printed)
    {
        const int qprec = static_cast<int>(rows.size()) * kQUnit;
        detail::guarded(r, "eps4-table-m" + std::to_string(m), "eps4," + mA1_label(m) + " printed rows",
                        "printed Eisenstein-type expansion", [&] {
                            const FourierExpansion f = eps4(m, qprec, shells);
                            for (std::size_t n = 0; n < rows.size(); ++n)
                            {
                                const int a = static_cast<int>(n) * kQUnit;
                                r.expect("eps4-table-m" + std::to_string(m) + "-q" + std::to_string(n),
                                         "eps4," + mA1_label(m) + " coefficients of q^" + std::to_string(n),
                                         detail::row_text(detail::printed_row(rows[n], a), m),
                                         detail::row_text(detail::series_row(f, a), m),
                                         "printed Eisenstein-type expansion");
                            }
                        });
    }

    // Constant-l coefficients are representation numbers of the complements.
    detail::guarded(r, "complement-identities", "eps4 at l = 0 counts complement vectors",
                    "printed representation-number identities", [&] {
                        for (std::size_t m = 1; m <= 3; ++m)
                        {
                            const FourierExpansion f = eps4(m, 3 * kQUnit + 1, shells);
                            const GramLattice k = chain_complement(m);
                            const auto counts = shell_counts(k, 6);
                            for (int n = 1; n <= 3; ++n)
                                r.expect("complement-identity-m" + std::to_string(m) + "-n" + std::to_string(n),
                                         "#{x in " + k.name() + " : (x,x) = " + std::to_string(2 * n) +
                                             "} = eps4 coefficient at (n, 0)",
                                         std::to_string(counts[static_cast<std::size_t>(2 * n)]),
                                         to_short_string(f.coeff(Exponent{n * kQUnit, {}})),
                                         "printed representation-number identities");
                        }
                    });

    // Every coefficient with n <= 3 against the complement-dual enumeration.
    for (std::size_t m = 1; m <= 4; ++m)
        detail::guarded(r, "s-oracle-m" + std::to_string(m), "eps4 vs complement-dual counts",
                        "independent enumeration of K_m dual", [&] {
                            const FourierExpansion f = eps4(m, 3 * kQUnit + 1, shells);
                            const ComplementDualShells oracle(m, Rational(6));
                            std::size_t compared = 0, mismatched = 0;
                            std::string first_bad;
                            for (long n = 0; n <= 3; ++n)
                            {
                                const int bound = static_cast<int>(4 * n); // sum u^2 <= 16 n, u even
                                std::vector<int> u(m, -bound);
                                while (true)
                                {
                                    long sq = 0;
                                    for (int x : u)
                                        sq += static_cast<long>(x) * x;
                                    if (sq <= 16 * n)
                                    {
                                        Exponent e;
                                        e.a = static_cast<int>(n * kQUnit);
                                        std::vector<Rational> l;
                                        for (std::size_t j = 0; j < m; ++j)
                                        {
                                            e.u[j] = u[j];
                                            l.push_back(make_rational(u[j], kEllipticUnit));
                                        }
                                        const Rational expected(oracle.count(n, l));
                                        ++compared;
                                        if (f.coeff(e) != expected)
                                        {
                                            if (mismatched++ == 0)
                                                first_bad = q_label(e.a) + " " + r_label(e, m);
                                        }
                                    }
                                    std::size_t j = 0;
                                    while (j < m && u[j] >= bound)
                                        u[j++] = -bound;
                                    if (j == m)
                                        break;
                                    u[j] += 2;
                                }
                            }
                            r.expect("s-oracle-m" + std::to_string(m),
                                     "eps4," + mA1_label(m) + " equals s_m(n, l) for all n <= 3 (" +
                                         std::to_string(compared) + " pairs)",
                                     "0 mismatches",
                                     std::to_string(mismatched) + " mismatches" +
                                         (mismatched ? " (first at " + first_bad + ")" : ""),
                                     "independent enumeration of K_m dual");
                        });

    detail::guarded(r, "theta", "theta identities", "Jacobi triple product", [&] {
        const int qprec = 10 * kQUnit + 1;
        r.expect("theta-sum-vs-product", "sum formula and triple product agree through q^10",
                 to_json(theta_product(qprec)).dump(), to_json(theta_sum(qprec)).dump(), "Jacobi triple product");
        const FourierExpansion t = theta(qprec);
        r.expect_true("theta-odd", "theta(-z) = -theta(z)", reflect_var(t, 0) == scale(t, Rational(-1)),
                      "reflection differs", "theta(tau, -z) = -theta(tau, z)");
        // eta^3 is lacunary: 20 nonzero terms need q-exponents up to 39^2/8.
        const int wide = 3 * 39 * 39 + 1;
        const FourierExpansion d = first_derivative_at_zero(theta_sum(wide), 0);
        const FourierExpansion e3 = eta_pow(3, wide);
        const auto alpha = fit_ratio(d, e3);
        r.expect("theta-derivative", "normalized theta'(0) proportional to eta^3 over " +
                                         std::to_string(e3.size()) + " coefficients",
                 "ratio 1", alpha ? "ratio " + alpha->get_str() : "not proportional", "theta'(0) = 2 pi eta^3");
        r.expect_true("theta-derivative-size", "at least 20 coefficients compared", e3.size() >= 20,
                      std::to_string(e3.size()), "coverage requirement");
    });

    detail::guarded(r, "eta", "eta products", "pentagonal number theorem", [&] {
        const FourierExpansion d = eta_pow(24, 4 * kQUnit);
        r.expect("delta-coefficients", "eta^24 = q - 24 q^2 + 252 q^3 - 1472 q^4",
                 "1 -24 252", to_short_string(d.coeff(Exponent{24, {}})) + " " +
                     to_short_string(d.coeff(Exponent{48, {}})) + " " + to_short_string(d.coeff(Exponent{72, {}})),
                 "Ramanujan tau values");
        const FourierExpansion p = phi01(kQUnit);
        r.expect("phi01-constant-row", "phi01 q^0 row", "r^(-1/2)=1 r^(0)=10 r^(1/2)=1",
                 detail::row_text(detail::series_row(p, 0), 1), "weak Jacobi form of weight 0 and index 1");
    });
    return r;
}

// ---------------------------------------------------------------------------
// tower-diagram: every edge of the theta-type diagram, node invariants, Delta24.

inline VerificationReport run_tower_diagram(const SuiteContext& ctx)
{
    VerificationReport r;
    r.suite = "tower-diagram";
    const auto precision = [&](std::size_t m) { return ctx.settings.precision_for(m); };
    SeriesLookup lookup;
    std::optional<E8Shells> holder;
    const E8Shells* shells = nullptr;
    if (ctx.cache)
    {
        lookup = [&](const std::string& key) { return ctx.cache->load_series(key); };
        int top = 0;
        for (std::size_t m = 0; m <= 4; ++m)
            top = std::max(top, precision(m));
        shells = detail::maybe_shells(ctx, e8_norm_bound(top), holder);
    }
    std::optional<TowerDiagram> diagram;
    detail::guarded(r, "diagram-build", "build all diagram nodes", "construction",
                    [&] { diagram = TowerDiagram::build(precision, lookup, shells); });
    if (!diagram)
        return r;

    for (const auto& outcome : diagram->verify(ctx.settings.jobs))
    {
        Check& c = r.expect_true("edge " + outcome.edge.label(), "edge relation holds with a single scalar",
                                 outcome.ok, outcome.detail, "diagram of theta type");
        if (outcome.ok)
            c.actual = outcome.detail;
    }

    for (const auto& [name, node] : diagram->nodes)
    {
        const auto problems = invariant_violations(node);
        std::string joined;
        for (const auto& p : problems)
            joined += (joined.empty() ? "" : "; ") + p;
        r.expect_true("node " + name, std::string("declared data consistent (") + to_string(node.declared) + ")",
                      problems.empty(), joined, "declared weight, character and support class");
    }

    detail::guarded(r, "psi-square", "psi_{4,4A1} is the square of the theta block", "definition of psi_4", [&] {
        const int p = precision(4);
        const FourierExpansion t = theta_mA1(4, p);
        r.expect_true("psi-4-4A1-square", "psi_{4,4A1} = theta_{4A1}^2", mul(t, t, p) == psi_diag(4, p).expansion,
                      "series differ", "definition of psi_4");
        for (std::size_t m = 1; m <= 4; ++m)
        {
            const FourierExpansion pb = pullback_last(psi_diag(m, precision(m)).expansion);
            r.expect_true("psi-pullback-" + mA1_label(m), "pullback of psi_{" + std::to_string(12 - 2 * m) + "," +
                                                              mA1_label(m) + "} vanishes",
                          pb.empty(), std::to_string(pb.size()) + " terms", "theta(tau, 0) = 0");
        }
    });

    detail::guarded(r, "delta24", "weight-24 cusp form on 4A1", "cusp form of weight 24", [&] {
        const int p = std::max(precision(4), 3 * kQUnit + 1);
        const JacobiFormObject d = delta24(p);
        const int fp = p - 2 * kQUnit;
        JacobiFormObject prod;
        for (int j = 1; j <= 3; ++j)
        {
            JacobiFormObject e;
            e.name = "eta12";
            e.weight = HalfInteger::whole(6);
            e.index = 0;
            e.eta_char = 12;
            e.declared = SupportClass::cusp;
            e.expansion = extend_vars(eta_pow(12, fp), 4);
            JacobiFormObject d8 = bookkeeping_mul(e, theta_block_j(j, fp));
            prod = j == 1 ? d8 : bookkeeping_mul(prod, d8);
        }
        r.expect("delta24-product", "Delta24 equals the product of the three Delta8 factors", "equal",
                 equal_to_common_precision(prod.expansion, d.expansion) ? "equal" : "different",
                 "product formula");
        r.expect("delta24-bookkeeping", "weight, index and eta character of the product",
                 "weight 24, index 3, eta_char 0",
                 "weight " + prod.weight.str() + ", index " + prod.index.get_str() + ", eta_char " +
                     std::to_string(prod.eta_char),
                 "product formula");
        r.expect("delta24-valuation", "q-valuation", q_label(3 * kQUnit), q_label(d.expansion.valuation()),
                 "three factors of valuation 1");
        std::size_t odd_ok = 0, even_ok = 0, odd = 0, even = 0;
        for (const auto& perm : all_permutations(4))
        {
            int inversions = 0;
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = a + 1; b < 4; ++b)
                    inversions += perm[a] > perm[b];
            const bool is_odd = inversions % 2;
            const auto image = permute_vars(d.expansion, perm);
            const bool ok = image == scale(d.expansion, Rational(is_odd ? -1 : 1));
            (is_odd ? odd : even) += 1;
            (is_odd ? odd_ok : even_ok) += ok;
        }
        r.expect("delta24-transpositions", "odd permutations act by -1", std::to_string(odd) + "/" + std::to_string(odd),
                 std::to_string(odd_ok) + "/" + std::to_string(odd), "character v_pi");
        r.expect("delta24-even", "even permutations act trivially",
                 std::to_string(even) + "/" + std::to_string(even), std::to_string(even_ok) + "/" + std::to_string(even),
                 "character v_pi");
        std::size_t bad = 0;
        for (const auto& [e, c] : d.expansion.terms())
            bad += hyperbolic_norm(e, 4, Rational(3)) <= 0;
        r.expect("delta24-cusp", "6n - (l,l) > 0 on all " + std::to_string(d.expansion.size()) + " terms",
                 "0 violations", std::to_string(bad) + " violations", "cusp form");
        const auto b1 = theta_block_j(1, fp), b2 = theta_block_j(2, fp), b3 = theta_block_j(3, fp);
        const auto swap = transposition(4, 0, 1);
        r.expect_true("theta-block-1-swap", "z1 <-> z2 maps theta_block1 to its negative",
                      permute_vars(b1.expansion, swap) == scale(b1.expansion, Rational(-1)), "differs",
                      "theta(tau, -z) = -theta(tau, z)");
        r.expect_true("theta-block-2-swap", "z1 <-> z2 maps theta_block2 to -theta_block3",
                      permute_vars(b2.expansion, swap) == scale(b3.expansion, Rational(-1)), "differs",
                      "direct series comparison");
    });
    return r;
}

// ---------------------------------------------------------------------------
// heat: normalized heat operator on the Eisenstein-type forms.

inline VerificationReport run_heat(const SuiteContext& ctx)
{
    VerificationReport r;
    r.suite = "heat";
    const int qprec = 8 * kQUnit + 1;
    std::optional<E8Shells> holder;
    const E8Shells* shells = detail::maybe_shells(ctx, e8_norm_bound(qprec), holder);

    const std::map<std::size_t, std::string> constants{{1, "-7/12"}, {2, "-1/2"}};
    for (const auto& [m, expected] : constants)
        detail::guarded(r, "eps6-m" + std::to_string(m), "eps6 checks", "heat operator with G2 correction", [&] {
            const JacobiFormObject e6 = eps6_form(m, qprec, shells);
            r.expect("eps6-constant-m" + std::to_string(m), "constant term of eps6," + mA1_label(m), expected,
                     e6.expansion.coeff(Exponent{}).get_str(), "normalized constant term of the heat image");
            const Rational scale_factor = make_rational(24, 16 - 2 * static_cast<long>(m));
            std::size_t bad = 0;
            for (const auto& [e, c] : e6.expansion.terms())
                bad += !is_integer(c * scale_factor);
            r.expect("eps6-integrality-m" + std::to_string(m),
                     "24 c/(16-2m) integral for all " + std::to_string(e6.expansion.size()) + " terms through q^8",
                     "0 violations", std::to_string(bad) + " violations", "integrality of the heat image");
            const auto problems = invariant_violations(e6);
            r.expect_true("eps6-symmetric-m" + std::to_string(m), "eps6 is symmetric and holomorphic",
                          problems.empty(), problems.empty() ? "" : problems.front(), "S_m invariance");
        });

    detail::guarded(r, "eps6-samples", "individual coefficients", "coefficient rule", [&] {
        const FourierExpansion e6 = eps6_form(1, 2 * kQUnit, shells).expansion;
        r.expect("eps6-coefficient-1-half", "eps6,1A1 at (n, l) = (1, eps/2)", "154/3",
                 e6.coeff(make_exponent(kQUnit, {2})).get_str(), "coefficient rule evaluated by hand");
        r.expect("eps6-coefficient-1-one", "eps6,1A1 at (n, l) = (1, eps)", "-7/12",
                 e6.coeff(make_exponent(kQUnit, {4})).get_str(), "coefficient rule evaluated by hand");
    });

    detail::guarded(r, "cusp-preservation", "cusp forms and heat images", "heat operator and cusp forms", [&] {
        for (std::size_t m = 1; m <= 2; ++m)
        {
            const int p = ctx.settings.precision_for(m);
            const auto e4 = eps4_form(m, p, shells);
            const auto phi = tower_form(12, m, p);
            r.expect_true("cusp-preservation-eps4-m" + std::to_string(m),
                          "eps4," + mA1_label(m) + ": not cusp, heat image not cusp", cusp_preservation_check(e4),
                          "classification differs", "heat operator and cusp forms");
            r.expect_true("cusp-preservation-phi12-m" + std::to_string(m),
                          "phi12," + mA1_label(m) + ": cusp, heat image cusp", cusp_preservation_check(phi),
                          "classification differs", "heat operator and cusp forms");
        }
    });

    detail::guarded(r, "restriction-chain", "restriction of eps4 and eps6", "observed", [&] {
        const int p = 4 * kQUnit + 1;
        std::vector<FourierExpansion> e4, e6;
        for (std::size_t m = 0; m <= 4; ++m)
        {
            e4.push_back(eps4(m, p, shells));
            e6.push_back(heat(e4.back(), HalfInteger::whole(4)));
        }
        for (std::size_t m = 1; m <= 4; ++m)
        {
            r.expect_true("eps4-restriction-m" + std::to_string(m),
                          "pullback of eps4," + mA1_label(m) + " equals eps4," + mA1_label(m - 1),
                          pullback_last(e4[m]) == e4[m - 1], "series differ", "E8 vectors with (v, eps_m) = 0");
            const auto alpha = fit_ratio(pullback_last(e6[m]), e6[m - 1]);
            const std::string expected =
                m <= 3 ? "alpha = " + make_rational(9 - static_cast<long>(m), 8 - static_cast<long>(m)).get_str()
                       : "not proportional";
            r.expect("eps6-restriction-m" + std::to_string(m),
                     "eps6," + mA1_label(m - 1) + " against the pullback of eps6," + mA1_label(m), expected,
                     alpha ? "alpha = " + alpha->get_str() : "not proportional",
                     "commutator of heat operator and pullback");
        }
    });
    return r;
}

// ---------------------------------------------------------------------------
// lattice: complements, discriminant forms and their isometry groups.

inline VerificationReport run_lattice(const SuiteContext&)
{
    VerificationReport r;
    r.suite = "lattice";
    const std::vector<long> roots{126, 60, 26, 8};
    const std::vector<std::string> names{"E7", "D6", "A1+D4", "4A1"};
    for (std::size_t m = 1; m <= 4; ++m)
        detail::guarded(r, "complement-m" + std::to_string(m), "chain complement", "complement table", [&] {
            const GramLattice k = chain_complement(m);
            const auto counts = shell_counts(k, 4);
            r.expect("complement-roots-m" + std::to_string(m), "norm-2 vectors of " + k.name(),
                     std::to_string(roots[m - 1]), std::to_string(counts[2]), "complement table");
            const GramLattice model = named_lattice(names[m - 1]);
            const auto model_counts = shell_counts(model, 4);
            r.expect("complement-shells-m" + std::to_string(m),
                     k.name() + " and " + names[m - 1] + " agree on rank, determinant and shells up to norm 4",
                     std::to_string(model.rank()) + " " + model.determinant().get_str() + " " +
                         std::to_string(model_counts[2]) + " " + std::to_string(model_counts[4]),
                     std::to_string(k.rank()) + " " + k.determinant().get_str() + " " + std::to_string(counts[2]) +
                         " " + std::to_string(counts[4]),
                     "isomorphism type of the complement");
        });

    detail::guarded(r, "e8", "E8 shells", "theta series of E8 = E4", [&] {
        const auto c = shell_counts(lattice_E8(), 6);
        r.expect("e8-shells", "E8 vectors of norm 2, 4, 6", "240 2160 6720",
                 std::to_string(c[2]) + " " + std::to_string(c[4]) + " " + std::to_string(c[6]),
                 "theta series of E8 = E4");
        r.expect("e8-unimodular", "E8 discriminant group order", "1",
                 std::to_string(dual_discriminant(lattice_E8()).order()), "E8 is unimodular");
    });

    for (std::size_t m = 1; m <= 4; ++m)
        detail::guarded(r, "disc-mA1-" + std::to_string(m), "discriminant of mA1", "discriminant forms", [&] {
            const auto d = dual_discriminant(lattice_mA1(m));
            std::string factors;
            for (const auto& f : d.invariant_factors)
                factors += (factors.empty() ? "" : " ") + f.get_str();
            r.expect("disc-mA1-" + std::to_string(m), "D(" + mA1_label(m) + ") invariant factors",
                     [&] {
                         std::string s;
                         for (std::size_t i = 0; i < m; ++i)
                             s += (i ? " 2" : "2");
                         return s;
                     }(),
                     factors, "D(mA1) = C2^m");
            long fact = 1;
            for (long i = 2; i <= static_cast<long>(m); ++i)
                fact *= i;
            r.expect("orthogonal-mA1-" + std::to_string(m), "|O(D(" + mA1_label(m) + "))|", std::to_string(fact),
                     std::to_string(disc_orthogonal_group_order(lattice_mA1(m)).order), "O(D(mA1)) = S_m");
        });

    for (std::size_t m = 2; m <= 8; ++m)
        detail::guarded(r, "disc-D" + std::to_string(m), "discriminant of D_m", "discriminant forms", [&] {
            const auto d = dual_discriminant(lattice_D(m));
            std::vector<Rational> q = d.q_values;
            std::sort(q.begin(), q.end());
            const Rational spin = mod_rational(make_rational(static_cast<long>(m), 4), Rational(2));
            std::vector<Rational> expected{Rational(0), Rational(1), spin, spin};
            std::sort(expected.begin(), expected.end());
            auto text = [](const std::vector<Rational>& v) {
                std::string s;
                for (const auto& x : v)
                    s += (s.empty() ? "" : " ") + x.get_str();
                return s;
            };
            r.expect("disc-D" + std::to_string(m), "discriminant form values of D" + std::to_string(m),
                     text(expected), text(q), "q values 0, 1, m/4, m/4 mod 2");
        });

    detail::guarded(r, "orthogonal", "isometry groups", "discriminant forms", [&] {
        r.expect("orthogonal-E7", "|O(D(E7))|", "1", std::to_string(disc_orthogonal_group_order(lattice_E7()).order),
                 "D(E7) = C2 with q = 3/2");
        r.expect("orthogonal-D4", "|O(D(D4))|", "6", std::to_string(disc_orthogonal_group_order(lattice_D(4)).order),
                 "triality on D(D4)");
    });
    return r;
}

// ---------------------------------------------------------------------------
// golay: the Golay code, the Niemeier lattice with root system 24A1 and quasi-pullback weights.

inline VerificationReport run_golay(const SuiteContext&)
{
    VerificationReport r;
    r.suite = "golay";
    detail::guarded(r, "golay", "Golay code", "extended binary Golay code", [&] {
        const BinaryCode& code = golay_code();
        const auto w = code.weight_distribution();
        std::size_t total = 0;
        std::size_t min_weight = 24;
        for (std::size_t k = 0; k <= 24; ++k)
        {
            total += static_cast<std::size_t>(w[k]);
            if (k > 0 && w[k] > 0)
                min_weight = std::min(min_weight, k);
        }
        r.expect("golay-size", "number of codewords", "4096", std::to_string(total), "[24, 12, 8] code");
        r.expect("golay-octads", "codewords of weight 8", "759", std::to_string(w[8]), "759 octads");
        r.expect("golay-min-weight", "minimum weight", "8", std::to_string(min_weight), "[24, 12, 8] code");
        r.expect("golay-weights", "weight distribution 0/8/12/16/24", "1 759 2576 759 1",
                 std::to_string(w[0]) + " " + std::to_string(w[8]) + " " + std::to_string(w[12]) + " " +
                     std::to_string(w[16]) + " " + std::to_string(w[24]),
                 "weight enumerator of the Golay code");
    });
    detail::guarded(r, "niemeier", "Niemeier lattice 24A1", "Niemeier lattice with root system 24A1", [&] {
        const NiemeierModel& model = niemeier_model();
        r.expect("niemeier-roots", "roots of the Niemeier lattice", "48", std::to_string(niemeier_root_count(model)),
                 "root system 24A1");
        r.expect("niemeier-norm4", "vectors of norm 4", "195408", niemeier_representation_count(model, 4).get_str(),
                 "theta series E4^3 - 672 Delta");
        std::mt19937_64 rng(20240601);
        std::size_t even = 0;
        const std::size_t samples = 256;
        for (std::size_t i = 0; i < samples; ++i)
        {
            const auto x = model.random_vector(rng);
            even += model.contains(x) && is_integer(NiemeierModel::norm(x)) && to_long(NiemeierModel::norm(x)) % 2 == 0;
        }
        r.expect("niemeier-even", "random lattice vectors have even norm", std::to_string(samples),
                 std::to_string(even), "even lattice");
        for (int m = 1; m <= 4; ++m)
        {
            const auto data = complement_root_data(model, m);
            r.expect("niemeier-NK-m" + std::to_string(m), "N(K_m) for m = " + std::to_string(m),
                     std::to_string(24 - m), std::to_string(data.n_k), "N(K_m) = 24 - m");
            r.expect("niemeier-roots-removed-m" + std::to_string(m), "roots not orthogonal to mA1",
                     std::to_string(2 * m), std::to_string(data.roots_removed), "each A1 component carries 2 roots");
            r.expect("quasi-pullback-weight-m" + std::to_string(m), "quasi-pullback weight for m = " + std::to_string(m),
                     std::to_string(36 - m), std::to_string(quasi_pullback_weight(model, m)),
                     "weight 12 + N(K_m) = 36 - m");
        }
    });
    return r;
}

inline VerificationReport run_suite(const std::string& name, const SuiteContext& ctx)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    if (name == "paper-tables")
        r = run_paper_tables(ctx);
    else if (name == "tower-diagram")
        r = run_tower_diagram(ctx);
    else if (name == "heat")
        r = run_heat(ctx);
    else if (name == "lattice")
        r = run_lattice(ctx);
    else if (name == "golay")
        r = run_golay(ctx);
    else
        throw std::invalid_argument("unknown suite: " + name);
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

/// Runs suites on up to `jobs` threads; reports come back in the order requested.
inline std::vector<VerificationReport> run_suites(const std::vector<std::string>& names, const SuiteContext& ctx)
{
    for (const auto& n : names)
        if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
            throw std::invalid_argument("unknown suite: " + n);
    std::vector<VerificationReport> out(names.size());
    const unsigned jobs = std::max(1u, ctx.settings.jobs);
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, names.size()); ++w)
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < names.size(); i += jobs)
                out[i] = run_suite(names[i], ctx);
        }));
    for (auto& f : workers)
        f.get();
    return out;
}

inline std::string render_reports(const std::vector<VerificationReport>& reports)
{
    std::string s;
    bool all = true;
    for (const auto& r : reports)
    {
        s += r.render_text();
        all = all && r.passed();
    }
    s += std::string("overall: ") + (all ? "PASS" : "FAIL") + "\n";
    return s;
}

} // namespace theta_tower
