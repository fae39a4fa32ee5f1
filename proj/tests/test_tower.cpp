#include <gtest/gtest.h>

#include <theta_tower/theta_tower.hpp>

namespace tt = theta_tower;
using tt::FourierExpansion;
using tt::HalfInteger;
using tt::kQUnit;
using tt::make_exponent;
using tt::make_rational;

namespace
{
constexpr int kPrec = 3 * kQUnit + 1;
}

TEST(Heat, Eps6Constants)
{
    EXPECT_EQ(tt::eps6_form(1, kPrec).expansion.coeff(make_exponent(0, {0})), make_rational(-7, 12));
    EXPECT_EQ(tt::eps6_form(2, kPrec).expansion.coeff(make_exponent(0, {0, 0})), make_rational(-1, 2));
}

TEST(Heat, Eps6Samples)
{
    const FourierExpansion e6 = tt::eps6_form(1, 2 * kQUnit).expansion;
    EXPECT_EQ(e6.coeff(make_exponent(kQUnit, {2})), make_rational(154, 3));
    EXPECT_EQ(e6.coeff(make_exponent(kQUnit, {4})), make_rational(-7, 12));
}

TEST(Heat, Eps6Integrality)
{
    for (std::size_t m = 1; m <= 2; ++m)
    {
        const FourierExpansion e6 = tt::eps6_form(m, 8 * kQUnit + 1).expansion;
        const tt::Rational s = make_rational(24, 16 - 2 * static_cast<long>(m));
        for (const auto& [e, c] : e6.terms())
            ASSERT_TRUE(tt::is_integer(c * s)) << m << " " << tt::q_label(e.a) << " " << tt::r_label(e, m);
    }
}

TEST(Heat, RequiresIndexOneAndFinitePrecision)
{
    tt::JacobiFormObject f = tt::eps4_form(1, kPrec);
    f.index = 2;
    EXPECT_THROW(tt::heat(f), tt::SeriesError);
    EXPECT_THROW(tt::heat(FourierExpansion::one(1), HalfInteger::whole(4)), tt::SeriesError);
}

TEST(Heat, CuspPreservation)
{
    for (std::size_t m = 1; m <= 2; ++m)
    {
        const auto e4 = tt::eps4_form(m, kPrec);
        const auto phi = tt::tower_form(12, m, kPrec);
        EXPECT_EQ(tt::support_class(e4.expansion, 1), tt::SupportClass::holomorphic);
        EXPECT_EQ(tt::support_class(phi.expansion, 1), tt::SupportClass::cusp);
        EXPECT_TRUE(tt::cusp_preservation_check(e4));
        EXPECT_TRUE(tt::cusp_preservation_check(phi));
        EXPECT_EQ(tt::heat(phi).declared, tt::SupportClass::cusp);
    }
}

TEST(Heat, RestrictionChain)
{
    const int p = 2 * kQUnit + 1;
    std::vector<FourierExpansion> e6;
    for (std::size_t m = 0; m <= 4; ++m)
        e6.push_back(tt::heat(tt::eps4(m, p), HalfInteger::whole(4)));
    for (std::size_t m = 1; m <= 3; ++m)
        EXPECT_EQ(tt::fit_ratio(tt::pullback_last(e6[m]), e6[m - 1]),
                  make_rational(9 - static_cast<long>(m), 8 - static_cast<long>(m)))
            << m;
    EXPECT_FALSE(tt::fit_ratio(tt::pullback_last(e6[4]), e6[3]).has_value());
}

TEST(Tower, SolidEdgeScalars)
{
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t j = 0; j < m; ++j)
        {
            const int k = 12 - 2 * static_cast<int>(j);
            const auto src = tt::tower_form(k, m, kPrec);
            const auto dst = tt::tower_form(k, m - 1, kPrec);
            EXPECT_EQ(tt::pullback_edge_check(src, dst),
                      make_rational(static_cast<long>(m), static_cast<long>(m - j)))
                << src.name;
        }
}

TEST(Tower, DashedEdges)
{
    for (std::size_t m = 1; m <= 4; ++m)
        EXPECT_EQ(tt::dashed_arrow_check(m, kPrec), make_rational(1, 2)) << m;
    EXPECT_THROW(tt::dashed_arrow_check(0, kPrec), tt::SeriesError);
}

TEST(Tower, BrokenEdgeIsNamed)
{
    auto src = tt::tower_form(10, 2, kPrec);
    const auto dst = tt::tower_form(10, 1, kPrec);
    src.expansion.add_term(make_exponent(kQUnit, {0, 0}), 1);
    try
    {
        tt::pullback_edge_check(src, dst);
        FAIL() << "expected a diagram violation";
    }
    catch (const tt::DiagramViolation& e)
    {
        EXPECT_NE(std::string(e.what()).find("phi10,2A1 -> phi10,1A1"), std::string::npos);
    }
}

TEST(Tower, PsiIsThetaSquared)
{
    const int p = 4 * kQUnit + 1;
    const FourierExpansion t = tt::theta_mA1(4, p);
    EXPECT_EQ(tt::psi_diag(4, p).expansion, tt::mul(t, t, p));
    for (std::size_t m = 1; m <= 4; ++m)
        EXPECT_TRUE(tt::pullback_last(tt::psi_diag(m, kPrec).expansion).empty()) << m;
}

TEST(Tower, NodeInvariants)
{
    for (std::size_t m = 0; m <= 4; ++m)
        for (std::size_t j = 0; j <= m; ++j)
        {
            const auto f = tt::tower_form(12 - 2 * static_cast<int>(j), m, kPrec);
            EXPECT_TRUE(tt::invariant_violations(f).empty()) << f.name;
        }
    for (std::size_t m = 0; m <= 4; ++m)
        EXPECT_TRUE(tt::invariant_violations(tt::eps4_form(m, kPrec)).empty()) << m;
}

TEST(Tower, InvariantViolationsDetectWrongDeclaration)
{
    auto f = tt::eps4_form(1, kPrec);
    f.declared = tt::SupportClass::cusp;
    EXPECT_FALSE(tt::invariant_violations(f).empty());
    auto g = tt::tower_form(10, 2, kPrec);
    g.expansion.add_term(make_exponent(kQUnit, {2, 0}), 1);
    EXPECT_FALSE(tt::invariant_violations(g).empty());
}

TEST(Tower, DiagramFromLowPrecision)
{
    const auto d = tt::TowerDiagram::build([](std::size_t) { return kPrec; });
    const auto outcomes = d.verify(3);
    ASSERT_EQ(outcomes.size(), tt::TowerDiagram::edge_list().size());
    for (const auto& o : outcomes)
        EXPECT_TRUE(o.ok) << o.edge.label() << ": " << o.detail;
}

TEST(Delta24, ValuationAndSymmetry)
{
    const int p = 4 * kQUnit;
    const auto d = tt::delta24(p);
    EXPECT_EQ(d.expansion.valuation(), 3 * kQUnit);
    EXPECT_EQ(d.weight, HalfInteger::whole(24));
    EXPECT_EQ(d.index, 3);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            EXPECT_EQ(tt::permute_vars(d.expansion, tt::transposition(4, a, b)), tt::scale(d.expansion, -1));
    for (const auto& [e, c] : d.expansion.terms())
        EXPECT_GT(tt::hyperbolic_norm(e, 4, 3), 0);
    EXPECT_TRUE(tt::invariant_violations(d).empty());
}

TEST(Delta24, ThetaBlockSwaps)
{
    const int p = 2 * kQUnit;
    const auto swap = tt::transposition(4, 0, 1);
    const auto b1 = tt::theta_block_j(1, p), b2 = tt::theta_block_j(2, p), b3 = tt::theta_block_j(3, p);
    EXPECT_EQ(tt::permute_vars(b1.expansion, swap), tt::scale(b1.expansion, -1));
    EXPECT_EQ(tt::permute_vars(b2.expansion, swap), tt::scale(b3.expansion, -1));
}

TEST(Bookkeeping, ProductAddsWeightIndexAndCharacter)
{
    const auto a = tt::theta_block_j(1, kPrec), b = tt::theta_block_j(2, kPrec);
    const auto p = tt::bookkeeping_mul(a, b);
    EXPECT_EQ(p.weight, HalfInteger::whole(4));
    EXPECT_EQ(p.index, a.index + b.index);
    EXPECT_EQ(p.eta_char, 0);
}
