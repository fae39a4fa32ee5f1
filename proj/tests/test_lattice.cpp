#include <set>

#include <gtest/gtest.h>

#include <theta_tower/theta_tower.hpp>

namespace tt = theta_tower;

TEST(Lattice, RootLatticeDeterminants)
{
    EXPECT_EQ(tt::lattice_mA1(3).determinant(), 8);
    EXPECT_EQ(tt::lattice_D(4).determinant(), 4);
    EXPECT_EQ(tt::lattice_D(6).determinant(), 4);
    EXPECT_EQ(tt::lattice_E8().determinant(), 1);
    EXPECT_EQ(tt::lattice_E7().determinant(), 2);
}

TEST(Lattice, E8Shells)
{
    const auto counts = tt::shell_counts(tt::lattice_E8(), 6);
    EXPECT_EQ(counts[0], 1);
    EXPECT_EQ(counts[2], 240);
    EXPECT_EQ(counts[4], 2160);
    EXPECT_EQ(counts[6], 6720);
}

TEST(Lattice, ChainComplementRoots)
{
    const std::array<std::int64_t, 4> roots{126, 60, 26, 8};
    for (std::size_t m = 1; m <= 4; ++m)
    {
        const tt::GramLattice k = tt::chain_complement(m);
        EXPECT_EQ(k.rank(), 8 - m);
        EXPECT_EQ(tt::shell_counts(k, 2)[2], roots[m - 1]) << k.name();
        EXPECT_EQ(k.determinant(), tt::Integer(1L << m)) << k.name();
    }
}

TEST(Lattice, ComplementsMatchNamedLattices)
{
    const std::array<tt::GramLattice, 4> named{tt::lattice_E7(), tt::lattice_D(6),
                                               tt::direct_sum(tt::lattice_mA1(1), tt::lattice_D(4)),
                                               tt::lattice_mA1(4)};
    for (std::size_t m = 1; m <= 4; ++m)
        EXPECT_EQ(tt::shell_counts(tt::chain_complement(m), 8), tt::shell_counts(named[m - 1], 8)) << m;
}

TEST(Lattice, RepresentationNumbers)
{
    EXPECT_EQ(tt::representation_number("E7", 2), 126);
    EXPECT_EQ(tt::representation_number("D6", 2), 60);
    EXPECT_EQ(tt::representation_number("A1+D4", 2), 26);
    EXPECT_EQ(tt::representation_number("4A1", 2), 8);
    EXPECT_EQ(tt::representation_number("E8", 4), 2160);
    EXPECT_EQ(tt::representation_number("E8", 0), 1);
    EXPECT_THROW(tt::representation_number("E8", 3), std::invalid_argument);
    EXPECT_THROW(tt::representation_number("E8", -2), std::invalid_argument);
    EXPECT_THROW(tt::representation_number("A2", 2), std::invalid_argument);
}

TEST(Lattice, VectorsOfNormAreClosedUnderNegation)
{
    const auto v = tt::vectors_of_norm(tt::lattice_D(4), 2);
    ASSERT_EQ(v.size(), 24u);
    std::set<std::vector<tt::Rational>> seen;
    for (const auto& x : v)
        seen.insert(x.coords);
    for (const auto& x : v)
    {
        std::vector<tt::Rational> neg;
        for (const auto& c : x.coords)
            neg.push_back(-c);
        EXPECT_TRUE(seen.count(neg));
    }
}

TEST(Discriminant, mA1IsElementaryAbelian)
{
    for (std::size_t m = 1; m <= 4; ++m)
    {
        const auto d = tt::dual_discriminant(tt::lattice_mA1(m));
        EXPECT_EQ(d.order(), std::size_t{1} << m);
        ASSERT_EQ(d.invariant_factors.size(), m);
        for (const auto& f : d.invariant_factors)
            EXPECT_EQ(f, 2);
        std::size_t factorial = 1;
        for (std::size_t i = 2; i <= m; ++i)
            factorial *= i;
        EXPECT_EQ(tt::disc_orthogonal_group_order(tt::lattice_mA1(m)).order, factorial) << m;
    }
}

TEST(Discriminant, DmFormValues)
{
    for (std::size_t m = 2; m <= 8; ++m)
    {
        const auto d = tt::dual_discriminant(tt::lattice_D(m));
        std::multiset<tt::Rational> values(d.q_values.begin(), d.q_values.end());
        const tt::Rational quarter = tt::mod_rational(tt::make_rational(static_cast<long>(m), 4), 2);
        std::multiset<tt::Rational> expected{0, 1, quarter, quarter};
        EXPECT_EQ(values, expected) << "D" << m;
    }
}

TEST(Discriminant, OrthogonalGroups)
{
    EXPECT_EQ(tt::disc_orthogonal_group_order(tt::lattice_E7()).order, 1u);
    EXPECT_EQ(tt::disc_orthogonal_group_order(tt::lattice_D(4)).order, 6u);
    EXPECT_EQ(tt::dual_discriminant(tt::lattice_E8()).order(), 1u);
}

TEST(Discriminant, FormValueOfE7Glue)
{
    const auto d = tt::dual_discriminant(tt::lattice_E7());
    ASSERT_EQ(d.order(), 2u);
    std::multiset<tt::Rational> values(d.q_values.begin(), d.q_values.end());
    EXPECT_EQ(values, (std::multiset<tt::Rational>{0, tt::make_rational(3, 2)}));
}
