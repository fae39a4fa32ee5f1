#include <bit>

#include <gtest/gtest.h>

#include <theta_tower/theta_tower.hpp>

namespace tt = theta_tower;

TEST(Golay, SizeAndWeights)
{
    const tt::BinaryCode& c = tt::golay_code();
    EXPECT_EQ(c.dimension(), 12u);
    const auto words = c.words();
    EXPECT_EQ(words.size(), 4096u);
    const auto w = c.weight_distribution();
    EXPECT_EQ(w[0], 1);
    EXPECT_EQ(w[8], 759);
    EXPECT_EQ(w[12], 2576);
    EXPECT_EQ(w[16], 759);
    EXPECT_EQ(w[24], 1);
    for (std::size_t k = 1; k < 8; ++k)
        EXPECT_EQ(w[k], 0) << k;
}

TEST(Golay, SelfDual)
{
    const tt::BinaryCode& c = tt::golay_code();
    for (auto a : c.generators)
        for (auto b : c.generators)
            EXPECT_EQ(std::popcount(a & b) % 2, 0);
    EXPECT_TRUE(c.contains(0));
    EXPECT_TRUE(c.contains((1u << 24) - 1));
    EXPECT_FALSE(c.contains(1u));
}

TEST(Niemeier, Roots)
{
    const tt::NiemeierModel& n = tt::niemeier_model();
    EXPECT_EQ(tt::niemeier_root_count(n), 48);
    for (const auto& r : tt::niemeier_roots(n))
        EXPECT_EQ(tt::NiemeierModel::norm(r), 2);
}

TEST(Niemeier, NormFourCount)
{
    EXPECT_EQ(tt::niemeier_representation_count(tt::niemeier_model(), 4), 195408);
    EXPECT_EQ(tt::representation_number("Niemeier", 2), 48);
}

TEST(Niemeier, ComplementRootData)
{
    const tt::NiemeierModel& n = tt::niemeier_model();
    for (int m = 1; m <= 4; ++m)
    {
        const auto d = tt::complement_root_data(n, m);
        EXPECT_EQ(d.n_k, 24 - m) << m;
        EXPECT_EQ(d.roots_removed, 2 * m) << m;
        EXPECT_EQ(tt::quasi_pullback_weight(n, m), 36 - m) << m;
    }
}

TEST(Niemeier, MembershipFollowsCode)
{
    const tt::NiemeierModel& n = tt::niemeier_model();
    std::array<int, 24> x{};
    x[0] = 1;
    EXPECT_FALSE(n.contains(x));
    x[0] = 2;
    EXPECT_TRUE(n.contains(x));
}
