#include <map>

#include <gtest/gtest.h>

#include <theta_tower/theta_tower.hpp>

namespace tt = theta_tower;
using tt::FourierExpansion;
using tt::kQUnit;
using tt::make_exponent;
using tt::make_rational;

namespace
{
std::map<int, long> one_var_row(const FourierExpansion& f, int n)
{
    std::map<int, long> out;
    for (const auto& [e, c] : f.row(n * kQUnit))
        out[e.u[0]] = tt::to_long(c);
    return out;
}
} // namespace

TEST(Theta, SumEqualsProduct)
{
    const int p = 10 * kQUnit + 1;
    EXPECT_EQ(tt::theta_sum(p), tt::theta_product(p));
    const FourierExpansion t = tt::theta(p);
    EXPECT_EQ(tt::reflect_var(t, 0), tt::scale(t, -1));
}

TEST(Theta, DerivativeIsEtaCubed)
{
    const int p = 3 * 39 * 39 + 1;
    const FourierExpansion e3 = tt::eta_pow(3, p);
    ASSERT_GE(e3.size(), 20u);
    EXPECT_EQ(tt::fit_ratio(tt::first_derivative_at_zero(tt::theta_sum(p), 0), e3), tt::Rational(1));
}

TEST(Eta, Discriminant)
{
    const FourierExpansion d = tt::eta_pow(24, 5 * kQUnit);
    EXPECT_EQ(d.valuation(), kQUnit);
    EXPECT_EQ(d.coeff(make_exponent(24, {})), 1);
    EXPECT_EQ(d.coeff(make_exponent(48, {})), -24);
    EXPECT_EQ(d.coeff(make_exponent(72, {})), 252);
    EXPECT_EQ(d.coeff(make_exponent(96, {})), -1472);
    EXPECT_EQ(tt::eta_pow(0, 48), FourierExpansion::one(0, 48));
}

TEST(Phi01, FirstRows)
{
    const FourierExpansion p = tt::phi01(2 * kQUnit);
    EXPECT_EQ(one_var_row(p, 0), (std::map<int, long>{{-2, 1}, {0, 10}, {2, 1}}));
    EXPECT_EQ(one_var_row(p, 1), (std::map<int, long>{{-4, 10}, {-2, -64}, {0, 108}, {2, -64}, {4, 10}}));
}

TEST(Eps4, IndexZeroIsE4)
{
    const FourierExpansion e = tt::eps4(0, 4 * kQUnit);
    EXPECT_EQ(e.coeff(make_exponent(0, {})), 1);
    EXPECT_EQ(e.coeff(make_exponent(24, {})), 240);
    EXPECT_EQ(e.coeff(make_exponent(48, {})), 2160);
    EXPECT_EQ(e.coeff(make_exponent(72, {})), 6720);
}

TEST(Eps4, OneA1Table)
{
    const FourierExpansion f = tt::eps4(1, 4 * kQUnit);
    EXPECT_EQ(one_var_row(f, 0), (std::map<int, long>{{0, 1}}));
    EXPECT_EQ(one_var_row(f, 1), (std::map<int, long>{{-4, 1}, {-2, 56}, {0, 126}, {2, 56}, {4, 1}}));
    EXPECT_EQ(one_var_row(f, 2), (std::map<int, long>{{-4, 126}, {-2, 576}, {0, 756}, {2, 576}, {4, 126}}));
    EXPECT_EQ(one_var_row(f, 3), (std::map<int, long>{
                                     {-6, 56}, {-4, 756}, {-2, 1512}, {0, 2072}, {2, 1512}, {4, 756}, {6, 56}}));
}

TEST(Eps4, TwoAndThreeA1Rows)
{
    const FourierExpansion f2 = tt::eps4(2, 3 * kQUnit);
    EXPECT_EQ(f2.coeff(make_exponent(24, {0, 0})), 60);
    EXPECT_EQ(f2.coeff(make_exponent(24, {2, 0})), 32);
    EXPECT_EQ(f2.coeff(make_exponent(24, {2, -2})), 12);
    EXPECT_EQ(f2.coeff(make_exponent(24, {4, 0})), 1);
    EXPECT_EQ(f2.coeff(make_exponent(48, {4, 4})), 1);
    EXPECT_EQ(f2.coeff(make_exponent(48, {2, 2})), 160);
    const FourierExpansion f3 = tt::eps4(3, 2 * kQUnit);
    EXPECT_EQ(f3.coeff(make_exponent(24, {0, 0, 0})), 26);
    EXPECT_EQ(f3.coeff(make_exponent(24, {0, -2, 0})), 16);
    EXPECT_EQ(f3.coeff(make_exponent(24, {2, 0, -2})), 8);
    EXPECT_EQ(f3.coeff(make_exponent(24, {2, -2, 2})), 2);
    EXPECT_EQ(f3.row(24).size(), 33u);
}

TEST(Eps4, PullbackChain)
{
    for (std::size_t m = 1; m <= 3; ++m)
    {
        const int p = 2 * kQUnit;
        EXPECT_EQ(tt::pullback_last(tt::eps4(m, p)), tt::eps4(m - 1, p)) << m;
    }
}

TEST(Eps4, ComplementDualOracle)
{
    EXPECT_EQ(tt::s_m_count(1, 1, {make_rational(1, 2)}), 56);
    EXPECT_EQ(tt::s_m_count(3, 1, {make_rational(1, 2), 0, 0}), 16);
    EXPECT_EQ(tt::s_m_count(4, 1, {0, 0, 0, 0}), 8);
    EXPECT_EQ(tt::s_m_count(2, 2, {1, 1}), 1);
}

TEST(Eps4, CachedShellsGiveSameSeries)
{
    const int p = 2 * kQUnit;
    const tt::E8Shells shells = tt::enumerate_e8_shells(tt::e8_norm_bound(p));
    EXPECT_EQ(tt::eps4(2, p, &shells), tt::eps4(2, p));
}

TEST(ThetaBlocks, ThetaMA1)
{
    const FourierExpansion t = tt::theta_mA1(2, 2 * kQUnit);
    EXPECT_EQ(t.valuation(), 6);
    EXPECT_EQ(t.coeff(make_exponent(6, {1, 1})), 1);
    EXPECT_EQ(t.coeff(make_exponent(6, {-1, 1})), -1);
    EXPECT_EQ(t.row(6).size(), 4u);
}
