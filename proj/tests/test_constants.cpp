#include <gtest/gtest.h>

#include <fraclab/constants.hpp>
#include <fraclab/grid.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

using namespace fraclab;
using std::numbers::pi;

TEST(Constants, HalfLaplacianInOneDimension) {
    EXPECT_NEAR(a_constant(1, 0.5), 1.0 / (2.0 * pi), 1e-14);
    EXPECT_NEAR(kernel_constant(1, 0.5), 1.0 / pi, 1e-14);
    EXPECT_NEAR(constants(FracParams{1, 0.5}).K_Ns, 1.0 / pi, 1e-14);
}

TEST(Constants, BoundaryHardyConstantAtThreeQuarters) {
    EXPECT_NEAR(constants(FracParams{1, 0.75}).K_Ns, 0.26151, 5e-6);
}

TEST(Constants, CriticalExponent) {
    const auto c = constants(FracParams{3, 0.75});
    EXPECT_DOUBLE_EQ(c.two_star_s, 4.0);
    EXPECT_DOUBLE_EQ(critical_exponent(4, 0.5), 8.0 / 3.0);
}

TEST(Constants, PotentialHardyTendsToClassicalLimit) {
    // s -> 1 in N = 4 gives ((N-2)/2)^2 = 1
    const double L = constants(FracParams{4, 1.0 - 1e-9}).Lambda_Ns;
    EXPECT_NEAR(L, 1.0, 1e-6);
    // classical Hardy constant in N = 3: (1/2)^2
    EXPECT_NEAR(constants(FracParams{3, 1.0 - 1e-9}).Lambda_Ns, 0.25, 1e-6);
}

TEST(Constants, PotentialHardyUndefinedWhenNNotAboveTwoS) {
    const auto c = constants(FracParams{1, 0.75});
    EXPECT_TRUE(std::isnan(c.Lambda_Ns));
    EXPECT_TRUE(std::isnan(c.two_star_s));
    EXPECT_FALSE(std::isnan(c.K_Ns));
}

TEST(Constants, KernelConstantMatchesFourierSymbolIntegral) {
    // c_{1,s} int_R (1 - cos t) / |t|^{1+2s} dt = 1
    for (double s : {0.2, 0.5, 0.8}) {
        boost::math::quadrature::tanh_sinh<double> ts;
        const double I0 = ts.integrate(
            [&](double t) {
                if (t < 1e-4) return 0.5 * std::pow(t, 1.0 - 2.0 * s);
                return (1.0 - std::cos(t)) * std::pow(t, -1.0 - 2.0 * s);
            },
            0.0, 1.0);
        // tail: int_1^inf t^{-1-2s} dt - int_1^inf cos t t^{-1-2s} dt, the latter by integration over periods
        double oscill = 0.0;
        const double step = 2.0 * pi;
        boost::math::quadrature::tanh_sinh<double> ts2;
        double a = 1.0;
        for (int k = 0; k < 4000; ++k) {
            oscill += ts2.integrate([&](double t) { return std::cos(t) * std::pow(t, -1.0 - 2.0 * s); }, a, a + step);
            a += step;
        }
        const double I1 = 1.0 / (2.0 * s) - oscill;
        EXPECT_NEAR(kernel_constant(1, s) * 2.0 * (I0 + I1), 1.0, 2e-4) << "s = " << s;
    }
}

TEST(Constants, GetoorConstantDuplicationInOneDimension) {
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) EXPECT_NEAR(getoor_constant(1, s), std::tgamma(1.0 + 2.0 * s), 1e-12);
    EXPECT_NEAR(getoor_constant(1, 0.5), 1.0, 1e-14);
}

TEST(Constants, SphereArea) {
    EXPECT_NEAR(sphere_area(0), 2.0, 1e-15);
    EXPECT_NEAR(sphere_area(1), 2.0 * pi, 1e-14);
    EXPECT_NEAR(sphere_area(2), 4.0 * pi, 1e-13);
}

TEST(Constants, RejectsOutOfRangeS) {
    for (double s : {0.0, 1.0, 1.2, -0.3}) {
        FracParams p{1, s};
        try {
            p.validate();
            FAIL() << "accepted s = " << s;
        } catch (const DomainError& e) {
            EXPECT_NE(std::string(e.what()).find("s in (0,1)"), std::string::npos);
        }
    }
}

TEST(Constants, SobolevRequiresNAboveTwoS) {
    EXPECT_THROW((FracParams{1, 0.75}.require_sobolev()), DomainError);
    EXPECT_NO_THROW((FracParams{1, 0.25}.require_sobolev()));
}

TEST(Grid, IntervalNodesAreSymmetric) {
    const auto d = Domain::interval(1.0);
    const auto g = make_grid(d, 9);
    EXPECT_DOUBLE_EQ(g.h, 0.2);
    for (int i = 0; i < 9; ++i) EXPECT_NEAR(g.nodes[i], -g.nodes[8 - i], 1e-15);
    EXPECT_NEAR(g.nodes[4], 0.0, 1e-15);
}

TEST(Grid, RadialNodesAndVolumes) {
    const auto d = Domain::radial_ball(3, 2.0);
    const auto g = make_grid(d, 15);
    EXPECT_DOUBLE_EQ(g.h, 2.0 / 16.0);
    EXPECT_DOUBLE_EQ(g.nodes[0], g.h);
    const auto v = volume_weights(d, g);
    double total = 0.0;
    for (int i = 0; i < g.n; ++i) {
        EXPECT_NEAR(v[i], 4.0 * pi * g.nodes[i] * g.nodes[i] * g.h, 1e-13);
        total += v[i];
    }
    const double ball = 4.0 * pi / 3.0 * 8.0;
    EXPECT_LT(total, ball);
    EXPECT_GT(total, ball - 4.0 * pi * 4.0 * g.h);
}

TEST(Grid, InvalidDomains) {
    EXPECT_THROW(Domain::interval(0.0), DomainError);
    EXPECT_THROW(Domain::radial_ball(1, 1.0), DomainError);
}
