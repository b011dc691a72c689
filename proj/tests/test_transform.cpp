#include "oracles.hpp"

#include <mighty/transform.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mighty;

TEST(Duration, ForwardBackward)
{
    EXPECT_EQ(duration_forward(0.0), 1.0);
    EXPECT_NEAR(duration_backward(std::exp(1.0)), 1.0, 1e-15);
    EXPECT_THROW(duration_backward(0.0), DomainError);
    EXPECT_THROW(duration_backward(-2.0), DomainError);
    for (double T : {1e-3, 0.3, 1.0, 7.5, 1e3})
        EXPECT_NEAR(duration_forward(duration_backward(T)), T, 1e-14 * T);
}

TEST(Duration, ChainFactorAtUnitDuration)
{
    // dJ/dT = 2 at T = 1 (sigma = 0) gives dJ/dsigma = 2
    KnotState a, b;
    b.p = Vec3(1, 0, 0);
    const HermiteSpline sp({a, b}, {1.0});
    auto raw = RawGradient::zeros(1);
    raw.T[0] = 2.0;
    const Eigen::VectorXd g = pullback_gradient(raw, sp);
    ASSERT_EQ(g.size(), 1);
    EXPECT_DOUBLE_EQ(g[0], 2.0);
}

TEST(AveragedLocalTime, Examples)
{
    const std::vector<double> uniform{0.7, 0.7, 0.7};
    for (double t : averaged_local_time(uniform))
        EXPECT_DOUBLE_EQ(t, 0.7);
    EXPECT_EQ(averaged_local_time(std::vector<double>{1.0, 3.0}), (std::vector<double>{1.0, 2.0, 3.0}));
    EXPECT_EQ(averaged_local_time(std::vector<double>{2.0}), (std::vector<double>{2.0, 2.0}));
    EXPECT_THROW(averaged_local_time(std::vector<double>{1.0, 0.0}), DomainError);
    EXPECT_THROW(averaged_local_time(std::vector<double>{}), DomainError);
}

TEST(Layout, SizeAndOffsets)
{
    for (int M = 1; M <= 8; ++M)
    {
        const DecisionLayout lay{M};
        EXPECT_EQ(lay.size(), 10 * M - 9);
        EXPECT_EQ(DecisionLayout::from_size(lay.size()).segments, M);
        EXPECT_EQ(lay.sigma(0), 9 * (M - 1));
    }
    EXPECT_THROW(DecisionLayout::from_size(5), DomainError);
}

TEST(Pack, ScaledVelocityExample)
{
    KnotState s0, s1, s2;
    s1.v = Vec3(2, 0, 0);
    s2.p = Vec3(1, 1, 1);
    const HermiteSpline sp({s0, s1, s2}, {1.0, 3.0});
    const Eigen::VectorXd z = pack(sp);
    const DecisionLayout lay{2};
    EXPECT_DOUBLE_EQ(z[lay.v(1)], 4.0);
    EXPECT_EQ(z[lay.v(1) + 1], 0.0);
    const Eigen::VectorXd zu = pack(sp, DerivativeScaling::unscaled);
    EXPECT_DOUBLE_EQ(zu[lay.v(1)], 2.0);
}

TEST(Pack, ZeroDerivativesStayZero)
{
    std::mt19937_64 rng(2);
    auto sp = oracle::random_spline(rng, 4);
    auto knots = sp.knots();
    for (std::size_t i = 1; i + 1 < knots.size(); ++i)
        knots[i].v = knots[i].a = Vec3::Zero();
    const HermiteSpline flat(knots, sp.durations());
    const Eigen::VectorXd z = pack(flat);
    const DecisionLayout lay{4};
    for (int i = 1; i < 4; ++i)
    {
        EXPECT_EQ(z.segment<3>(lay.v(i)).norm(), 0.0);
        EXPECT_EQ(z.segment<3>(lay.a(i)).norm(), 0.0);
    }
}

TEST(Pack, RoundTrip)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial)
    {
        const int M = 1 + trial % 6;
        const auto sp = oracle::random_spline(rng, M);
        for (auto scaling : {DerivativeScaling::scaled, DerivativeScaling::unscaled})
        {
            const auto back = unpack(pack(sp, scaling), sp.knot(0), sp.knot(M), scaling);
            ASSERT_EQ(back.segments(), M);
            for (int s = 0; s < M; ++s)
                EXPECT_LE(oracle::rel_err(back.duration(s), sp.duration(s)), 1e-12);
            for (int i = 0; i <= M; ++i)
            {
                const auto &k0 = sp.knot(i), &k1 = back.knot(i);
                EXPECT_LE((k0.p - k1.p).norm(), 1e-12 * std::max(1.0, k0.p.norm()));
                EXPECT_LE((k0.v - k1.v).norm(), 1e-12 * std::max(1.0, k0.v.norm()));
                EXPECT_LE((k0.a - k1.a).norm(), 1e-12 * std::max(1.0, k0.a.norm()));
            }
        }
    }
}

TEST(Unpack, DurationsAlwaysPositive)
{
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(0.0, 5.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        Eigen::VectorXd z(DecisionLayout{3}.size());
        for (Eigen::Index k = 0; k < z.size(); ++k)
            z[k] = n(rng);
        const auto sp = unpack(z, KnotState{}, KnotState{});
        for (double T : sp.durations())
            EXPECT_GT(T, 0.0);
    }
}

TEST(Pullback, ZeroIsZero)
{
    std::mt19937_64 rng(5);
    const auto sp = oracle::random_spline(rng, 3);
    EXPECT_EQ(pullback_gradient(RawGradient::zeros(3), sp).norm(), 0.0);
}

TEST(Pullback, VelocityChainFactor)
{
    // Tbar_1 = 2 with durations (1, 3); interior v and a zero so the duration
    // coupling through Tbar vanishes.
    KnotState s0, s1, s2;
    s2.p = Vec3(1, 0, 0);
    const HermiteSpline sp({s0, s1, s2}, {1.0, 3.0});
    auto raw = RawGradient::zeros(2);
    raw.v[1] = Vec3(1, 0, 0);
    raw.a[1] = Vec3(0, 0, 1);
    const Eigen::VectorXd g = pullback_gradient(raw, sp);
    const DecisionLayout lay{2};
    EXPECT_DOUBLE_EQ(g[lay.v(1)], 0.5);
    EXPECT_DOUBLE_EQ(g[lay.a(1) + 2], 0.25);
    EXPECT_EQ(g[lay.sigma(0)], 0.0);
    EXPECT_EQ(g[lay.sigma(1)], 0.0);
}

namespace
{

// A smooth test functional on splines with a hand-written gradient in the
// physical variables.
struct TestFunctional
{
    std::vector<Vec3> cp, cv, ca;
    std::vector<double> ct;

    double value(const HermiteSpline &sp) const
    {
        double f = 0.0;
        for (int i = 0; i <= sp.segments(); ++i)
        {
            const auto &k = sp.knot(i);
            f += cp[i].dot(k.p) + std::sin(cv[i].dot(k.v)) + 0.5 * k.a.squaredNorm() + ca[i].dot(k.a) * k.v.x();
        }
        for (int s = 0; s < sp.segments(); ++s)
            f += ct[s] * sp.duration(s) * sp.duration(s) + std::log(sp.duration(s));
        return f;
    }

    RawGradient gradient(const HermiteSpline &sp) const
    {
        auto g = RawGradient::zeros(sp.segments());
        for (int i = 0; i <= sp.segments(); ++i)
        {
            const auto &k = sp.knot(i);
            g.p[i] = cp[i];
            g.v[i] = std::cos(cv[i].dot(k.v)) * cv[i];
            g.v[i].x() += ca[i].dot(k.a);
            g.a[i] = k.a + ca[i] * k.v.x();
        }
        for (int s = 0; s < sp.segments(); ++s)
            g.T[s] = 2.0 * ct[s] * sp.duration(s) + 1.0 / sp.duration(s);
        return g;
    }
};

TestFunctional random_functional(std::mt19937_64 &rng, int M)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rv = [&] { return Vec3(u(rng), u(rng), u(rng)); };
    TestFunctional f;
    for (int i = 0; i <= M; ++i)
    {
        f.cp.push_back(rv());
        f.cv.push_back(rv());
        f.ca.push_back(rv());
    }
    for (int s = 0; s < M; ++s)
        f.ct.push_back(0.5 + 0.5 * u(rng));
    return f;
}

} // namespace

TEST(Pullback, MatchesFiniteDifferencesThroughUnpack)
{
    std::mt19937_64 rng(6);
    const double h = 1e-6;
    for (int trial = 0; trial < 50; ++trial)
    {
        const int M = 2 + trial % 7;
        const auto sp = oracle::random_spline(rng, M);
        const auto fn = random_functional(rng, M);
        for (auto scaling : {DerivativeScaling::scaled, DerivativeScaling::unscaled})
        {
            const Eigen::VectorXd z = pack(sp, scaling);
            const Eigen::VectorXd g = pullback_gradient(fn.gradient(sp), sp, scaling);
            for (Eigen::Index k = 0; k < z.size(); ++k)
            {
                Eigen::VectorXd zp = z, zm = z;
                zp[k] += h;
                zm[k] -= h;
                const double fp = fn.value(unpack(zp, sp.knot(0), sp.knot(M), scaling));
                const double fm = fn.value(unpack(zm, sp.knot(0), sp.knot(M), scaling));
                const double num = (fp - fm) / (2 * h);
                EXPECT_LE(std::abs(num - g[k]) / std::max(1.0, std::abs(g[k])), 1e-5)
                    << "trial " << trial << " coordinate " << k;
            }
        }
    }
}

TEST(Pullback, ObjectiveInvariantUnderReparameterization)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial)
    {
        const int M = 1 + trial % 5;
        const auto sp = oracle::random_spline(rng, M);
        const auto fn = random_functional(rng, M);
        const double direct = fn.value(sp);
        const double through = fn.value(unpack(pack(sp), sp.knot(0), sp.knot(M)));
        EXPECT_LE(std::abs(direct - through) / std::max(1.0, std::abs(direct)), 1e-12);
    }
}
