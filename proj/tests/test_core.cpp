// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sast/core.hpp"

using namespace sast;

TEST(Trapezoid, ZeroIntegrand)
{
    EXPECT_EQ(trapezoid_integral(rvec{0, 0, 0}, 0.1), 0.0);
}

TEST(Trapezoid, ConstantOverTwoUnits)
{
    EXPECT_DOUBLE_EQ(trapezoid_integral(rvec{1, 1, 1}, 1.0), 2.0);
}

TEST(Trapezoid, GaussianMatchesGaussLegendre)
{
    const std::size_t n = 4097;
    rvec t = linspace(-6, 6, n), v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(-t[i] * t[i]);
    double ref = static_cast<double>(
        oracle::integrate([](long double x) { return std::exp(-x * x); }, -6.0L, 6.0L).real());
    EXPECT_NEAR(trapezoid_integral(v, t[1] - t[0]), ref, 1e-10);
    EXPECT_NEAR(ref, std::sqrt(pi), 1e-14);
}

TEST(Trapezoid, EmptyInputRejected)
{
    EXPECT_THROW(trapezoid_integral(rvec{}, 1.0), Error);
    EXPECT_THROW(trapezoid_integral(rvec{1.0}, 0.0), Error);
}

TEST(Trapezoid, IsLinear)
{
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    cvec f(300), g(300), h(300);
    cplx al(0.3, -1.2), be(2.5, 0.4);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = {nd(rng), nd(rng)};
        g[i] = {nd(rng), nd(rng)};
        h[i] = al * f[i] + be * g[i];
    }
    cplx lhs = trapezoid_integral(h, 0.01);
    cplx rhs = al * trapezoid_integral(f, 0.01) + be * trapezoid_integral(g, 0.01);
    EXPECT_LT(std::abs(lhs - rhs), 1e-13 * std::abs(rhs));
}

TEST(Trapezoid, NonuniformWeightsIntegrateLinearExactly)
{
    rvec x = geomspace(0.1, 50, 37);
    rvec w = trapezoid_weights(x);
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += w[i] * x[i];
    EXPECT_NEAR(s, 0.5 * (50.0 * 50.0 - 0.01), 1e-10);
}

TEST(Energy, ZeroSignal)
{
    SampledSignal f(cvec(10, 0.0), 0, 0.1);
    EXPECT_EQ(signal_energy(f), 0.0);
}

TEST(Energy, UnitConstant)
{
    SampledSignal f(cvec(1001, 1.0), 0, 1e-3);
    EXPECT_NEAR(signal_energy(f), 1.0, 1e-9);
}

TEST(Energy, GaussianPi)
{
    auto f = SampledSignal::from_function([](double t) { return std::exp(-pi * t * t); }, -8,
                                          16.0 / 2047, 2048);
    EXPECT_NEAR(signal_energy(f), 1.0 / std::sqrt(2.0), 1e-8);
}

TEST(Signal, RejectsBadGrid)
{
    EXPECT_THROW(SampledSignal(cvec{}, 0, 1), Error);
    EXPECT_THROW(SampledSignal(cvec{1.0}, 0, 0), Error);
    EXPECT_THROW(SampledSignal(cvec{cplx(NAN, 0)}, 0, 1), Error);
}

TEST(Params, UnimodularityEnforced)
{
    EXPECT_NO_THROW(SaftParams(1, 1, 1, 2));
    EXPECT_THROW(SaftParams(1, 1, 1, 2 + 1e-8), Error);
    EXPECT_NO_THROW(SaftParams(1, 1, 1, 2 + 1e-10));
    EXPECT_THROW(SaftParams(12, 5, 4, 0), Error);
}

TEST(Params, OverrideLogsWarning)
{
    std::string seen;
    auto saved = warning_sink();
    warning_sink() = [&](const std::string& m) { seen = m; };
    SaftParams N(12, 5, 4, 0, 0, 0, true);
    warning_sink() = saved;
    EXPECT_FALSE(N.unimodular());
    EXPECT_NE(seen.find("non-unimodular"), std::string::npos);
}

TEST(Params, ZeroBRejected)
{
    try {
        SaftParams(1, 0, 0, 1, 0, 0, true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_params);
    }
}

TEST(Params, KbPrincipalBranch)
{
    for (double B : {1.0, -1.0, 0.3, -7.5}) {
        SaftParams N(1, B, 0, 1, 0, 0, true);
        cplx kb = N.kb();
        EXPECT_NEAR(std::norm(kb), 1.0 / (2 * pi * std::abs(B)), 1e-15);
        cplx sq = 1.0 / kb;
        EXPECT_NEAR(std::abs(sq * sq - cplx(0, 2 * pi * B)), 0.0, 1e-12);
        EXPECT_GE(sq.real(), 0.0);
    }
}

TEST(Params, InverseMatrix)
{
    SaftParams N(1, 1, 1, 2, 0.5, 0.25);
    SaftParams M = N.inverse();
    EXPECT_EQ(M.A, 2);
    EXPECT_EQ(M.B, -1);
    EXPECT_EQ(M.C, -1);
    EXPECT_EQ(M.D, 1);
    EXPECT_DOUBLE_EQ(M.p, 1 * 0.25 - 2 * 0.5);
    EXPECT_DOUBLE_EQ(M.q, 1 * 0.5 - 1 * 0.25);
}

TEST(Axes, GeomspaceEndpointsAndRatio)
{
    rvec a = geomspace(2, 512, 9);
    EXPECT_EQ(a.front(), 2);
    EXPECT_EQ(a.back(), 512);
    for (std::size_t i = 1; i < a.size(); ++i)
        EXPECT_NEAR(a[i] / a[i - 1], 2.0, 1e-12);
    EXPECT_THROW(check_scales(rvec{1, 1}), Error);
    EXPECT_THROW(check_scales(rvec{-1, 1}), Error);
}

TEST(Window, DgsIsLiteralTranscription)
{
    auto w = WindowSpec::gaussian_dgs(12);
    EXPECT_NEAR(w(0).real(), 1.0 / std::sqrt(2 * pi * 12), 1e-15);
    EXPECT_NEAR(w(12).real(), std::exp(-0.5) / std::sqrt(2 * pi * 12), 1e-15);
    EXPECT_THROW(WindowSpec::gaussian_dgs(0), Error);
}

TEST(Window, MomentsOfGaussianPi)
{
    rvec x = linspace(-6, 6, 6001), d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        d[i] = std::exp(-2 * pi * x[i] * x[i]);
    auto g = moments_of(x, d);
    EXPECT_NEAR(g.center, 0.0, 1e-14);
    EXPECT_NEAR(g.radius, 1.0 / (2 * std::sqrt(pi)), 1e-10);
}

TEST(Parallel, IdenticalAcrossThreadCounts)
{
    std::vector<double> a(1000), b(1000);
    auto fill = [](std::vector<double>& v) {
        parallel_for(v.size(), [&](std::size_t i) { v[i] = std::sin(static_cast<double>(i) * 0.37); });
    };
    set_max_threads(1);
    fill(a);
    set_max_threads(4);
    fill(b);
    set_max_threads(0);
    EXPECT_EQ(a, b);
}

TEST(Parallel, PropagatesExceptions)
{
    set_max_threads(3);
    EXPECT_THROW(parallel_for(50, [](std::size_t i) {
                     if (i == 17)
                         throw Error(Errc::invalid_input, "boom");
                 }),
                 Error);
    set_max_threads(0);
}
