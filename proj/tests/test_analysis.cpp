// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "setups.hpp"

using namespace sast;

namespace {

std::vector<std::size_t> all_rows(const SampledSignal& f)
{
    std::vector<std::size_t> r(f.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = i;
    return r;
}

SampledSignal gaussian_signal(std::size_t n = 513, double half = 8)
{
    return SampledSignal::from_function([](double t) { return cplx(std::exp(-t * t / 2)); }, -half,
                                        2 * half / static_cast<double>(n - 1), n);
}

} // namespace

// ---------------------------------------------------------------------------
// Upsampling

TEST(Upsample, KeepsSamplesAndInterpolatesTones)
{
    const std::size_t n = 64;
    cvec x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = std::polar(1.0, 2 * pi * 5 * static_cast<double>(j) / n);
    cvec y = upsample2(x);
    ASSERT_EQ(y.size(), 2 * n - 1);
    for (std::size_t j = 0; j < n; ++j)
        EXPECT_LT(std::abs(y[2 * j] - x[j]), 1e-12);
    for (std::size_t j = 0; j + 1 < n; ++j)
        EXPECT_LT(std::abs(y[2 * j + 1] - std::polar(1.0, 2 * pi * 5 * (j + 0.5) / n)), 1e-12);
}

TEST(Upsample, MatchesPeriodicSincOracle)
{
    cvec x = fixture::random_samples(3, 37);
    cvec y = upsample2(x);
    for (std::size_t j = 0; j + 1 < x.size(); ++j)
        EXPECT_LT(std::abs(y[2 * j + 1] - oracle::periodic_sinc(x, j + 0.5)), 1e-12);
}

// ---------------------------------------------------------------------------
// SASWD

// For f = e^{-t^2/2}: W(t, u) = e^{-t^2} e^{-(X / kB)^2} / (sqrt(pi) B k),
// X = A k t + k p - u.
TEST(Saswd, GaussianClosedForm)
{
    auto f = gaussian_signal();
    for (const auto& N : setup::matrices())
        for (double k : {1.0, 2.0}) {
            SaswdParams sp{N, k};
            for (std::size_t ti : {256ul, 230ul, 300ul})
                for (double du : {-1.0, 0.0, 0.7}) {
                    double t = f.t(ti);
                    double u = N.A * k * t + k * N.p + du;
                    double X = N.A * k * t + k * N.p - u;
                    double want = std::exp(-t * t - X * X / (k * k * N.B * N.B)) / (std::sqrt(pi) * N.B * k);
                    EXPECT_NEAR(std::abs(saswd_point(f, f, sp, ti, u) - want), 0.0, 1e-8);
                }
        }
}

TEST(Saswd, ToneRidgeAtItsFrequency)
{
    auto f = SampledSignal::from_function([](double t) { return std::polar(1.0, 40.0 * t); }, -2, 1.0 / 64, 256);
    SaswdParams sp{SaftParams::classical(), 1};
    FreqAxis ax{20, 0.25, 161};
    std::vector<std::size_t> rows{64, 100, 128, 160, 192};
    auto W = saswd(f, f, sp, rows, ax);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t best = 0;
        for (std::size_t l = 1; l < ax.count; ++l)
            if (std::abs(W.at(r, l)) > std::abs(W.at(r, best)))
                best = l;
        EXPECT_LE(std::abs(ax.at(best) - 40.0), ax.dw) << "row " << rows[r];
    }
}

TEST(Saswd, FastMatchesDirect)
{
    auto f = fixture::bandlimited(5, 128, 1.0 / 16);
    auto g = fixture::bandlimited(6, 128, 1.0 / 16);
    for (const auto& N : setup::matrices()) {
        SaswdParams sp{N, 1.5};
        FreqAxis ax{-10, 0.1, 201};
        std::vector<std::size_t> rows{0, 5, 40, 64, 100, 127};
        auto Wf = saswd(f, g, sp, rows, ax, Path::fast);
        auto Wd = saswd(f, g, sp, rows, ax, Path::direct);
        EXPECT_LT(fixture::max_rel(Wf.coeffs, Wd.coeffs), 1e-9);
    }
}

TEST(Saswd, ArbitraryAxisMatchesUniform)
{
    auto f = fixture::bandlimited(8, 128, 1.0 / 16);
    SaswdParams sp{setup::mixed(), 1};
    FreqAxis ax{-6, 0.2, 61};
    rvec u(ax.count);
    for (std::size_t l = 0; l < ax.count; ++l)
        u[l] = ax.at(l);
    std::vector<std::size_t> rows{10, 64, 90};
    EXPECT_LT(fixture::max_rel(saswd(f, f, sp, rows, u).coeffs, saswd(f, f, sp, rows, ax).coeffs), 1e-9);
}

// Brute-force half-sample sum with periodic-sinc interpolation.
TEST(Saswd, ClassicalMatchesBruteForce)
{
    const std::size_t n = 128;
    auto f = fixture::bandlimited(11, n, 1.0 / 16);
    auto g = fixture::bandlimited(12, n, 1.0 / 16);
    SaswdParams sp{SaftParams::classical(), 1};
    for (std::size_t i : {0ul, 3ul, 50ul, 64ul, 127ul})
        for (double u : {-4.0, 0.0, 2.5}) {
            long M = std::min<long>(2 * static_cast<long>(i), 2 * static_cast<long>(n) - 2 - 2 * static_cast<long>(i));
            cplx acc = 0;
            for (long m = -M; m <= M; ++m) {
                double s = static_cast<double>(m) / 2;
                acc += oracle::periodic_sinc(f.samples, i + s) * std::conj(oracle::periodic_sinc(g.samples, i - s)) *
                       std::polar(1.0, -static_cast<double>(m) * f.dt * u);
            }
            acc *= f.dt / (2 * pi);
            EXPECT_LT(std::abs(saswd_point(f, g, sp, i, u) - acc), 1e-8);
        }
}

TEST(Saswd, AutoDistributionIsReal)
{
    auto f = fixture::bandlimited(21, 128, 1.0 / 16);
    for (const auto& N : setup::matrices()) {
        auto W = saswd(f, f, SaswdParams{N, 1}, {10, 50, 64, 100}, FreqAxis{-8, 0.25, 65});
        double peak = W.max_abs();
        for (auto v : W.coeffs)
            EXPECT_LT(std::abs(v.imag()), 1e-10 * peak);
    }
}

TEST(Saswd, Sesquilinear)
{
    auto f = fixture::bandlimited(31, 128, 1.0 / 16);
    auto g = fixture::bandlimited(32, 128, 1.0 / 16);
    cplx al(0.4, -1.2), be(2.0, 0.3);
    SampledSignal af = f, bg = g;
    for (auto& v : af.samples)
        v *= al;
    for (auto& v : bg.samples)
        v *= be;
    SaswdParams sp{setup::rotated(), 1};
    for (std::size_t i : {20ul, 64ul})
        for (double u : {-1.0, 1.5}) {
            cplx lhs = saswd_point(af, bg, sp, i, u);
            cplx rhs = al * std::conj(be) * saswd_point(f, g, sp, i, u);
            EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
        }
}

TEST(Saswd, ZeroSignal)
{
    SampledSignal z(cvec(64, 0.0), 0, 0.1);
    auto W = saswd(z, z, SaswdParams{setup::mixed(), 1}, all_rows(z), FreqAxis{-1, 0.1, 21});
    EXPECT_EQ(W.max_abs(), 0.0);
}

TEST(Saswd, Validation)
{
    auto f = fixture::bandlimited(1, 64, 1.0 / 16);
    SampledSignal other(f.samples, f.t0 + 0.5, f.dt);
    EXPECT_THROW(saswd_point(f, other, SaswdParams{setup::mixed(), 1}, 3, 0.0), Error);
    EXPECT_THROW(saswd_point(f, f, SaswdParams{setup::mixed(), 0}, 3, 0.0), Error);
    EXPECT_THROW(saswd_point(f, f, SaswdParams{setup::mixed(), 1}, 64, 0.0), Error);
}

// ---------------------------------------------------------------------------
// SASWD through SAST coefficients

class Relation : public ::testing::TestWithParam<SaftParams> {};

TEST_P(Relation, DerivedFormMatchesDistribution)
{
    setup::RelationSetup s;
    const SaftParams& N = GetParam();
    SaswdParams sp{N, 1};
    auto psi = WindowSpec::gaussian_pi();
    std::vector<cplx> direct, via;
    double peak = 0;
    for (std::size_t ti : s.t_idx) {
        double u = s.u_at(N, ti);
        direct.push_back(saswd_point(s.f, s.f, sp, ti, u));
        via.push_back(saswd_from_sast(s.f, s.f, sp, psi, s.c_at(N, ti), s.scales, ti, u));
        peak = std::max(peak, std::abs(direct.back()));
    }
    for (std::size_t i = 0; i < direct.size(); ++i)
        EXPECT_LT(std::abs(via[i] - direct[i]) / peak, 0.1) << "probe " << i;
}

TEST_P(Relation, NegatedShiftFormAgreesAtTimeZero)
{
    setup::RelationSetup s;
    const SaftParams& N = GetParam();
    SaswdParams sp{N, 1};
    auto psi = WindowSpec::gaussian_pi();
    double u = s.u_at(N, 32), c = s.c_at(N, 32);
    cplx d = saswd_from_sast(s.f, s.f, sp, psi, c, s.scales, 32, u, RelationForm::derived);
    cplx p = saswd_from_sast(s.f, s.f, sp, psi, c, s.scales, 32, u, RelationForm::negated_shift);
    EXPECT_LT(std::abs(d - p), 1e-12 * std::abs(d));
}

TEST_P(Relation, LinearInTheFirstSignal)
{
    setup::RelationSetup s;
    const SaftParams& N = GetParam();
    SaswdParams sp{N, 1};
    auto psi = WindowSpec::gaussian_pi();
    SampledSignal f2 = s.f;
    for (auto& v : f2.samples)
        v *= 2.0;
    double u = s.u_at(N, 34), c = s.c_at(N, 34);
    cplx one = saswd_from_sast(s.f, s.f, sp, psi, c, s.scales, 34, u);
    cplx two = saswd_from_sast(f2, s.f, sp, psi, c, s.scales, 34, u);
    EXPECT_LT(std::abs(two - 2.0 * one), 1e-10 * std::abs(one));
}

INSTANTIATE_TEST_SUITE_P(Matrices, Relation,
                         ::testing::Values(SaftParams::classical(), setup::mixed(), setup::rotated()));

TEST(RelationEdge, ZeroSignal)
{
    setup::RelationSetup s;
    SampledSignal z(cvec(s.f.size(), 0.0), s.f.t0, s.f.dt);
    EXPECT_EQ(saswd_from_sast(z, s.f, SaswdParams{setup::mixed(), 1}, WindowSpec::gaussian_pi(), 1.0, s.scales,
                              32, 1.0),
              cplx(0));
}

TEST(RelationEdge, Validation)
{
    setup::RelationSetup s;
    auto psi = WindowSpec::gaussian_pi();
    SampledSignal shifted(s.f.samples, s.f.t0 + 1, s.f.dt);
    EXPECT_THROW(saswd_from_sast(s.f, shifted, SaswdParams{setup::mixed(), 1}, psi, 1.0, s.scales, 32, 1.0), Error);
    EXPECT_THROW(saswd_from_sast(s.f, s.f, SaswdParams{setup::mixed(), 1}, psi, 0.0, s.scales, 32, 1.0), Error);
}

// ---------------------------------------------------------------------------
// Uncertainty principles

TEST(Digamma, QuarterMatchesSeriesOracle)
{
    EXPECT_NEAR(digamma_quarter(), static_cast<double>(oracle::digamma(0.25L)), 1e-9);
    EXPECT_NEAR(digamma_quarter(), -4.227453, 1e-6);
}

// The moment bound holds with the constant |B| sqrt(C) / (2 sqrt(2 pi)):
// the b-moment of the transform carries C / 2 pi, not C.
TEST(Heisenberg, CorrectedBoundHoldsOnCorpus)
{
    auto psi = WindowSpec::gaussian_pi();
    for (const auto& c : setup::ucp_corpus()) {
        auto r = heisenberg_check(c.f, psi, c.params, c.c_psi, c.scales);
        EXPECT_GE(r.lhs, r.rhs_bound / std::sqrt(2 * pi)) << "sigma " << c.sigma << " A " << c.params.A;
        EXPECT_GT(r.lhs, 0.0);
    }
}

// Both sides are quadratic in f.
TEST(Heisenberg, RatioIsScaleInvariant)
{
    auto psi = WindowSpec::gaussian_pi();
    auto c = setup::ucp_corpus()[4];
    SampledSignal g = c.f;
    for (auto& v : g.samples)
        v *= cplx(0, 3);
    double r1 = heisenberg_check(c.f, psi, c.params, c.c_psi, c.scales).ratio;
    double r2 = heisenberg_check(g, psi, c.params, c.c_psi, c.scales).ratio;
    EXPECT_NEAR(r1, r2, 1e-10 * r1);
}

TEST(Heisenberg, ZeroSignalRejected)
{
    SampledSignal z(cvec(256, 0.0), -4, 8.0 / 255);
    try {
        heisenberg_check(z, WindowSpec::gaussian_pi(), setup::mixed(), 1.0, geomspace(0.1, 10, 8));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_signal);
    }
}

TEST(Heisenberg, EdgeEnergyRejected)
{
    SampledSignal one(cvec(256, 1.0), -4, 8.0 / 255);
    try {
        heisenberg_check(one, WindowSpec::gaussian_pi(), setup::mixed(), 1.0, geomspace(0.1, 10, 8));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::moment_truncation);
    }
}

TEST(LogUncertainty, HoldsOnCorpus)
{
    auto psi = WindowSpec::gaussian_pi();
    for (const auto& c : setup::ucp_corpus()) {
        auto r = log_ucp_check(c.f, psi, c.params, c.c_psi, c.scales);
        EXPECT_TRUE(r.passed) << "sigma " << c.sigma << " A " << c.params.A << " lhs " << r.lhs << " rhs "
                              << r.rhs_bound;
    }
}

TEST(LogUncertainty, ZeroSignalRejected)
{
    SampledSignal z(cvec(256, 0.0), -4, 8.0 / 255);
    EXPECT_THROW(log_ucp_check(z, WindowSpec::gaussian_pi(), setup::mixed(), 1.0, geomspace(0.1, 10, 8)), Error);
}
