// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// The five covariance identities of the transform, each evaluated on sampled
// Gaussians with the direct evaluator and returned as a max relative
// deviation over a small (a, b) probe set.

#pragma once

#include "sast/transform.hpp"

namespace covariance {

using namespace sast;

struct Probe {
    double a, b;
};

inline const std::vector<Probe>& probes()
{
    static const std::vector<Probe> p{{0.8, -0.5}, {2.0, 0.3}, {3.5, 1.0}, {1.2, 0.0}};
    return p;
}

inline SampledSignal sample(const std::function<cplx(double)>& fn, std::size_t n = 2049, double half = 10)
{
    return SampledSignal::from_function(fn, -half, 2 * half / static_cast<double>(n - 1), n);
}

inline cplx base_signal(double t) { return std::exp(-0.7 * (t - 0.2) * (t - 0.2)) * std::polar(1.0, 1.3 * t); }
inline cplx other_signal(double t) { return std::exp(-1.5 * t * t) * std::polar(1.0, -0.4 * t * t); }

struct Deviation {
    double num = 0, den = 0;
    void add(cplx lhs, cplx rhs)
    {
        num = std::max(num, std::abs(lhs - rhs));
        den = std::max(den, std::abs(rhs));
    }
    double value() const { return den > 0 ? num / den : num; }
};

inline double linearity(const SaftParams& N)
{
    cplx al(1.5, -0.5), be(-0.2, 2.0);
    auto psi = WindowSpec::gaussian_pi();
    auto f = sample(base_signal), g = sample(other_signal);
    auto h = sample([&](double t) { return al * base_signal(t) + be * other_signal(t); });
    Deviation d;
    for (auto [a, b] : probes())
        d.add(sast_point(h, psi, N, a, b), al * sast_point(f, psi, N, a, b) + be * sast_point(g, psi, N, a, b));
    return d.value();
}

// Window alpha Psi + beta Phi gives conj(alpha) SAST_Psi + conj(beta) SAST_Phi.
// Both windows are sampled on one grid, so their combination is exact.
inline double anti_linearity(const SaftParams& N)
{
    cplx al(0.3, 1.1), be(2.0, -0.7);
    rvec u = linspace(-6, 6, 4801);
    cvec ps(u.size()), ph(u.size()), mix(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        ps[i] = std::exp(-pi * u[i] * u[i]);
        ph[i] = std::exp(-2.0 * u[i] * u[i]) * std::polar(1.0, 0.5 * u[i]);
        mix[i] = al * ps[i] + be * ph[i];
    }
    double du = u[1] - u[0];
    auto Psi = WindowSpec::sampled_window(ps, -6, du), Phi = WindowSpec::sampled_window(ph, -6, du),
         Mix = WindowSpec::sampled_window(mix, -6, du);
    auto f = sample(base_signal);
    Deviation d;
    for (auto [a, b] : probes())
        d.add(sast_point(f, Mix, N, a, b),
              std::conj(al) * sast_point(f, Psi, N, a, b) + std::conj(be) * sast_point(f, Phi, N, a, b));
    return d.value();
}

// SAST(f(. - k))(a, b) = e^{-iak - (i/B) A k (b - k)} SAST(e^{iAkt/B} f)(a, b - k)
inline double translation(const SaftParams& N, double k = 0.7)
{
    auto psi = WindowSpec::gaussian_pi();
    auto shifted = sample([k](double t) { return base_signal(t - k); });
    auto modulated = sample([&](double t) { return std::polar(1.0, N.A * k * t / N.B) * base_signal(t); });
    Deviation d;
    for (auto [a, b] : probes()) {
        cplx ph = std::polar(1.0, -a * k - N.A * k * (b - k) / N.B);
        d.add(sast_point(shifted, psi, N, a, b), ph * sast_point(modulated, psi, N, a, b - k));
    }
    return d.value();
}

// N-bar = (A, s^2 B, C, s^2 D; p, q); not unimodular for s != 1.
inline SaftParams scaled_matrix(const SaftParams& N, double s)
{
    auto saved = warning_sink();
    warning_sink() = nullptr;
    SaftParams M(N.A, s * s * N.B, N.C, s * s * N.D, N.p, N.q, true);
    warning_sink() = saved;
    return M;
}

// SAST_N(f(s .))(a, b) against factor * SAST_{N-bar}(f)(a/s, s b). The
// derivation keeps the normalizer K_B of N, i.e. factor = K_B / K_{s^2 B} = s;
// factor = 1 reads SAST_{N-bar} with its own normalizer.
inline double scaling(const SaftParams& N, double s, double factor)
{
    auto psi = WindowSpec::gaussian_pi();
    auto dilated = sample([s](double t) { return base_signal(s * t); }, 4097, 20);
    auto f = sample(base_signal, 4097, 20);
    SaftParams M = scaled_matrix(N, s);
    Deviation d;
    for (auto [a, b] : probes())
        d.add(sast_point(dilated, psi, N, a, b), factor * sast_point(f, psi, M, a / s, s * b));
    return d.value();
}

// SAST(f(-.))(a, b) = SAST(f)(-a, -b)
inline double parity(const SaftParams& N)
{
    auto psi = WindowSpec::gaussian_pi();
    auto f = sample(base_signal), r = sample([](double t) { return base_signal(-t); });
    Deviation d;
    for (auto [a, b] : probes())
        d.add(sast_point(r, psi, N, a, b), sast_point(f, psi, N, -a, -b));
    return d.value();
}

} // namespace covariance
