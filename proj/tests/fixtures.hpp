// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Test signals shared by the unit tests and the acceptance runner.

#pragma once

#include <random>

#include "sast/core.hpp"

namespace fixture {

using namespace sast;

// Sum of 12 random tones below nu_max rad/s under a Gaussian envelope that
// falls to about 5e-4 of its peak at the grid edges.
inline SampledSignal bandlimited(std::uint32_t seed, std::size_t n = 512, double dt = 1.0 / 128,
                                 double nu_max = 5.0)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> freq(-nu_max, nu_max), phase(0, 2 * pi), amp(0.2, 1.0);
    std::vector<std::tuple<double, double, double>> tones(12);
    for (auto& [w, ph, am] : tones) {
        w = freq(rng);
        ph = phase(rng);
        am = amp(rng);
    }
    const double t0 = -0.5 * dt * static_cast<double>(n - 1);
    const double width = 0.18 * static_cast<double>(n) * dt;
    return SampledSignal::from_function(
        [&](double t) {
            cplx v = 0;
            for (const auto& [w, ph, am] : tones)
                v += am * std::polar(1.0, w * t + ph);
            return v * std::exp(-(t / width) * (t / width));
        },
        t0, dt, n);
}

// e^{-pi sigma t^2} on a symmetric grid.
inline SampledSignal gaussian(double sigma, std::size_t n = 1024, double half = 8.0)
{
    return SampledSignal::from_function([sigma](double t) { return cplx(std::exp(-pi * sigma * t * t)); },
                                        -half, 2 * half / static_cast<double>(n - 1), n);
}

inline cvec random_samples(std::uint32_t seed, std::size_t n)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    cvec v(n);
    for (auto& x : v)
        x = {nd(rng), nd(rng)};
    return v;
}

inline double rel_l2(const cvec& a, const cvec& b)
{
    cvec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = a[i] - b[i];
    return l2_norm(d) / l2_norm(b);
}

inline double max_rel(const cvec& a, const cvec& b)
{
    double d = 0, m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
        m = std::max(m, std::abs(b[i]));
    }
    return m > 0 ? d / m : d;
}

} // namespace fixture
