// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Special affine Fourier transform: kernel, forward and inverse transforms,
// and the chirp-weighted convolution that it diagonalizes.

#pragma once

#include "sast/core.hpp"
#include "sast/fft.hpp"

namespace sast {

struct SaftSpectrum {
    cvec values;
    FreqAxis axis;
    SaftParams params;

    double w(std::size_t k) const { return axis.at(k); }
};

// K_N(t, w) = K_B exp{(i/2B)(A t^2 + 2t(p - w) - 2w(Dp - Bq) + D(w^2 + p^2))}
inline cplx saft_kernel(double t, double w, const SaftParams& N)
{
    double ph = (N.A * t * t + 2.0 * t * (N.p - w) - 2.0 * w * (N.D * N.p - N.B * N.q) +
                 N.D * (w * w + N.p * N.p)) /
                (2.0 * N.B);
    return N.kb() * std::polar(1.0, ph);
}

enum class Path { direct, fast };

namespace detail {

// The kernel splits as chirp(t) * exp(-i t w / B) * chirp(w); these are the
// two chirps, without K_B.
inline double saft_pre_phase(double t, const SaftParams& N)
{
    return (N.A * t * t + 2.0 * t * N.p) / (2.0 * N.B);
}

inline double saft_post_phase(double w, const SaftParams& N)
{
    return (-2.0 * w * (N.D * N.p - N.B * N.q) + N.D * (w * w + N.p * N.p)) / (2.0 * N.B);
}

} // namespace detail

// S_N[f](w_k) by trapezoid quadrature. The fast path evaluates the middle
// Fourier sum with a chirp-z transform, so any uniform w axis is exact.
inline SaftSpectrum saft_forward(const SampledSignal& f, const SaftParams& N, const FreqAxis& axis,
                                 Path path = Path::fast)
{
    axis.validate();
    f.validate();
    const std::size_t n = f.size();
    rvec wt = trapezoid_weights(n, f.dt);
    SaftSpectrum S{cvec(axis.count), axis, N};

    if (path == Path::direct) {
        parallel_for(axis.count, [&](std::size_t k) {
            double w = axis.at(k);
            cplx acc = 0;
            for (std::size_t j = 0; j < n; ++j)
                acc += wt[j] * f.samples[j] * saft_kernel(f.t(j), w, N);
            S.values[k] = acc;
        });
        return S;
    }

    cvec g(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = f.t(j);
        double jd = static_cast<double>(j) * f.dt;
        g[j] = wt[j] * f.samples[j] *
               std::polar(1.0, detail::saft_pre_phase(t, N) - jd * axis.w0 / N.B);
    }
    cvec X = fft::chirp_z(g, f.dt * axis.dw / N.B, axis.count);
    cplx kb = N.kb();
    for (std::size_t k = 0; k < axis.count; ++k) {
        double w = axis.at(k);
        S.values[k] =
            kb * X[k] * std::polar(1.0, detail::saft_post_phase(w, N) - f.t0 * w / N.B);
    }
    return S;
}

// f(t) = int S(w) K_{N^-1}(w, t) dw on the requested time grid. This is the
// forward transform of the spectrum, read as a function of w, under N^-1.
inline SampledSignal saft_inverse(const SaftSpectrum& S, double t0, double dt, std::size_t n,
                                  Path path = Path::fast)
{
    SampledSignal spec(S.values, S.axis.w0, S.axis.dw);
    FreqAxis taxis{t0, dt, n};
    const SaftParams& N = S.params;
    SaftParams M = N.inverse();
    SaftSpectrum r = saft_forward(spec, M, taxis, path);
    // With offsets, S_{N^-1} S_N f = exp{(i/2B)(D p^2 - A p'^2)} f, p' = Bq - Dp.
    cplx fix = std::polar(1.0, (N.A * M.p * M.p - N.D * N.p * N.p) / (2.0 * N.B));
    for (auto& v : r.values)
        v *= fix;
    return SampledSignal(std::move(r.values), t0, dt);
}

// Rectangle-rule convolution on the sample grid:
// (f *_N g)(b) = K_B int f(t) g(b - t) exp{(i/2B)(D p^2 - 2At(b - t))} dt.
// With t(b - t) = (b^2 - t^2 - (b - t)^2) / 2 this is an ordinary
// convolution of two chirped sequences followed by a chirp in b.
inline SampledSignal saft_convolve(const SampledSignal& f, const SampledSignal& g,
                                   const SaftParams& N)
{
    f.validate();
    g.validate();
    if (std::abs(f.dt - g.dt) > 1e-12 * f.dt)
        throw Error(Errc::grid_mismatch, "saft_convolve needs equal sample spacing");
    const double dt = f.dt;
    const double c = N.A / (2.0 * N.B);
    cvec x(f.size()), y(g.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        x[j] = f.samples[j] * std::polar(1.0, c * f.t(j) * f.t(j));
    for (std::size_t j = 0; j < g.size(); ++j)
        y[j] = g.samples[j] * std::polar(1.0, c * g.t(j) * g.t(j));
    cvec z = fft::convolve(x, y);
    double t0 = f.t0 + g.t0;
    cplx pre = N.kb() * std::polar(dt, N.D * N.p * N.p / (2.0 * N.B));
    for (std::size_t m = 0; m < z.size(); ++m) {
        double b = t0 + static_cast<double>(m) * dt;
        z[m] *= pre * std::polar(1.0, -c * b * b);
    }
    return SampledSignal(std::move(z), t0, dt);
}

// Multiplier in S_N[f *_N g](w) = exp{(i/2B)(2w(Dp - Bq) - Dw^2)} S_N f(w) S_N g(w).
inline cplx convolution_theorem_factor(double w, const SaftParams& N)
{
    return std::polar(1.0, (2.0 * w * (N.D * N.p - N.B * N.q) - N.D * w * w) / (2.0 * N.B));
}

inline double spectrum_energy(const SaftSpectrum& S)
{
    rvec sq(S.values.size());
    for (std::size_t k = 0; k < sq.size(); ++k)
        sq[k] = std::norm(S.values[k]);
    return trapezoid_integral(sq, S.axis.dw);
}

// A w axis wide enough to hold the SAFT image of a signal sampled at dt.
// The Fourier variable is w / B, so the Nyquist band maps to
// p + B [-pi/dt, pi/dt] (up to the chirp's own bandwidth, added as margin).
inline FreqAxis default_freq_axis(const SampledSignal& f, const SaftParams& N,
                                  std::size_t count = 0)
{
    double T = f.duration();
    double chirp_bw = std::abs(N.A / N.B) * std::max(std::abs(f.t0), std::abs(f.t0 + T));
    double half = std::abs(N.B) * (pi / f.dt + chirp_bw);
    if (count == 0)
        count = 2 * f.size() + 1;
    FreqAxis ax = FreqAxis::symmetric(half, count);
    ax.w0 += N.p;
    return ax;
}

} // namespace sast
