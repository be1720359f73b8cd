// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Special affine Stockwell transform: forward (direct and FFT), parameter
// special cases, admissibility, inversion, window geometry and the range
// (reproducing kernel) check.

#pragma once

#include <optional>

#include "sast/core.hpp"
#include "sast/fft.hpp"
#include "sast/saft.hpp"
#include "sast/stockwell.hpp"

namespace sast {

// ---------------------------------------------------------------------------
// Forward transform

// SAST(a, b) = (|a| / sqrt(2 pi)) K_B e^{iDp^2/2B}
//              int f(t) conj(Psi(a(t - b))) e^{-iat - (iA/B) t (b - t)} dt
// by trapezoid quadrature. a may be negative; this is the oracle for the
// fast path and the evaluator used by the parity and relation checks.
inline cplx sast_point(const SampledSignal& f, const WindowSpec& psi, const SaftParams& N, double a,
                       double b)
{
    rvec wt = trapezoid_weights(f.size(), f.dt);
    cplx acc = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        double t = f.t(j);
        double ph = -a * t - N.A * t * (b - t) / N.B;
        acc += wt[j] * f.samples[j] * std::conj(psi(a * (t - b))) * std::polar(1.0, ph);
    }
    return acc * std::abs(a) / std::sqrt(2.0 * pi) * N.kb() *
           std::polar(1.0, N.D * N.p * N.p / (2.0 * N.B));
}

namespace detail {

// One row of the fast path. Writing -(A/B) t (b - t) as
//   (A/2B) t^2 + (A/2B)(t - b)^2 - (A/2B) b^2
// turns the t integral into a plain correlation:
//   h(t)   = w_t f(t) e^{iAt^2/2B} e^{-iat}
//   k_a(s) = conj(Psi(a s)) e^{iAs^2/2B}
//   SAST(a, b) = (|a|/sqrt(2 pi)) K_B e^{iDp^2/2B} e^{-iAb^2/2B} sum_t h(t) k_a(t - b)
inline cvec sast_row_fast(const SampledSignal& f, const WindowSpec& psi, const SaftParams& N,
                          double a, const rvec& wt)
{
    const std::size_t n = f.size();
    const double c = N.A / (2.0 * N.B);
    cvec h(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = f.t(i);
        h[i] = wt[i] * f.samples[i] * std::polar(1.0, c * t * t - a * t);
    }
    std::size_t M = kernel_half_width(psi, a, f.dt, n);
    cvec kk(2 * M + 1);
    for (std::size_t m = 0; m <= 2 * M; ++m) {
        double s = (static_cast<double>(m) - static_cast<double>(M)) * f.dt;
        kk[m] = std::conj(psi(a * s)) * std::polar(1.0, c * s * s);
    }
    cvec row = correlate(h, kk, M);
    cplx pre = std::abs(a) / std::sqrt(2.0 * pi) * N.kb() *
               std::polar(1.0, N.D * N.p * N.p / (2.0 * N.B));
    for (std::size_t i = 0; i < n; ++i) {
        double b = f.t(i);
        row[i] *= pre * std::polar(1.0, -c * b * b);
    }
    return row;
}

} // namespace detail

inline TfrGrid sast_forward(const SampledSignal& f, const WindowSpec& psi, const SaftParams& N,
                            const rvec& scales, const BAxis& bax, Path path = Path::fast,
                            TransformTag tag = TransformTag::SAST)
{
    f.validate();
    TfrGrid G = detail::make_grid(f, scales, bax, psi, N, tag);
    rvec wt = trapezoid_weights(f.size(), f.dt);
    parallel_for(scales.size(), [&](std::size_t j) {
        double a = scales[j];
        if (path == Path::direct) {
            for (std::size_t k = 0; k < bax.count; ++k)
                G.at(j, k) = sast_point(f, psi, N, a, G.translations[k]);
            return;
        }
        cvec row = detail::sast_row_fast(f, psi, N, a, wt);
        for (std::size_t k = 0; k < bax.count; ++k)
            G.at(j, k) = row[bax.index(k)];
    });
    return G;
}

inline TfrGrid sast_forward(const SampledSignal& f, const WindowSpec& psi, const SaftParams& N,
                            const rvec& scales, Path path = Path::fast)
{
    return sast_forward(f, psi, N, scales, BAxis::full(f), path);
}

// ---------------------------------------------------------------------------
// Parameter special cases

enum class SpecialVariant { LCST, FRST, FRESNEL };

struct SpecialParams {
    double A = 1, B = 1, C = 0, D = 1; // LCST matrix
    double theta = pi / 2;             // FRST angle
    double fresnel_b = 1;              // FRESNEL B
};

inline SaftParams special_params(SpecialVariant v, const SpecialParams& sp)
{
    switch (v) {
    case SpecialVariant::LCST: return SaftParams(sp.A, sp.B, sp.C, sp.D, 0, 0);
    case SpecialVariant::FRST: {
        double s = std::sin(sp.theta);
        // theta = n pi leaves B = sin(theta) at rounding level.
        if (std::abs(s) < 1e-12)
            throw Error(Errc::degenerate_angle, "theta is an integer multiple of pi");
        double c = std::cos(sp.theta);
        return SaftParams(c, s, -s, c, 0, 0);
    }
    case SpecialVariant::FRESNEL: return SaftParams(1, sp.fresnel_b, 0, 1, 0, 0);
    }
    throw Error(Errc::invalid_input, "unknown variant");
}

inline TfrGrid sast_special(const SampledSignal& f, const WindowSpec& psi, SpecialVariant v,
                            const SpecialParams& sp, const rvec& scales, const BAxis& bax,
                            Path path = Path::fast)
{
    static constexpr TransformTag tags[] = {TransformTag::LCST, TransformTag::FRST,
                                            TransformTag::FRESNEL};
    return sast_forward(f, psi, special_params(v, sp), scales, bax, path,
                        tags[static_cast<int>(v)]);
}

// ---------------------------------------------------------------------------
// Admissibility

// int Psi(u) e^{-i chirp u^2} e^{i xi u} du. Closed form for the Gaussian
// windows, trapezoid on the sample grid otherwise.
inline cplx chirped_window_ft(const WindowSpec& psi, double chirp, double xi)
{
    switch (psi.kind) {
    case WindowKind::gaussian_pi:
    case WindowKind::gaussian_dgs: {
        double re = psi.kind == WindowKind::gaussian_pi ? pi
                                                        : 1.0 / (2.0 * psi.delta_gs * psi.delta_gs);
        cplx amp = psi.kind == WindowKind::gaussian_pi ? cplx(1.0)
                                                       : cplx(1.0 / std::sqrt(2.0 * pi * psi.delta_gs));
        cplx alpha(re, chirp);
        return psi.gain * amp * std::sqrt(pi / alpha) * std::exp(-xi * xi / (4.0 * alpha));
    }
    case WindowKind::sampled: {
        cplx acc = 0;
        rvec w = trapezoid_weights(psi.samples.size(), psi.dt);
        for (std::size_t j = 0; j < psi.samples.size(); ++j) {
            double u = psi.t0 + static_cast<double>(j) * psi.dt;
            acc += w[j] * psi.samples[j] * std::polar(1.0, xi * u - chirp * u * u);
        }
        return psi.gain * acc;
    }
    }
    return 0.0;
}

// H_a(v) = S_N[ e^{i{y(1 - (1 - 1/a)p/B) - (A y^2 / 2B)(1 + 1/a^2)}} Psi(y) ](v).
// The two t^2 chirps combine to -A/(2B a^2) and the linear terms to
// xi = 1 + p/(aB) - v/B, leaving a chirped Fourier integral of Psi times
// K_B and a v-only phase.
inline cplx modulated_window_saft(const WindowSpec& psi, const SaftParams& N, double a, double v)
{
    double xi = 1.0 + N.p / (a * N.B) - v / N.B;
    double chirp = N.A / (2.0 * N.B * a * a);
    return N.kb() * std::polar(1.0, detail::saft_post_phase(v, N)) *
           chirped_window_ft(psi, chirp, xi);
}

struct AdmissibilityReport {
    double c_psi = 0;
    std::vector<std::pair<double, double>> per_frequency; // (w, c(w))
    double max_relative_spread = 0;
    bool truncation_warning = false;
    double tail_fraction = 0; // share of the last decade of scales, worst probe
};

// c(w) = int |H_a(w/a)|^2 da over the given scale axis, for every probe w;
// c_psi is their mean.
inline AdmissibilityReport admissibility_constant(const WindowSpec& psi, const SaftParams& N,
                                                  const rvec& scales, const rvec& w_probes)
{
    check_scales(scales);
    if (w_probes.empty())
        throw Error(Errc::invalid_input, "no probe frequencies");
    rvec wa = trapezoid_weights(scales);
    double a_tail = scales.back() / 10.0;
    AdmissibilityReport rep;
    rep.per_frequency.resize(w_probes.size());
    rvec tails(w_probes.size());
    parallel_for(w_probes.size(), [&](std::size_t i) {
        double w = w_probes[i];
        double tot = 0, tail = 0;
        for (std::size_t j = 0; j < scales.size(); ++j) {
            double a = scales[j];
            double v = wa[j] * std::norm(modulated_window_saft(psi, N, a, w / a));
            tot += v;
            if (a >= a_tail)
                tail += v;
        }
        rep.per_frequency[i] = {w, tot};
        tails[i] = tot > 0 ? tail / tot : 0.0;
    });
    double sum = 0, lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < w_probes.size(); ++i) {
        double c = rep.per_frequency[i].second;
        sum += c;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        rep.tail_fraction = std::max(rep.tail_fraction, tails[i]);
    }
    rep.c_psi = sum / static_cast<double>(w_probes.size());
    if (!(rep.c_psi > 1e-12))
        throw Error(Errc::not_admissible, "scale integral vanishes");
    rep.max_relative_spread = (hi - lo) / rep.c_psi;
    rep.truncation_warning = rep.tail_fraction > 0.01;
    return rep;
}

// Probe frequencies spanning where |S_N f|^2 exceeds rel_floor of its peak.
inline rvec probe_axis_for(const SampledSignal& f, const SaftParams& N, std::size_t count = 17,
                           double rel_floor = 1e-4)
{
    FreqAxis ax = default_freq_axis(f, N, 4 * f.size() + 1);
    SaftSpectrum S = saft_forward(f, N, ax);
    double peak = 0;
    for (const auto& v : S.values)
        peak = std::max(peak, std::norm(v));
    if (!(peak > 0))
        throw Error(Errc::invalid_signal, "zero signal has no spectral support");
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t k = 0; k < ax.count; ++k)
        if (std::norm(S.values[k]) > rel_floor * peak) {
            lo = std::min(lo, ax.at(k));
            hi = std::max(hi, ax.at(k));
        }
    return linspace(lo, hi, count);
}

// ---------------------------------------------------------------------------
// Inversion

// f(t) = (sqrt(2 pi) / C) int int SAST(a, b) Psi_{N,a,b}(t) da db. Per scale
// the b sum is a convolution of SAST(a, b) e^{iAb^2/2B} with
// m_a(s) = Psi(a s) e^{-iAs^2/2B}, then
// f += w_a |a| conj(K_B) e^{-iDp^2/2B} e^{iat} e^{-iAt^2/2B} (...)(t).
inline SampledSignal sast_inverse(const TfrGrid& G, const WindowSpec& psi, double c_psi)
{
    G.validate();
    if (!(c_psi > 0))
        throw Error(Errc::not_admissible, "admissibility constant is not positive");
    if (G.tag == TransformTag::ST || G.tag == TransformTag::SASWD || !(G.window == psi))
        throw Error(Errc::provenance, "grid was not produced by sast_forward with this window");
    if (G.src_n == 0)
        throw Error(Errc::provenance, "grid carries no source sample grid");
    const SaftParams& N = G.params;
    const std::size_t n = G.src_n;
    const double dt = G.src_dt;
    const double c = N.A / (2.0 * N.B);
    rvec wa = trapezoid_weights(G.scales);
    rvec wb = trapezoid_weights(G.cols(), dt * static_cast<double>(G.baxis.stride));
    cplx pre = std::conj(N.kb()) * std::polar(1.0, -N.D * N.p * N.p / (2.0 * N.B));
    std::vector<cvec> rows(G.rows());

    parallel_for(G.rows(), [&](std::size_t j) {
        double a = G.scales[j];
        cvec g(n, 0.0);
        for (std::size_t k = 0; k < G.cols(); ++k) {
            double b = G.translations[k];
            g[G.baxis.index(k)] = wb[k] * G.at(j, k) * std::polar(1.0, c * b * b);
        }
        std::size_t M = detail::kernel_half_width(psi, a, dt, n);
        cvec mm(2 * M + 1);
        for (std::size_t m = 0; m <= 2 * M; ++m) {
            double s = (static_cast<double>(m) - static_cast<double>(M)) * dt;
            mm[m] = psi(a * s) * std::polar(1.0, -c * s * s);
        }
        cvec r = detail::convolve_centered(g, mm, M);
        for (std::size_t i = 0; i < n; ++i) {
            double t = G.src_t0 + static_cast<double>(i) * dt;
            r[i] *= wa[j] * a * pre * std::polar(1.0, a * t - c * t * t);
        }
        rows[j] = std::move(r);
    });

    cvec out(n, 0.0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < n; ++i)
            out[i] += r[i];
    double s = std::sqrt(2.0 * pi) / c_psi;
    for (auto& v : out)
        v *= s;
    return SampledSignal(std::move(out), G.src_t0, dt);
}

// Complex s minimizing ||s r - f||, i.e. <r, f> / <r, r>.
inline cplx best_fit_scalar(const cvec& r, const cvec& f)
{
    cplx num = 0;
    double den = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        num += std::conj(r[i]) * f[i];
        den += std::norm(r[i]);
    }
    return den > 0 ? num / den : cplx(0.0);
}

// ---------------------------------------------------------------------------
// Window geometry

// Moments of |Psi_{N,a,b}(t)|^2; the N-dependent factors have unit modulus
// apart from |K_B|, which cancels in the ratios.
inline WindowGeometry window_geometry_time(const WindowSpec& psi, const SaftParams& N, double a,
                                           double b, std::size_t points = 8001)
{
    if (!(a > 0))
        throw Error(Errc::invalid_scale, "scale must be positive");
    double r = psi.support_radius() / a;
    double lo = b - r, hi = b + r;
    if (psi.kind == WindowKind::sampled) {
        double u0 = psi.t0, u1 = psi.t0 + psi.dt * static_cast<double>(psi.samples.size() - 1);
        lo = b + u0 / a;
        hi = b + u1 / a;
    }
    rvec x = linspace(lo, hi, points), d(points);
    for (std::size_t i = 0; i < points; ++i)
        d[i] = std::norm(affine_atom(psi, N, a, b, x[i]));
    return moments_of(x, d);
}

// Moments of |H_h(w / a)|^2 over w, with H_h the SAFT of the modulated
// window built for scale h. The window of the transform at scale a is h = a;
// it carries an a-dependent chirp -A/(2B a^2) whenever A != 0. Passing a
// fixed h (h_scale) instead measures the scaled argument of one fixed H.
inline WindowGeometry window_geometry_freq(const WindowSpec& psi, const SaftParams& N, double a,
                                           std::optional<double> h_scale = {},
                                           std::size_t points = 8001)
{
    if (!(a > 0))
        throw Error(Errc::invalid_scale, "scale must be positive");
    const double h = h_scale.value_or(a);
    if (!(h > 0))
        throw Error(Errc::invalid_scale, "scale must be positive");
    // Spread of the chirped window spectrum in xi.
    double half;
    if (psi.kind == WindowKind::sampled) {
        half = pi / psi.dt;
    } else {
        double re = psi.kind == WindowKind::gaussian_pi ? pi
                                                        : 1.0 / (2.0 * psi.delta_gs * psi.delta_gs);
        cplx alpha(re, N.A / (2.0 * N.B * h * h));
        double sigma = 1.0 / std::sqrt(2.0 * std::real(1.0 / alpha));
        half = 14.0 * sigma;
    }
    // xi = 1 + p/(hB) - v/B, so v = B (1 + p/(hB) - xi) and w = a v.
    double vc = N.B * (1.0 + N.p / (h * N.B));
    rvec w = linspace(a * (vc - std::abs(N.B) * half), a * (vc + std::abs(N.B) * half), points);
    rvec d(points);
    for (std::size_t i = 0; i < points; ++i)
        d[i] = std::norm(modulated_window_saft(psi, N, h, w[i] / a));
    return moments_of(w, d);
}

// Time and frequency radii of the bare window and of H, and the resulting
// tile area 4 Delta_H Delta_Psi.
struct JointSpread {
    double delta_psi = 0;
    double delta_h = 0;
    double area = 0;
};

inline JointSpread joint_spread(const WindowSpec& psi, const SaftParams& N, double a)
{
    JointSpread js;
    js.delta_psi = window_geometry_time(psi, N, 1.0, 0.0).radius;
    js.delta_h = window_geometry_freq(psi, N, a).radius / a;
    js.area = 4.0 * js.delta_h * js.delta_psi;
    return js;
}

// ---------------------------------------------------------------------------
// Range check

// The right side C^{-1} int int G(a, b) <Psi_{N,a,b}, Psi_{N,c,d}> da db is
// evaluated as (1/sqrt(2 pi)) <g, Psi_{N,c,d}> with g the inverse image of G
// (the two differ only in the order of the sums). Probes are (row, column)
// indices; returns max |G(c, d) - rhs| / max |G|.
inline double reproducing_kernel_check(const TfrGrid& G, const WindowSpec& psi,
                                       double c_psi,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& probes)
{
    double gmax = G.max_abs();
    if (gmax == 0)
        return 0.0;
    SampledSignal g = sast_inverse(G, psi, c_psi);
    double dev = 0;
    for (auto [j, k] : probes) {
        if (j >= G.rows() || k >= G.cols())
            throw Error(Errc::invalid_input, "probe outside the grid");
        cplx rhs = sast_point(g, psi, G.params, G.scales[j], G.translations[k]);
        dev = std::max(dev, std::abs(G.at(j, k) - rhs));
    }
    return dev / gmax;
}

} // namespace sast
