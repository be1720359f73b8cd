// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// LFM chirp workflows: synthesis, ridge tracking, method comparison and
// echo suppression by masking in the SAST plane.
//
// Units. Chirps are specified in Hz, e^{i 2 pi (alpha t + beta t^2)}, while
// every transform uses angular frequency. At this boundary an instantaneous
// frequency f_i(t) = alpha + 2 beta t becomes omega(t) = 2 pi f_i(t), and a
// SAST ridge sits at the scale
//     a*(b) = omega(b) + (A / B) b,
// because the atom's chirp e^{(iA/B) t (b - t)} shifts the local frequency
// by (A / B) b. For the classical matrix a* is omega itself.

#pragma once

#include <optional>

#include "sast/analysis.hpp"
#include "sast/core.hpp"
#include "sast/stockwell.hpp"
#include "sast/transform.hpp"

namespace sast::chirp {

struct LfmComponent {
    double alpha = 0; // Hz
    double beta = 0;  // Hz / s
    cplx amplitude{1.0, 0.0};
};

struct LfmSpec {
    std::vector<LfmComponent> components;
    double duration = 1;
    double sample_rate = 1024;

    std::size_t samples() const
    {
        return static_cast<std::size_t>(std::llround(duration * sample_rate));
    }

    void validate() const
    {
        if (components.empty())
            throw Error(Errc::invalid_input, "LFM spec without components");
        if (!(duration > 0) || !(sample_rate > 0))
            throw Error(Errc::invalid_input, "duration and sample rate must be positive");
        double fmax = 0;
        for (const auto& c : components)
            fmax = std::max({fmax, std::abs(c.alpha), std::abs(c.alpha + 2.0 * c.beta * duration)});
        if (!(sample_rate > 2.0 * fmax))
            throw Error(Errc::alias, "sample rate " + std::to_string(sample_rate) +
                                         " Hz does not exceed twice the peak instantaneous frequency " +
                                         std::to_string(fmax) + " Hz");
    }
};

struct EchoSpec {
    double delay = 0;
    cplx attenuation{0.5, 0.0};

    void validate(double duration) const
    {
        if (!(delay >= 0) || !(delay < duration))
            throw Error(Errc::invalid_input, "echo delay must lie in [0, duration)");
        if (std::abs(attenuation) > 1.0)
            throw Error(Errc::invalid_input, "echo attenuation must satisfy |att| <= 1");
    }
};

inline double instantaneous_hz(const LfmComponent& c, double t) { return c.alpha + 2.0 * c.beta * t; }

inline double instantaneous_angular(const LfmComponent& c, double t)
{
    return 2.0 * pi * instantaneous_hz(c, t);
}

// Scale at which the SAST with matrix N peaks for this component at time b.
inline double ridge_scale(const LfmComponent& c, const SaftParams& N, double b)
{
    return instantaneous_angular(c, b) + N.A / N.B * b;
}

// sum_r amp_r e^{i 2 pi (alpha_r t + beta_r t^2)}, t = j / rate, j = 0..n-1.
// An echo, when given, adds att * f(t - delay) for t >= delay (the delayed
// copy is evaluated analytically, not by resampling).
inline SampledSignal synth_lfm(const LfmSpec& spec, const std::optional<EchoSpec>& echo = {})
{
    spec.validate();
    if (echo)
        echo->validate(spec.duration);
    const std::size_t n = spec.samples();
    const double dt = 1.0 / spec.sample_rate;
    auto clean = [&](double t) {
        cplx v = 0;
        for (const auto& c : spec.components)
            v += c.amplitude * std::polar(1.0, 2.0 * pi * (c.alpha * t + c.beta * t * t));
        return v;
    };
    cvec s(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = static_cast<double>(j) * dt;
        s[j] = clean(t);
        if (echo && t >= echo->delay)
            s[j] += echo->attenuation * clean(t - echo->delay);
    }
    return SampledSignal(std::move(s), 0.0, dt);
}

// ---------------------------------------------------------------------------
// Ridges

struct RidgePoint {
    double b = 0;
    double a = 0;
    std::size_t row = 0;
    std::size_t col = 0;
};

// Per column, the scale of maximum modulus (first maximum wins, i.e. the
// smaller scale on ties). All-zero columns carry no ridge and are skipped.
inline std::vector<RidgePoint> ridge_extract(const TfrGrid& G)
{
    std::vector<RidgePoint> out;
    for (std::size_t k = 0; k < G.cols(); ++k) {
        double best = 0;
        std::size_t arg = 0;
        for (std::size_t j = 0; j < G.rows(); ++j) {
            double m = std::abs(G.at(j, k));
            if (m > best) {
                best = m;
                arg = j;
            }
        }
        if (best > 0)
            out.push_back({G.translations[k], G.scales[arg], arg, k});
    }
    return out;
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    std::size_t points = 0;
};

// Least-squares a* = slope b + intercept over ridge points with b in [lo, hi].
inline LineFit fit_ridge(const std::vector<RidgePoint>& ridge, double lo = -INFINITY,
                         double hi = INFINITY)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& p : ridge) {
        if (p.b < lo || p.b > hi)
            continue;
        sx += p.b;
        sy += p.a;
        sxx += p.b * p.b;
        sxy += p.b * p.a;
        ++n;
    }
    if (n < 2)
        throw Error(Errc::invalid_input, "need at least two ridge points for a line fit");
    double dn = static_cast<double>(n);
    double den = dn * sxx - sx * sx;
    if (den == 0)
        throw Error(Errc::invalid_input, "ridge points share one b value");
    LineFit lf;
    lf.slope = (dn * sxy - sx * sy) / den;
    lf.intercept = (sy - lf.slope * sx) / dn;
    lf.points = n;
    return lf;
}

// Local maxima of |G| in column k above rel_floor of the column peak.
inline std::vector<std::size_t> column_peaks(const TfrGrid& G, std::size_t k, double rel_floor = 0.3)
{
    double peak = 0;
    for (std::size_t j = 0; j < G.rows(); ++j)
        peak = std::max(peak, std::abs(G.at(j, k)));
    std::vector<std::size_t> out;
    if (peak == 0)
        return out;
    for (std::size_t j = 1; j + 1 < G.rows(); ++j) {
        double m = std::abs(G.at(j, k));
        if (m > std::abs(G.at(j - 1, k)) && m >= std::abs(G.at(j + 1, k)) && m > rel_floor * peak)
            out.push_back(j);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Method comparison

// (sum |c|^4) / (sum |c|^2)^2; larger means more concentrated.
struct Concentration {
    double value = 0;
    bool defined = false;
};

inline Concentration concentration(const TfrGrid& G)
{
    double s2 = 0, s4 = 0;
    for (const auto& c : G.coeffs) {
        double e = std::norm(c);
        s2 += e;
        s4 += e * e;
    }
    if (!(s2 > 0))
        return {};
    return {s4 / (s2 * s2), true};
}

enum class MethodKind { STFT, ST, SAST };

struct MethodSpec {
    MethodKind kind = MethodKind::SAST;
    SaftParams params;
    WindowSpec window;
    double stft_sigma = 0.1; // seconds, Gaussian STFT window
    std::string label;
};

struct MethodResult {
    std::string label;
    TfrGrid grid;
    Concentration metric;
};

// STFT on the same (omega, b) axes: (1/sqrt(2 pi)) int f(t) g(t - b) e^{-i omega t} dt
// with g(t) = exp(-t^2 / (2 sigma^2)).
inline TfrGrid stft_forward(const SampledSignal& f, double sigma, const rvec& omegas,
                            const BAxis& bax)
{
    check_scales(omegas);
    bax.validate(f);
    const std::size_t n = f.size();
    rvec b(bax.count);
    for (std::size_t k = 0; k < bax.count; ++k)
        b[k] = f.t(bax.index(k));
    TfrGrid G(omegas, b);
    G.tag = TransformTag::ST;
    G.src_t0 = f.t0;
    G.src_dt = f.dt;
    G.src_n = n;
    G.baxis = bax;
    rvec wt = trapezoid_weights(n, f.dt);
    std::size_t M = std::min<std::size_t>(
        n - 1, static_cast<std::size_t>(std::ceil(8.6 * sigma / f.dt)) + 1);
    cvec kk(2 * M + 1);
    for (std::size_t m = 0; m <= 2 * M; ++m) {
        double s = (static_cast<double>(m) - static_cast<double>(M)) * f.dt;
        kk[m] = std::exp(-s * s / (2.0 * sigma * sigma));
    }
    parallel_for(omegas.size(), [&](std::size_t j) {
        cvec h(n);
        for (std::size_t i = 0; i < n; ++i)
            h[i] = wt[i] * f.samples[i] * std::polar(1.0, -omegas[j] * f.t(i));
        cvec c = sast::detail::correlate(h, kk, M);
        for (std::size_t k = 0; k < bax.count; ++k)
            G.at(j, k) = c[bax.index(k)] / std::sqrt(2.0 * pi);
    });
    return G;
}

inline std::vector<MethodResult> compare_methods(const SampledSignal& f,
                                                 const std::vector<MethodSpec>& methods,
                                                 const rvec& scales, const BAxis& bax)
{
    if (methods.empty())
        throw Error(Errc::invalid_input, "no methods to compare");
    std::vector<MethodResult> out(methods.size());
    parallel_for(methods.size(), [&](std::size_t i) {
        const auto& m = methods[i];
        MethodResult r;
        switch (m.kind) {
        case MethodKind::STFT:
            r.label = m.label.empty() ? "STFT" : m.label;
            r.grid = stft_forward(f, m.stft_sigma, scales, bax);
            break;
        case MethodKind::ST:
            r.label = m.label.empty() ? "ST" : m.label;
            r.grid = st_forward(f, m.window, scales, bax);
            break;
        case MethodKind::SAST:
            r.label = m.label.empty() ? "SAST" : m.label;
            r.grid = sast_forward(f, m.window, m.params, scales, bax);
            break;
        }
        r.metric = concentration(r.grid);
        out[i] = std::move(r);
    });
    return out;
}

// Share of the total energy of a (scale x b) grid that falls between two
// ridge curves: per column, the scales within (lo + hi)/2 +- (hi - lo)/4.
// Cross terms of a quadratic distribution sit in this band; a linear
// transform leaves it nearly empty.
template <class R1, class R2>
double inter_ridge_fraction(const TfrGrid& G, R1&& ridge1, R2&& ridge2)
{
    double band = 0, total = 0;
    for (std::size_t k = 0; k < G.cols(); ++k) {
        double r1 = ridge1(G.translations[k]), r2 = ridge2(G.translations[k]);
        double lo = std::min(r1, r2), hi = std::max(r1, r2);
        double mid = 0.5 * (lo + hi), hw = 0.25 * (hi - lo);
        for (std::size_t j = 0; j < G.rows(); ++j) {
            double e = std::norm(G.at(j, k));
            total += e;
            if (G.scales[j] > mid - hw && G.scales[j] < mid + hw)
                band += e;
        }
    }
    return total > 0 ? band / total : 0.0;
}

// Transpose of a (t x u) distribution into the (u x t) layout of the
// transform grids, so the same band measure applies to both.
inline TfrGrid as_scale_grid(const TfrGrid& W)
{
    TfrGrid G(W.translations, W.scales);
    for (std::size_t r = 0; r < W.rows(); ++r)
        for (std::size_t l = 0; l < W.cols(); ++l)
            G.at(l, r) = W.at(r, l);
    G.tag = W.tag;
    G.params = W.params;
    return G;
}

// ---------------------------------------------------------------------------
// Echo filtering

// 1 within +-halfwidth scale bins of the expected ridge scale, else 0.
template <class RidgeFn>
rvec ridge_mask(const TfrGrid& G, RidgeFn&& ridge_of_b, std::size_t halfwidth)
{
    rvec mask(G.rows() * G.cols(), 0.0);
    for (std::size_t k = 0; k < G.cols(); ++k) {
        double target = ridge_of_b(G.translations[k]);
        std::size_t best = 0;
        for (std::size_t j = 1; j < G.rows(); ++j)
            if (std::abs(G.scales[j] - target) < std::abs(G.scales[best] - target))
                best = j;
        std::size_t lo = best > halfwidth ? best - halfwidth : 0;
        std::size_t hi = std::min(G.rows() - 1, best + halfwidth);
        for (std::size_t j = lo; j <= hi; ++j)
            mask[j * G.cols() + k] = 1.0;
    }
    return mask;
}

// sast_forward, pointwise mask, sast_inverse.
inline SampledSignal echo_filter(const SampledSignal& s_in, const rvec& mask, const WindowSpec& psi,
                                 const SaftParams& N, double c_psi, const rvec& scales,
                                 const BAxis& bax)
{
    TfrGrid G = sast_forward(s_in, psi, N, scales, bax);
    if (mask.size() != G.coeffs.size())
        throw Error(Errc::grid_mismatch, "mask does not match the grid axes");
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!(mask[i] >= 0.0 && mask[i] <= 1.0))
            throw Error(Errc::invalid_input, "mask entries must lie in [0, 1]");
        G.coeffs[i] *= mask[i];
    }
    return sast_inverse(G, psi, c_psi);
}

// |<x, y>| / (||x|| ||y||)
inline double normalized_correlation(const cvec& x, const cvec& y)
{
    cplx ip = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        ip += std::conj(x[i]) * y[i];
    double d = l2_norm(x) * l2_norm(y);
    return d > 0 ? std::abs(ip) / d : 0.0;
}

// ---------------------------------------------------------------------------
// Effective bandwidth

// Radius of |f|^2 about its centre.
inline double time_spread(const SampledSignal& f)
{
    if (!(signal_energy(f) > 0))
        throw Error(Errc::invalid_signal, "zero signal has no time spread");
    rvec x = f.time_axis(), d(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        d[j] = std::norm(f.samples[j]);
    return moments_of(x, d).radius;
}

// B^2 C / (4 T^2)
inline double effective_bandwidth_bound(const SampledSignal& f, const SaftParams& N, double c_psi)
{
    double T = time_spread(f);
    return N.B * N.B * c_psi / (4.0 * T * T);
}

} // namespace sast::chirp
