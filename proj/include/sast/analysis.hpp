// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Scaled Wigner distribution with affine parameters, its expression through
// SAST coefficients, and the Heisenberg and logarithmic uncertainty checks.

#pragma once

#include "sast/core.hpp"
#include "sast/fft.hpp"
#include "sast/saft.hpp"
#include "sast/transform.hpp"

namespace sast {

struct SaswdParams {
    SaftParams params;
    double k = 1;

    void validate() const
    {
        if (!(k > 0) || !std::isfinite(k))
            throw Error(Errc::invalid_input, "SASWD scale factor k must be positive");
    }
};

// Band-limited 2x upsampling (periodic sinc): out[2j] = x[j] and out[2j+1]
// is the half-sample value. An even-length Nyquist bin is split evenly.
inline cvec upsample2(const cvec& x)
{
    const std::size_t n = x.size();
    if (n < 2)
        return cvec(x.begin(), x.end());
    cvec X = fft::forward(x), Y(2 * n, 0.0);
    std::size_t pos = (n + 1) / 2; // bins 0..pos-1 are non-negative
    for (std::size_t i = 0; i < pos; ++i)
        Y[i] = X[i];
    for (std::size_t i = n / 2 + 1; i < n; ++i)
        Y[n + i] = X[i];
    if (n % 2 == 0) {
        Y[n / 2] = 0.5 * X[n / 2];
        Y[n + n / 2] = 0.5 * X[n / 2];
    }
    cvec y = fft::inverse(Y);
    for (auto& v : y)
        v *= 2.0;
    y.resize(2 * n - 1); // the last half sample would wrap around
    return y;
}

namespace detail {

struct HalfGrid {
    cvec f2, g2;
};

inline HalfGrid half_grid(const SampledSignal& f, const SampledSignal& g)
{
    if (f.size() != g.size() || std::abs(f.dt - g.dt) > 1e-12 * f.dt ||
        std::abs(f.t0 - g.t0) > 1e-12 * std::max(1.0, std::abs(f.t0)))
        throw Error(Errc::grid_mismatch, "SASWD needs f and g on the same grid");
    return {upsample2(f.samples), upsample2(g.samples)};
}

} // namespace detail

// W(t, u) = (1 / 2 pi B) int f(t + k tau/2) conj(g(t - k tau/2)) e^{i tau (Akt + kp - u)/B} dtau.
// With sigma = k tau / 2 on the half-sample grid sigma_m = m dt / 2:
//   W = (dt / (2 pi B k)) sum_m f2[2i + m] conj(g2[2i - m]) e^{i m dt (Akt + kp - u) / (Bk)}.
inline cplx saswd_point(const detail::HalfGrid& hg, const SampledSignal& f, const SaswdParams& sp,
                        std::size_t ti, double u)
{
    const SaftParams& N = sp.params;
    const double k = sp.k;
    const double t = f.t(ti);
    const long last = static_cast<long>(hg.f2.size()) - 1;
    const long c = 2 * static_cast<long>(ti);
    const long M = std::min(c, last - c);
    const double theta = f.dt * (N.A * k * t + k * N.p - u) / (N.B * k);
    cplx acc = 0;
    for (long m = -M; m <= M; ++m)
        acc += hg.f2[static_cast<std::size_t>(c + m)] * std::conj(hg.g2[static_cast<std::size_t>(c - m)]) *
               std::polar(1.0, static_cast<double>(m) * theta);
    return acc * f.dt / (2.0 * pi * N.B * k);
}

inline cplx saswd_point(const SampledSignal& f, const SampledSignal& g, const SaswdParams& sp,
                        std::size_t ti, double u)
{
    sp.validate();
    if (ti >= f.size())
        throw Error(Errc::invalid_input, "time index outside the signal");
    return saswd_point(detail::half_grid(f, g), f, sp, ti, u);
}

// Grid over t (rows, sample indices t_idx) and a uniform u axis (columns).
// Each row is one chirp-z transform over the lag index.
inline TfrGrid saswd(const SampledSignal& f, const SampledSignal& g, const SaswdParams& sp,
                     const std::vector<std::size_t>& t_idx, const FreqAxis& u_axis,
                     Path path = Path::fast)
{
    sp.validate();
    u_axis.validate();
    auto hg = detail::half_grid(f, g);
    rvec trow(t_idx.size()), ucol(u_axis.count);
    for (std::size_t r = 0; r < t_idx.size(); ++r) {
        if (t_idx[r] >= f.size())
            throw Error(Errc::invalid_input, "time index outside the signal");
        trow[r] = f.t(t_idx[r]);
    }
    for (std::size_t l = 0; l < u_axis.count; ++l)
        ucol[l] = u_axis.at(l);
    TfrGrid W(trow, ucol);
    W.tag = TransformTag::SASWD;
    W.params = sp.params;
    W.src_t0 = f.t0;
    W.src_dt = f.dt;
    W.src_n = f.size();
    const SaftParams& N = sp.params;
    const double k = sp.k;
    const long last = static_cast<long>(hg.f2.size()) - 1;

    parallel_for(t_idx.size(), [&](std::size_t r) {
        if (path == Path::direct) {
            for (std::size_t l = 0; l < u_axis.count; ++l)
                W.at(r, l) = saswd_point(hg, f, sp, t_idx[r], ucol[l]);
            return;
        }
        const double t = trow[r];
        const long c = 2 * static_cast<long>(t_idx[r]);
        const long M = std::min(c, last - c);
        // phase(m, l) = m (theta0 - l delta)
        const double theta0 = f.dt * (N.A * k * t + k * N.p - u_axis.w0) / (N.B * k);
        const double delta = f.dt * u_axis.dw / (N.B * k);
        cvec x(static_cast<std::size_t>(2 * M + 1));
        for (long m = -M; m <= M; ++m)
            x[static_cast<std::size_t>(m + M)] =
                hg.f2[static_cast<std::size_t>(c + m)] * std::conj(hg.g2[static_cast<std::size_t>(c - m)]) *
                std::polar(1.0, static_cast<double>(m) * theta0);
        cvec X = fft::chirp_z(x, delta, u_axis.count);
        const double scale = f.dt / (2.0 * pi * N.B * k);
        for (std::size_t l = 0; l < u_axis.count; ++l)
            W.at(r, l) = X[l] * std::polar(scale, static_cast<double>(M) * static_cast<double>(l) * delta);
    });
    return W;
}

// Same distribution on an arbitrary (e.g. log-spaced) u axis, one direct
// lag sum per point.
inline TfrGrid saswd(const SampledSignal& f, const SampledSignal& g, const SaswdParams& sp,
                     const std::vector<std::size_t>& t_idx, const rvec& u_values)
{
    sp.validate();
    if (u_values.empty())
        throw Error(Errc::invalid_input, "empty u axis");
    auto hg = detail::half_grid(f, g);
    rvec trow(t_idx.size());
    for (std::size_t r = 0; r < t_idx.size(); ++r) {
        if (t_idx[r] >= f.size())
            throw Error(Errc::invalid_input, "time index outside the signal");
        trow[r] = f.t(t_idx[r]);
    }
    TfrGrid W(trow, u_values);
    W.tag = TransformTag::SASWD;
    W.params = sp.params;
    W.src_t0 = f.t0;
    W.src_dt = f.dt;
    W.src_n = f.size();
    parallel_for(t_idx.size(), [&](std::size_t r) {
        for (std::size_t l = 0; l < u_values.size(); ++l)
            W.at(r, l) = saswd_point(hg, f, sp, t_idx[r], u_values[l]);
    });
    return W;
}

// ---------------------------------------------------------------------------
// SASWD through SAST coefficients

enum class RelationForm {
    // Re-derived from the translation and parity covariances: the reflected
    // signal g(2t - y) has coefficients
    //   e^{-2iat - (2i/B) A t (b - 2t)} SAST(M_{-2At/B} g)(-a, 2t - b).
    derived,
    // SAST(M_{2At/B} g)(-a, -(b + 2t)) with weight e^{-2it(a + Ab/B)}.
    // Agrees with `derived` only at t = 0.
    negated_shift,
};

// Evaluates
//   W(t, u) = (2 e^{-i(2/Bk)(3Akt + kp - u)t} / (B k C)) int int
//             SAST(M_{-2u/Bk} F)(a, b) conj(SAST(g')(-a, b')) e^{+-2it(a + Ab/B)} da db
// with F(y) = e^{i(2/B)(At + p)y} f(y), over the given scales and the
// signal's own sample grid for b. The t probe is a sample index.
inline cplx saswd_from_sast(const SampledSignal& f, const SampledSignal& g, const SaswdParams& sp,
                            const WindowSpec& psi, double c_psi, const rvec& scales,
                            std::size_t ti, double u, RelationForm form = RelationForm::derived)
{
    sp.validate();
    check_scales(scales);
    if (f.size() != g.size() || f.dt != g.dt || f.t0 != g.t0)
        throw Error(Errc::grid_mismatch, "relation needs f and g on the same grid");
    if (!(c_psi > 0))
        throw Error(Errc::not_admissible, "admissibility constant is not positive");
    const SaftParams& N = sp.params;
    const double k = sp.k;
    const double t = f.t(ti);
    const bool derived = form == RelationForm::derived;

    SampledSignal f1 = f, g1 = g;
    double mod_f = 2.0 * (N.A * k * t + k * N.p - u) / (N.B * k);
    double mod_g = (derived ? -2.0 : 2.0) * N.A * t / N.B;
    for (std::size_t j = 0; j < f.size(); ++j) {
        f1.samples[j] *= std::polar(1.0, mod_f * f.t(j));
        g1.samples[j] *= std::polar(1.0, mod_g * g.t(j));
    }
    TfrGrid G1 = sast_forward(f1, psi, N, scales);
    rvec wa = trapezoid_weights(scales);
    rvec wb = trapezoid_weights(f.size(), f.dt);

    rvec re(scales.size()), im(scales.size());
    parallel_for(scales.size(), [&](std::size_t j) {
        double a = scales[j];
        cplx row = 0;
        for (std::size_t kb = 0; kb < f.size(); ++kb) {
            double b = f.t(kb);
            double bb = derived ? 2.0 * t - b : -(b + 2.0 * t);
            double sgn = derived ? 1.0 : -1.0;
            cplx v = sast_point(g1, psi, N, -a, bb);
            row += wb[kb] * G1.at(j, kb) * std::conj(v) *
                   std::polar(1.0, sgn * 2.0 * t * (a + N.A * b / N.B));
        }
        re[j] = wa[j] * row.real();
        im[j] = wa[j] * row.imag();
    });
    cplx tot = 0;
    for (std::size_t j = 0; j < scales.size(); ++j)
        tot += cplx(re[j], im[j]);
    cplx pre = std::polar(2.0 / (N.B * k * c_psi),
                          -(2.0 / (N.B * k)) * (3.0 * N.A * k * t + k * N.p - u) * t);
    return pre * tot;
}

// ---------------------------------------------------------------------------
// Uncertainty principles

struct UcpReport {
    double lhs = 0;
    double rhs_bound = 0;
    double ratio = 0;
    bool passed = false;
};

// Gamma'(1/4) / Gamma(1/4) = -gamma - 3 ln 2 - pi / 2
inline double digamma_quarter()
{
    constexpr double euler_gamma = 0.57721566490153286060651209008240243;
    return -euler_gamma - 3.0 * std::log(2.0) - pi / 2.0;
}

namespace detail {

inline void require_nonzero(const SampledSignal& f)
{
    if (!(signal_energy(f) > 0))
        throw Error(Errc::invalid_signal, "zero signal gives a degenerate bound");
}

inline void check_tails(const SampledSignal& f, const SaftSpectrum& S)
{
    if (edge_energy_fraction(f) > 0.01)
        throw Error(Errc::moment_truncation, "more than 1% of the signal energy sits at the window edges");
    SampledSignal spec(S.values, S.axis.w0, S.axis.dw);
    if (edge_energy_fraction(spec) > 0.01)
        throw Error(Errc::moment_truncation, "more than 1% of the spectral energy sits at the axis edges");
}

struct UcpParts {
    TfrGrid G;
    SaftSpectrum S;
    double energy = 0;
};

inline UcpParts ucp_parts(const SampledSignal& f, const WindowSpec& psi, const SaftParams& N,
                          const rvec& scales)
{
    require_nonzero(f);
    UcpParts P;
    P.G = sast_forward(f, psi, N, scales);
    P.S = saft_forward(f, N, default_freq_axis(f, N, 4 * f.size() + 1));
    check_tails(f, P.S);
    P.energy = signal_energy(f);
    return P;
}

// int int weight(b) |G|^2 da db, ordered summation
template <class Wt>
double weighted_grid_energy(const TfrGrid& G, Wt&& weight)
{
    rvec wa = trapezoid_weights(G.scales);
    rvec wb = trapezoid_weights(G.cols(), G.db());
    double tot = 0;
    for (std::size_t j = 0; j < G.rows(); ++j) {
        double row = 0;
        for (std::size_t k = 0; k < G.cols(); ++k)
            row += wb[k] * weight(G.translations[k]) * std::norm(G.at(j, k));
        tot += wa[j] * row;
    }
    return tot;
}

template <class Wt>
double weighted_spectrum_energy(const SaftSpectrum& S, Wt&& weight)
{
    rvec v(S.values.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = weight(S.w(k)) * std::norm(S.values[k]);
    return trapezoid_integral(v, S.axis.dw);
}

inline UcpReport finish(double lhs, double rhs, bool ratio_test)
{
    UcpReport r;
    r.lhs = lhs;
    r.rhs_bound = rhs;
    r.ratio = lhs / rhs;
    r.passed = ratio_test ? r.ratio >= 1.0 - 1e-6 : lhs >= rhs;
    return r;
}

} // namespace detail

// [int int b^2 |SAST f|^2]^{1/2} [int w^2 |S_N f|^2]^{1/2} >= (|B| sqrt(C) / 2) ||f||^2
inline UcpReport heisenberg_check(const SampledSignal& f, const WindowSpec& psi,
                                  const SaftParams& N, double c_psi, const rvec& scales)
{
    auto P = detail::ucp_parts(f, psi, N, scales);
    double bm = detail::weighted_grid_energy(P.G, [](double b) { return b * b; });
    double wm = detail::weighted_spectrum_energy(P.S, [](double w) { return w * w; });
    double lhs = std::sqrt(bm) * std::sqrt(wm);
    double rhs = std::abs(N.B) * std::sqrt(c_psi) / 2.0 * P.energy;
    return detail::finish(lhs, rhs, true);
}

// int int ln|b| |SAST f|^2 + (C / sqrt(2 pi)) int ln|w| |S_N f|^2
//   >= (C / 2 pi) (psi(1/4) + ln|B|) ||f||^2
// The bin straddling 0 is dropped from both log moments.
inline UcpReport log_ucp_check(const SampledSignal& f, const WindowSpec& psi, const SaftParams& N,
                               double c_psi, const rvec& scales)
{
    auto P = detail::ucp_parts(f, psi, N, scales);
    double hb = P.G.db() / 2, hw = P.S.axis.dw / 2;
    double lb = detail::weighted_grid_energy(
        P.G, [hb](double b) { return std::abs(b) < hb ? 0.0 : std::log(std::abs(b)); });
    double lw = detail::weighted_spectrum_energy(
        P.S, [hw](double w) { return std::abs(w) < hw ? 0.0 : std::log(std::abs(w)); });
    double lhs = lb + c_psi / std::sqrt(2.0 * pi) * lw;
    double rhs = c_psi / (2.0 * pi) * (digamma_quarter() + std::log(std::abs(N.B))) * P.energy;
    return detail::finish(lhs, rhs, false);
}

} // namespace sast
