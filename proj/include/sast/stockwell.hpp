// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Classical Stockwell transform, the elementary operators behind its atoms,
// and the per-scale FFT correlation shared with the affine transform.

#pragma once

#include "sast/core.hpp"
#include "sast/fft.hpp"
#include "sast/saft.hpp"

namespace sast {

// ---------------------------------------------------------------------------
// Elementary operators on callables: (D_a psi)(t) = |a| psi(at),
// (M_a psi)(t) = e^{iat} psi(t), (T_b psi)(t) = psi(t - b).

template <class F>
auto dilate(F psi, double a)
{
    return [psi, a](double t) -> cplx { return std::abs(a) * psi(a * t); };
}

template <class F>
auto modulate(F psi, double a)
{
    return [psi, a](double t) -> cplx { return std::polar(1.0, a * t) * psi(t); };
}

template <class F>
auto translate(F psi, double b)
{
    return [psi, b](double t) -> cplx { return psi(t - b); };
}

// Psi~(t) = conj(Psi)(-t)
template <class F>
auto involution(F psi)
{
    return [psi](double t) -> cplx { return std::conj(psi(-t)); };
}

// ---------------------------------------------------------------------------
// Analyzing atoms

enum class AtomVariant { classical, affine };

struct AnalyzingAtom {
    double a = 1;
    double b = 0;
    AtomVariant variant = AtomVariant::classical;
    SaftParams params;
};

// Psi_{a,b}(t) = |a| e^{iat} Psi(a(t - b))
inline cplx classical_atom(const WindowSpec& psi, double a, double b, double t)
{
    return std::abs(a) * std::polar(1.0, a * t) * psi(a * (t - b));
}

// Psi_{N,a,b}(t) = |a| conj(K_B) Psi(a(t - b)) e^{iat + (i/2B)(2At(b - t) - Dp^2)}
// Signed a is accepted; grids only ever use a > 0.
inline cplx affine_atom(const WindowSpec& psi, const SaftParams& N, double a, double b, double t)
{
    double ph = a * t + (2.0 * N.A * t * (b - t) - N.D * N.p * N.p) / (2.0 * N.B);
    return std::abs(a) * std::conj(N.kb()) * psi(a * (t - b)) * std::polar(1.0, ph);
}

inline cvec atom_evaluate(const AnalyzingAtom& atom, const WindowSpec& psi, const rvec& t_axis)
{
    if (!(atom.a > 0))
        throw Error(Errc::invalid_scale, "atom scale must be positive");
    cvec out(t_axis.size());
    for (std::size_t i = 0; i < t_axis.size(); ++i)
        out[i] = atom.variant == AtomVariant::classical
                     ? classical_atom(psi, atom.a, atom.b, t_axis[i])
                     : affine_atom(psi, atom.params, atom.a, atom.b, t_axis[i]);
    return out;
}

namespace detail {

// Half-width, in samples, of the kernel s -> psi(a s) on a grid of step dt.
inline std::size_t kernel_half_width(const WindowSpec& psi, double a, double dt, std::size_t n)
{
    double r = psi.support_radius() / (std::abs(a) * dt);
    double m = std::ceil(r) + 1.0;
    return m >= static_cast<double>(n - 1) ? n - 1 : static_cast<std::size_t>(m);
}

// out[i] = sum_j h[j] kk[j - i + M]  (correlation against a kernel sampled
// at offsets (j - M) dt, j = 0..2M).
inline cvec correlate(const cvec& h, const cvec& kk, std::size_t M)
{
    cvec r(kk.rbegin(), kk.rend());
    cvec c = fft::convolve(h, r);
    return cvec(c.begin() + static_cast<std::ptrdiff_t>(M),
                c.begin() + static_cast<std::ptrdiff_t>(M + h.size()));
}

// out[i] = sum_j g[j] mm[i - j + M]
inline cvec convolve_centered(const cvec& g, const cvec& mm, std::size_t M)
{
    cvec c = fft::convolve(g, mm);
    return cvec(c.begin() + static_cast<std::ptrdiff_t>(M),
                c.begin() + static_cast<std::ptrdiff_t>(M + g.size()));
}

inline TfrGrid make_grid(const SampledSignal& f, const rvec& scales, const BAxis& bax,
                         const WindowSpec& psi, const SaftParams& N, TransformTag tag)
{
    check_scales(scales);
    bax.validate(f);
    rvec b(bax.count);
    for (std::size_t k = 0; k < bax.count; ++k)
        b[k] = f.t(bax.index(k));
    TfrGrid G(scales, std::move(b));
    G.params = N;
    G.window = psi;
    G.tag = tag;
    G.src_t0 = f.t0;
    G.src_dt = f.dt;
    G.src_n = f.size();
    G.baxis = bax;
    return G;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Classical ST: (1/sqrt(2 pi)) int f(t) a e^{-iat} conj(Psi(a(t - b))) dt

inline cplx st_point(const SampledSignal& f, const WindowSpec& psi, double a, double b)
{
    rvec wt = trapezoid_weights(f.size(), f.dt);
    cplx acc = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        double t = f.t(j);
        acc += wt[j] * f.samples[j] * std::polar(1.0, -a * t) * std::conj(psi(a * (t - b)));
    }
    return acc * std::abs(a) / std::sqrt(2.0 * pi);
}

// The fast path is the convolution form ([M_{-a} f] * [D_a Psi~])(b) / sqrt(2 pi),
// one FFT convolution per scale.
inline TfrGrid st_forward(const SampledSignal& f, const WindowSpec& psi, const rvec& scales,
                          const BAxis& bax, Path path = Path::fast)
{
    f.validate();
    TfrGrid G = detail::make_grid(f, scales, bax, psi, SaftParams::classical(), TransformTag::ST);
    const std::size_t n = f.size();
    rvec wt = trapezoid_weights(n, f.dt);

    parallel_for(scales.size(), [&](std::size_t j) {
        double a = scales[j];
        if (path == Path::direct) {
            for (std::size_t k = 0; k < bax.count; ++k)
                G.at(j, k) = st_point(f, psi, a, G.translations[k]);
            return;
        }
        cvec h(n);
        for (std::size_t i = 0; i < n; ++i)
            h[i] = wt[i] * f.samples[i] * std::polar(1.0, -a * f.t(i));
        std::size_t M = detail::kernel_half_width(psi, a, f.dt, n);
        cvec kk(2 * M + 1);
        for (std::size_t m = 0; m <= 2 * M; ++m) {
            double s = (static_cast<double>(m) - static_cast<double>(M)) * f.dt;
            kk[m] = std::conj(psi(a * s));
        }
        cvec c = detail::correlate(h, kk, M);
        double scale = a / std::sqrt(2.0 * pi);
        for (std::size_t k = 0; k < bax.count; ++k)
            G.at(j, k) = scale * c[bax.index(k)];
    });
    return G;
}

// f(t) = (1 / (sqrt(2 pi) C)) int int S(a, b) Psi_{a,b}(t) da db. The factor
// 1/sqrt(2 pi) is what the orthogonality relation <Sf, Sg> = C <f, g> implies
// for this normalization of S.
inline SampledSignal st_inverse(const TfrGrid& G, const WindowSpec& psi, double c_psi)
{
    G.validate();
    if (!(c_psi > 1e-12))
        throw Error(Errc::not_admissible, "admissibility constant is not positive");
    if (G.tag != TransformTag::ST || !(G.window == psi))
        throw Error(Errc::provenance, "grid was not produced by st_forward with this window");
    const std::size_t n = G.src_n;
    const double dt = G.src_dt;
    rvec wa = trapezoid_weights(G.scales);
    rvec wb = trapezoid_weights(G.cols(), dt * static_cast<double>(G.baxis.stride));
    std::vector<cvec> rows(G.rows());

    parallel_for(G.rows(), [&](std::size_t j) {
        double a = G.scales[j];
        cvec g(n, 0.0);
        for (std::size_t k = 0; k < G.cols(); ++k)
            g[G.baxis.index(k)] = wb[k] * G.at(j, k);
        std::size_t M = detail::kernel_half_width(psi, a, dt, n);
        cvec mm(2 * M + 1);
        for (std::size_t m = 0; m <= 2 * M; ++m)
            mm[m] = psi(a * (static_cast<double>(m) - static_cast<double>(M)) * dt);
        cvec c = detail::convolve_centered(g, mm, M);
        for (std::size_t i = 0; i < n; ++i) {
            double t = G.src_t0 + static_cast<double>(i) * dt;
            c[i] *= wa[j] * a * std::polar(1.0, a * t);
        }
        rows[j] = std::move(c);
    });

    cvec out(n, 0.0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < n; ++i)
            out[i] += r[i];
    double s = 1.0 / (std::sqrt(2.0 * pi) * c_psi);
    for (auto& v : out)
        v *= s;
    return SampledSignal(std::move(out), G.src_t0, dt);
}

} // namespace sast
