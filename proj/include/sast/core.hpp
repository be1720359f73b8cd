// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Domain types and numeric plumbing shared by every transform module.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sast {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class Errc {
    invalid_input,
    invalid_params,
    invalid_scale,
    invalid_window,
    invalid_signal,
    grid_mismatch,
    degenerate_angle,
    not_admissible,
    provenance,
    moment_truncation,
    alias,
    io,
};

inline const char* errc_name(Errc c)
{
    switch (c) {
    case Errc::invalid_input: return "InvalidInput";
    case Errc::invalid_params: return "InvalidParams";
    case Errc::invalid_scale: return "InvalidScale";
    case Errc::invalid_window: return "InvalidWindow";
    case Errc::invalid_signal: return "InvalidSignal";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::degenerate_angle: return "DegenerateAngle";
    case Errc::not_admissible: return "NotAdmissible";
    case Errc::provenance: return "ProvenanceError";
    case Errc::moment_truncation: return "MomentTruncation";
    case Errc::alias: return "AliasError";
    case Errc::io: return "IoError";
    }
    return "Unknown";
}

// Numerical failures (as opposed to bad input) map to CLI exit code 2.
inline bool is_numerical(Errc c)
{
    return c == Errc::not_admissible || c == Errc::moment_truncation || c == Errc::alias;
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Warnings go through a replaceable sink so the CLI can route them to stderr
// and tests can capture them.
inline std::function<void(const std::string&)>& warning_sink()
{
    static std::function<void(const std::string&)> sink = [](const std::string& msg) {
        std::fprintf(stderr, "warning: %s\n", msg.c_str());
    };
    return sink;
}

inline void warn(const std::string& msg)
{
    if (warning_sink())
        warning_sink()(msg);
}

// ---------------------------------------------------------------------------
// Parameter matrix N = (A, B, C, D; p, q)

struct SaftParams {
    double A = 0, B = 1, C = -1, D = 0, p = 0, q = 0;

    SaftParams() = default;

    SaftParams(double a, double b, double c, double d, double p_off = 0, double q_off = 0,
               bool allow_non_unimodular = false)
        : A(a), B(b), C(c), D(d), p(p_off), q(q_off)
    {
        if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C) || !std::isfinite(D) ||
            !std::isfinite(p) || !std::isfinite(q))
            throw Error(Errc::invalid_params, "non-finite matrix entry");
        if (B == 0.0)
            throw Error(Errc::invalid_params,
                        "B = 0 degenerates to a chirp multiplication and is not supported");
        double det = A * D - B * C;
        if (std::abs(det - 1.0) > 1e-9) {
            if (!allow_non_unimodular)
                throw Error(Errc::invalid_params,
                            "AD - BC = " + std::to_string(det) + " (expected 1)");
            warn("non-unimodular parameter matrix accepted (AD - BC = " + std::to_string(det) + ")");
            unimodular_ = false;
        }
    }

    static SaftParams classical() { return {0, 1, -1, 0, 0, 0}; }

    // K_B = 1 / sqrt(i 2 pi B), principal branch.
    cplx kb() const { return 1.0 / std::sqrt(cplx(0.0, 2.0 * pi * B)); }

    // N^{-1} = (D, -B, -C, A; Bq - Dp, Cp - Aq). Unimodularity carries over.
    SaftParams inverse() const
    {
        SaftParams r;
        r.A = D;
        r.B = -B;
        r.C = -C;
        r.D = A;
        r.p = B * q - D * p;
        r.q = C * p - A * q;
        r.unimodular_ = unimodular_;
        return r;
    }

    bool unimodular() const { return unimodular_; }

    bool operator==(const SaftParams& o) const
    {
        return A == o.A && B == o.B && C == o.C && D == o.D && p == o.p && q == o.q;
    }

private:
    bool unimodular_ = true;
};

// ---------------------------------------------------------------------------
// Uniformly sampled complex signal

struct SampledSignal {
    cvec samples;
    double t0 = 0;
    double dt = 1;

    SampledSignal() = default;
    SampledSignal(cvec s, double t0_, double dt_) : samples(std::move(s)), t0(t0_), dt(dt_)
    {
        validate();
    }

    void validate() const
    {
        if (!(dt > 0) || !std::isfinite(dt))
            throw Error(Errc::invalid_signal, "dt must be positive");
        if (samples.empty())
            throw Error(Errc::invalid_signal, "empty signal");
        for (const auto& v : samples)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw Error(Errc::invalid_signal, "non-finite sample");
    }

    std::size_t size() const { return samples.size(); }
    double t(std::size_t j) const { return t0 + static_cast<double>(j) * dt; }
    double duration() const { return dt * static_cast<double>(samples.size() - 1); }

    rvec time_axis() const
    {
        rvec out(size());
        for (std::size_t j = 0; j < size(); ++j)
            out[j] = t(j);
        return out;
    }

    // Builds a signal by sampling a callable on t0 + j dt.
    template <class F>
    static SampledSignal from_function(F&& fn, double t0, double dt, std::size_t n)
    {
        cvec s(n);
        for (std::size_t j = 0; j < n; ++j)
            s[j] = cplx(fn(t0 + static_cast<double>(j) * dt));
        return SampledSignal(std::move(s), t0, dt);
    }
};

// ---------------------------------------------------------------------------
// Quadrature

// step * (sum - (first + last) / 2)
template <class T>
T trapezoid_integral(const std::vector<T>& values, double step)
{
    if (values.empty())
        throw Error(Errc::invalid_input, "trapezoid_integral on empty input");
    if (!(step > 0))
        throw Error(Errc::invalid_input, "trapezoid step must be positive");
    T acc{};
    for (const auto& v : values)
        acc += v;
    acc -= (values.front() + values.back()) * 0.5;
    return acc * step;
}

// Uniform-grid trapezoid weights; a single point gets weight `step`.
inline rvec trapezoid_weights(std::size_t n, double step)
{
    rvec w(n, step);
    if (n > 1) {
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    return w;
}

// Trapezoid weights for a nonuniform increasing axis.
inline rvec trapezoid_weights(const rvec& x)
{
    rvec w(x.size(), 0.0);
    if (x.size() < 2)
        return rvec(x.size(), 1.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double h = x[i + 1] - x[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

inline double signal_energy(const SampledSignal& f)
{
    rvec sq(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        sq[j] = std::norm(f.samples[j]);
    return trapezoid_integral(sq, f.dt);
}

inline double l2_norm(const cvec& v)
{
    double s = 0;
    for (const auto& x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

// Fraction of the energy sitting in the outer 5% at each end of the window.
// A large value means the signal is being truncated by its own sample range.
inline double edge_energy_fraction(const SampledSignal& f, double fraction = 0.05)
{
    std::size_t n = f.size();
    std::size_t edge = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    double tot = 0, out = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double e = std::norm(f.samples[j]);
        tot += e;
        if (j < edge || j + edge >= n)
            out += e;
    }
    return tot > 0 ? out / tot : 0.0;
}

// ---------------------------------------------------------------------------
// Axes

inline rvec linspace(double lo, double hi, std::size_t n)
{
    if (n == 0)
        throw Error(Errc::invalid_input, "axis with zero points");
    rvec out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

inline rvec geomspace(double lo, double hi, std::size_t n)
{
    if (!(lo > 0) || !(hi > 0))
        throw Error(Errc::invalid_scale, "log axis needs positive bounds");
    rvec out = linspace(std::log(lo), std::log(hi), n);
    for (auto& v : out)
        v = std::exp(v);
    if (n > 1) {
        out.front() = lo;
        out.back() = hi;
    }
    return out;
}

inline void check_scales(const rvec& scales)
{
    if (scales.empty())
        throw Error(Errc::invalid_scale, "empty scale axis");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0) || !std::isfinite(scales[i]))
            throw Error(Errc::invalid_scale, "scales must be positive and finite");
        if (i > 0 && !(scales[i] > scales[i - 1]))
            throw Error(Errc::invalid_scale, "scales must be strictly increasing");
    }
}

// Uniform frequency axis w_k = w0 + k dw.
struct FreqAxis {
    double w0 = 0;
    double dw = 1;
    std::size_t count = 0;

    double at(std::size_t k) const { return w0 + static_cast<double>(k) * dw; }
    void validate() const
    {
        if (!(dw > 0) || count == 0 || !std::isfinite(w0))
            throw Error(Errc::invalid_input, "frequency axis needs dw > 0 and count > 0");
    }
    static FreqAxis symmetric(double wmax, std::size_t count)
    {
        if (count < 2)
            throw Error(Errc::invalid_input, "symmetric axis needs at least two points");
        return {-wmax, 2.0 * wmax / static_cast<double>(count - 1), count};
    }
};

// Translation axis as a strided subset of a signal's sample grid.
struct BAxis {
    std::size_t start = 0;
    std::size_t stride = 1;
    std::size_t count = 0;

    static BAxis full(const SampledSignal& f) { return {0, 1, f.size()}; }

    void validate(const SampledSignal& f) const
    {
        if (count == 0 || stride == 0)
            throw Error(Errc::invalid_input, "translation axis needs count > 0 and stride > 0");
        if (start + (count - 1) * stride >= f.size())
            throw Error(Errc::invalid_input, "translation axis leaves the signal grid");
    }
    std::size_t index(std::size_t k) const { return start + k * stride; }
};

// ---------------------------------------------------------------------------
// Windows

enum class WindowKind { gaussian_pi, gaussian_dgs, sampled };

struct WindowSpec {
    WindowKind kind = WindowKind::gaussian_pi;
    double delta_gs = 1.0; // gaussian_dgs width
    cvec samples;          // sampled window
    double t0 = 0, dt = 1; // sampled window grid
    cplx gain{1.0, 0.0};   // overall complex factor (used for the anti-linearity checks)

    static WindowSpec gaussian_pi() { return {}; }

    static WindowSpec gaussian_dgs(double delta)
    {
        if (!(delta > 0))
            throw Error(Errc::invalid_window, "delta_gs must be positive");
        WindowSpec w;
        w.kind = WindowKind::gaussian_dgs;
        w.delta_gs = delta;
        return w;
    }

    static WindowSpec sampled_window(cvec s, double t0, double dt)
    {
        if (s.empty() || !(dt > 0))
            throw Error(Errc::invalid_window, "sampled window needs samples and dt > 0");
        WindowSpec w;
        w.kind = WindowKind::sampled;
        w.samples = std::move(s);
        w.t0 = t0;
        w.dt = dt;
        return w;
    }

    WindowSpec scaled(cplx g) const
    {
        WindowSpec w = *this;
        w.gain *= g;
        return w;
    }

    std::string name() const
    {
        switch (kind) {
        case WindowKind::gaussian_pi: return "gaussian-pi";
        case WindowKind::gaussian_dgs: return "gaussian-dgs:" + std::to_string(delta_gs);
        case WindowKind::sampled: return "sampled";
        }
        return "?";
    }

    // Psi(t). The Delta_gs Gaussian is (2 pi Delta)^{-1/2} exp(-t^2 / (2 Delta^2)).
    cplx operator()(double t) const
    {
        switch (kind) {
        case WindowKind::gaussian_pi: return gain * std::exp(-pi * t * t);
        case WindowKind::gaussian_dgs:
            return gain * (1.0 / std::sqrt(2.0 * pi * delta_gs)) *
                   std::exp(-t * t / (2.0 * delta_gs * delta_gs));
        case WindowKind::sampled: {
            double x = (t - t0) / dt;
            if (x < 0 || x > static_cast<double>(samples.size() - 1))
                return 0.0;
            auto i = static_cast<std::size_t>(x);
            if (i + 1 >= samples.size())
                return gain * samples.back();
            double fr = x - static_cast<double>(i);
            return gain * ((1.0 - fr) * samples[i] + fr * samples[i + 1]);
        }
        }
        return 0.0;
    }

    // Half-width beyond which |Psi| is negligible (below ~1e-16 of its peak).
    double support_radius() const
    {
        switch (kind) {
        case WindowKind::gaussian_pi: return 3.6;
        case WindowKind::gaussian_dgs: return 8.6 * delta_gs;
        case WindowKind::sampled:
            return std::max(std::abs(t0),
                            std::abs(t0 + dt * static_cast<double>(samples.size() - 1)));
        }
        return 0;
    }

    bool operator==(const WindowSpec& o) const
    {
        return kind == o.kind && delta_gs == o.delta_gs && samples == o.samples && t0 == o.t0 &&
               dt == o.dt && gain == o.gain;
    }
};

// Energy-normalized first and second moments of |Psi|^2.
struct WindowGeometry {
    double center = 0;
    double radius = 0;
    double q_factor = 0;
    bool q_defined = false;
};

inline WindowGeometry moments_of(const rvec& x, const rvec& density)
{
    rvec w = trapezoid_weights(x);
    double m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m0 += w[i] * density[i];
        m1 += w[i] * density[i] * x[i];
    }
    if (!(m0 > 0))
        throw Error(Errc::invalid_window, "zero-energy window");
    double c = m1 / m0, m2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        m2 += w[i] * density[i] * (x[i] - c) * (x[i] - c);
    WindowGeometry g;
    g.center = c;
    g.radius = std::sqrt(std::max(0.0, m2 / m0));
    g.q_defined = std::abs(c) > 1e-300;
    g.q_factor = g.q_defined ? g.radius / c : 0.0;
    return g;
}

// ---------------------------------------------------------------------------
// Time-frequency grid

enum class TransformTag { ST, SAST, LCST, FRST, FRESNEL, SASWD };

inline const char* tag_name(TransformTag t)
{
    switch (t) {
    case TransformTag::ST: return "ST";
    case TransformTag::SAST: return "SAST";
    case TransformTag::LCST: return "LCST";
    case TransformTag::FRST: return "FRST";
    case TransformTag::FRESNEL: return "FRESNEL";
    case TransformTag::SASWD: return "SASWD";
    }
    return "?";
}

struct TfrGrid {
    rvec scales;       // rows (a > 0, increasing); for SASWD: the u axis
    rvec translations; // columns (b, uniform)
    cvec coeffs;       // row-major [scales x translations]
    SaftParams params;
    WindowSpec window;
    TransformTag tag = TransformTag::SAST;
    // Sample grid of the analyzed signal and the placement of b on it.
    double src_t0 = 0, src_dt = 1;
    std::size_t src_n = 0;
    BAxis baxis;

    TfrGrid() = default;
    TfrGrid(rvec s, rvec b) : scales(std::move(s)), translations(std::move(b))
    {
        coeffs.assign(scales.size() * translations.size(), cplx{});
    }

    std::size_t rows() const { return scales.size(); }
    std::size_t cols() const { return translations.size(); }
    cplx& at(std::size_t j, std::size_t k) { return coeffs[j * cols() + k]; }
    const cplx& at(std::size_t j, std::size_t k) const { return coeffs[j * cols() + k]; }

    double db() const { return cols() > 1 ? translations[1] - translations[0] : 1.0; }

    void validate() const
    {
        if (coeffs.size() != rows() * cols())
            throw Error(Errc::grid_mismatch, "coefficient count does not match axes");
        if (tag != TransformTag::SASWD)
            check_scales(scales);
    }

    double max_abs() const
    {
        double m = 0;
        for (const auto& c : coeffs)
            m = std::max(m, std::abs(c));
        return m;
    }

    // Quadrature of |c|^2 over (a, b) with trapezoid weights on both axes.
    // Row sums are formed first and then added in row order so the result
    // does not depend on how rows were scheduled.
    double energy() const
    {
        rvec wa = trapezoid_weights(scales);
        rvec wb = trapezoid_weights(cols(), db());
        double tot = 0;
        for (std::size_t j = 0; j < rows(); ++j) {
            double row = 0;
            for (std::size_t k = 0; k < cols(); ++k)
                row += wb[k] * std::norm(at(j, k));
            tot += wa[j] * row;
        }
        return tot;
    }
};

// ---------------------------------------------------------------------------
// Deterministic parallel loop over independent indices

inline std::atomic<unsigned>& max_threads_setting()
{
    static std::atomic<unsigned> n{0};
    return n;
}

// 0 means hardware concurrency.
inline void set_max_threads(unsigned n) { max_threads_setting() = n; }

inline unsigned max_threads()
{
    unsigned n = max_threads_setting();
    if (n == 0)
        n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

// Runs body(i) for i in [0, n). Every index writes only its own output, so
// the result is identical for any thread count.
template <class F>
void parallel_for(std::size_t n, F&& body)
{
    unsigned nt = static_cast<unsigned>(std::min<std::size_t>(max_threads(), n));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed)
                return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true))
                    err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace sast
