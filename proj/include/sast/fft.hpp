// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Thin FFTW wrapper. Plans are created once per (size, direction) under a
// mutex because the FFTW planner is not reentrant; executing a plan on
// fresh buffers is thread safe, which is all the transforms need.

#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "sast/core.hpp"

namespace sast::fft {

namespace detail {

struct Buffer {
    fftw_complex* p = nullptr;
    std::size_t n = 0;
    explicit Buffer(std::size_t len) : p(fftw_alloc_complex(len)), n(len)
    {
        if (!p)
            throw std::bad_alloc();
    }
    ~Buffer() { fftw_free(p); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    cplx* data() { return reinterpret_cast<cplx*>(p); }
};

class PlanCache {
public:
    static PlanCache& instance()
    {
        static PlanCache c;
        return c;
    }

    fftw_plan get(std::size_t n, int sign)
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end())
            return it->second;
        Buffer in(n), out(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in.p, out.p, sign, FFTW_ESTIMATE);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache()
    {
        for (auto& kv : plans_)
            fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

} // namespace detail

// Unnormalized DFT: X[k] = sum_j x[j] exp(-+ 2 pi i jk / n).
inline cvec transform(const cvec& x, int sign)
{
    std::size_t n = x.size();
    if (n == 0)
        return {};
    fftw_plan plan = detail::PlanCache::instance().get(n, sign);
    detail::Buffer in(n), out(n);
    std::copy(x.begin(), x.end(), in.data());
    fftw_execute_dft(plan, in.p, out.p);
    return cvec(out.data(), out.data() + n);
}

inline cvec forward(const cvec& x) { return transform(x, FFTW_FORWARD); }

// Inverse including the 1/n factor.
inline cvec inverse(const cvec& x)
{
    cvec y = transform(x, FFTW_BACKWARD);
    double s = 1.0 / static_cast<double>(x.size());
    for (auto& v : y)
        v *= s;
    return y;
}

inline std::size_t next_pow2(std::size_t n)
{
    std::size_t L = 1;
    while (L < n)
        L <<= 1;
    return L;
}

// Linear (acyclic) convolution c[m] = sum_j x[j] y[m - j], length nx + ny - 1.
inline cvec convolve(const cvec& x, const cvec& y)
{
    std::size_t L = next_pow2(x.size() + y.size() - 1);
    cvec X(L), Y(L);
    std::copy(x.begin(), x.end(), X.begin());
    std::copy(y.begin(), y.end(), Y.begin());
    X = forward(X);
    Y = forward(Y);
    for (std::size_t i = 0; i < L; ++i)
        X[i] *= Y[i];
    X = inverse(X);
    X.resize(x.size() + y.size() - 1);
    return X;
}

// Chirp-z: X[k] = sum_j x[j] exp(-i theta j k), k = 0..m-1, any real theta.
// Bluestein: jk = (j^2 + k^2 - (k - j)^2) / 2.
inline cvec chirp_z(const cvec& x, double theta, std::size_t m)
{
    std::size_t n = x.size();
    auto chirp = [theta](double j) { return std::exp(cplx(0.0, -0.5 * theta * j * j)); };
    cvec a(n), b(n + m - 1);
    for (std::size_t j = 0; j < n; ++j)
        a[j] = x[j] * chirp(static_cast<double>(j));
    // b[i] = conj chirp at offset (i - (n - 1)).
    for (std::size_t i = 0; i < n + m - 1; ++i)
        b[i] = std::conj(chirp(static_cast<double>(i) - static_cast<double>(n - 1)));
    cvec c = convolve(a, b);
    cvec out(m);
    for (std::size_t k = 0; k < m; ++k)
        out[k] = chirp(static_cast<double>(k)) * c[k + n - 1];
    return out;
}

} // namespace sast::fft
