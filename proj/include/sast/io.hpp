// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// File formats: signal and spectrum CSV, the SASTGRID binary container and
// 8-bit PGM heatmaps.

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sast/core.hpp"
#include "sast/saft.hpp"

namespace sast::io {

static_assert(std::endian::native == std::endian::little, "grid I/O assumes a little-endian host");

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::vector<std::array<double, 3>> read_triples(const std::string& path,
                                                       const std::string& header)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error(Errc::invalid_input, path + ": empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw Error(Errc::invalid_input, path + ": expected header '" + header + "'");
    std::vector<std::array<double, 3>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        std::array<double, 3> r{};
        std::stringstream ss(line);
        std::string cell;
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(ss, cell, ','))
                throw Error(Errc::invalid_input, path + ":" + std::to_string(lineno) + ": short row");
            try {
                std::size_t used = 0;
                r[c] = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size())
                    throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw Error(Errc::invalid_input,
                            path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        rows.push_back(r);
    }
    return rows;
}

// Checks the first column is uniform and returns its step.
inline double uniform_step(const std::vector<std::array<double, 3>>& rows, const std::string& path)
{
    if (rows.size() < 2)
        throw Error(Errc::invalid_input, path + ": need at least two rows");
    double step = (rows.back()[0] - rows.front()[0]) / static_cast<double>(rows.size() - 1);
    if (!(step > 0))
        throw Error(Errc::invalid_input, path + ": axis must be increasing");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::abs(rows[i][0] - rows[i - 1][0] - step) > 1e-6 * step)
            throw Error(Errc::invalid_input, path + ": axis is not uniform");
    return step;
}

inline std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::io, "cannot write " + path);
    return out;
}

} // namespace detail

inline SampledSignal read_signal_csv(const std::string& path)
{
    auto rows = detail::read_triples(path, "t,re,im");
    double dt = detail::uniform_step(rows, path);
    cvec s(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        s[i] = {rows[i][1], rows[i][2]};
    return SampledSignal(std::move(s), rows.front()[0], dt);
}

inline void write_signal_csv(const SampledSignal& f, const std::string& path)
{
    auto out = detail::open_out(path);
    out << "t,re,im\n" << std::setprecision(17);
    for (std::size_t j = 0; j < f.size(); ++j)
        out << f.t(j) << ',' << f.samples[j].real() << ',' << f.samples[j].imag() << '\n';
    if (!out)
        throw Error(Errc::io, "write failed: " + path);
}

inline void write_spectrum_csv(const SaftSpectrum& S, const std::string& path)
{
    auto out = detail::open_out(path);
    out << "w,re,im\n" << std::setprecision(17);
    for (std::size_t k = 0; k < S.values.size(); ++k)
        out << S.w(k) << ',' << S.values[k].real() << ',' << S.values[k].imag() << '\n';
    if (!out)
        throw Error(Errc::io, "write failed: " + path);
}

inline SaftSpectrum read_spectrum_csv(const std::string& path, const SaftParams& N)
{
    auto rows = detail::read_triples(path, "w,re,im");
    double dw = detail::uniform_step(rows, path);
    SaftSpectrum S;
    S.axis = {rows.front()[0], dw, rows.size()};
    S.params = N;
    S.values.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        S.values[i] = {rows[i][1], rows[i][2]};
    return S;
}

// ---------------------------------------------------------------------------
// SASTGRID binary: "SASTGRID", u32 version, u64 rows, u64 cols, f64 scales,
// f64 translations, then interleaved (re, im) f64 in row-major order.
// Provenance lives in a JSON sidecar written by the caller.

inline constexpr std::uint32_t grid_version = 1;

inline void write_grid(const TfrGrid& G, const std::string& path)
{
    G.validate();
    auto out = detail::open_out(path);
    std::uint32_t ver = grid_version;
    std::uint64_t r = G.rows(), c = G.cols();
    out.write("SASTGRID", 8);
    out.write(reinterpret_cast<const char*>(&ver), sizeof ver);
    out.write(reinterpret_cast<const char*>(&r), sizeof r);
    out.write(reinterpret_cast<const char*>(&c), sizeof c);
    out.write(reinterpret_cast<const char*>(G.scales.data()),
              static_cast<std::streamsize>(r * sizeof(double)));
    out.write(reinterpret_cast<const char*>(G.translations.data()),
              static_cast<std::streamsize>(c * sizeof(double)));
    out.write(reinterpret_cast<const char*>(G.coeffs.data()),
              static_cast<std::streamsize>(r * c * sizeof(cplx)));
    if (!out)
        throw Error(Errc::io, "write failed: " + path);
}

// Axes and coefficients only; provenance is restored from the sidecar.
inline TfrGrid read_grid(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot open " + path);
    char magic[8];
    std::uint32_t ver = 0;
    std::uint64_t r = 0, c = 0;
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(&ver), sizeof ver);
    in.read(reinterpret_cast<char*>(&r), sizeof r);
    in.read(reinterpret_cast<char*>(&c), sizeof c);
    if (!in || std::memcmp(magic, "SASTGRID", 8) != 0)
        throw Error(Errc::invalid_input, path + ": not a SASTGRID file");
    if (ver != grid_version)
        throw Error(Errc::invalid_input, path + ": unsupported version " + std::to_string(ver));
    if (r == 0 || c == 0 || r > (1ull << 28) || c > (1ull << 28) || r * c > (1ull << 31))
        throw Error(Errc::invalid_input, path + ": implausible grid dimensions");
    rvec s(r), b(c);
    in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(r * sizeof(double)));
    in.read(reinterpret_cast<char*>(b.data()), static_cast<std::streamsize>(c * sizeof(double)));
    TfrGrid G(std::move(s), std::move(b));
    in.read(reinterpret_cast<char*>(G.coeffs.data()),
            static_cast<std::streamsize>(r * c * sizeof(cplx)));
    if (!in)
        throw Error(Errc::invalid_input, path + ": truncated grid file");
    return G;
}

// ---------------------------------------------------------------------------
// PGM heatmap: rows are scales with the lowest scale at the bottom,
// pixel = round(255 |c| / max |c|).

inline std::vector<std::uint8_t> heatmap_pixels(const TfrGrid& G)
{
    if (G.rows() == 0 || G.cols() == 0)
        throw Error(Errc::invalid_input, "empty grid");
    double m = G.max_abs();
    std::vector<std::uint8_t> px(G.rows() * G.cols(), 0);
    if (m == 0)
        return px;
    for (std::size_t j = 0; j < G.rows(); ++j) {
        std::size_t y = G.rows() - 1 - j;
        for (std::size_t k = 0; k < G.cols(); ++k)
            px[y * G.cols() + k] =
                static_cast<std::uint8_t>(std::lround(255.0 * std::abs(G.at(j, k)) / m));
    }
    return px;
}

inline void heatmap_export(const TfrGrid& G, const std::string& path)
{
    auto px = heatmap_pixels(G);
    auto out = detail::open_out(path);
    out << "P5\n" << G.cols() << ' ' << G.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    if (!out)
        throw Error(Errc::io, "write failed: " + path);
}

} // namespace sast::io
