// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// Text grammars shared by the command-line tool and the demos: parameter
// lists, scale axes, window names, and the committed demo configuration.

#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sast/chirplab.hpp"
#include "sast/core.hpp"

namespace sast::config {

using json = nlohmann::json;

inline std::vector<double> parse_reals(const std::string& text, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw Error(Errc::invalid_input, what + ": '" + item + "' is not a number");
        }
        if (used != item.size() || !std::isfinite(v))
            throw Error(Errc::invalid_input, what + ": '" + item + "' is not a finite number");
        out.push_back(v);
    }
    return out;
}

// "A,B,C,D,p,q"
inline SaftParams parse_params(const std::string& text, bool allow_non_unimodular = false)
{
    auto v = parse_reals(text, "params");
    if (v.size() != 6)
        throw Error(Errc::invalid_input, "params needs six comma-separated values A,B,C,D,p,q");
    return SaftParams(v[0], v[1], v[2], v[3], v[4], v[5], allow_non_unimodular);
}

inline SaftParams params_from_json(const json& j, bool allow_non_unimodular = false)
{
    if (!j.is_array() || j.size() != 6)
        throw Error(Errc::invalid_input, "params entry needs six numbers");
    return SaftParams(j[0], j[1], j[2], j[3], j[4], j[5], allow_non_unimodular);
}

// "log:<min>:<max>:<n>" or "lin:<min>:<max>:<n>", min < max. A lin axis may
// cross zero (probe frequencies); parse_scales adds the positivity check.
inline rvec parse_axis(const std::string& text)
{
    auto c1 = text.find(':');
    if (c1 == std::string::npos)
        throw Error(Errc::invalid_input, "axis must look like log:<min>:<max>:<n> or lin:<min>:<max>:<n>");
    std::string kind = text.substr(0, c1);
    std::string rest = text.substr(c1 + 1);
    std::replace(rest.begin(), rest.end(), ':', ',');
    auto v = parse_reals(rest, "axis");
    if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2]))
        throw Error(Errc::invalid_input, "axis needs <min>:<max>:<n> with integer n >= 1");
    if (v[2] > 1 && !(v[0] < v[1]))
        throw Error(Errc::invalid_input, "axis needs min < max");
    auto n = static_cast<std::size_t>(v[2]);
    if (kind == "log") {
        if (!(v[0] > 0))
            throw Error(Errc::invalid_scale, "log axis needs min > 0");
        return geomspace(v[0], v[1], n);
    }
    if (kind == "lin")
        return linspace(v[0], v[1], n);
    throw Error(Errc::invalid_input, "axis kind must be log or lin");
}

inline rvec parse_scales(const std::string& text)
{
    rvec s = parse_axis(text);
    check_scales(s);
    return s;
}

// "gaussian-pi" or "gaussian-dgs:<delta>"
inline WindowSpec parse_window(const std::string& text)
{
    if (text == "gaussian-pi")
        return WindowSpec::gaussian_pi();
    const std::string pre = "gaussian-dgs:";
    if (text.rfind(pre, 0) == 0) {
        auto v = parse_reals(text.substr(pre.size()), "window");
        if (v.size() != 1)
            throw Error(Errc::invalid_input, "gaussian-dgs needs one width");
        return WindowSpec::gaussian_dgs(v[0]);
    }
    throw Error(Errc::invalid_window, "unknown window '" + text + "'");
}

// Inverse of parse_window for the analytic windows.
inline std::string window_name(const WindowSpec& w)
{
    switch (w.kind) {
    case WindowKind::gaussian_pi: return "gaussian-pi";
    case WindowKind::gaussian_dgs: {
        std::ostringstream os;
        os << std::setprecision(17) << "gaussian-dgs:" << w.delta_gs;
        return os.str();
    }
    case WindowKind::sampled: break;
    }
    throw Error(Errc::invalid_window, "sampled windows have no text form");
}

inline json params_to_json(const SaftParams& N) { return json::array({N.A, N.B, N.C, N.D, N.p, N.q}); }

inline json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Grid provenance sidecar (<grid>.json next to a SASTGRID file)

inline json provenance_json(const TfrGrid& G)
{
    return json{{"schema_version", 1},
                {"transform", tag_name(G.tag)},
                {"params", params_to_json(G.params)},
                {"window", window_name(G.window)},
                {"source", {{"t0", G.src_t0}, {"dt", G.src_dt}, {"samples", G.src_n}}},
                {"translation_axis",
                 {{"start", G.baxis.start}, {"stride", G.baxis.stride}, {"count", G.baxis.count}}}};
}

inline void write_provenance(const TfrGrid& G, const std::string& path)
{
    std::ofstream out(path);
    out << provenance_json(G).dump(2) << '\n';
    if (!out)
        throw Error(Errc::io, "write failed: " + path);
}

// Restores the provenance of a grid read back from its binary file.
inline void apply_provenance(TfrGrid& G, const std::string& path)
{
    json j = read_json(path);
    try {
        std::string tag = j.at("transform");
        if (tag == "SAST")
            G.tag = TransformTag::SAST;
        else if (tag == "ST")
            G.tag = TransformTag::ST;
        else
            throw Error(Errc::provenance, path + ": transform '" + tag + "' cannot be inverted here");
        G.params = params_from_json(j.at("params"), true);
        G.window = parse_window(j.at("window"));
        const json& s = j.at("source");
        G.src_t0 = s.at("t0");
        G.src_dt = s.at("dt");
        G.src_n = s.at("samples");
        const json& b = j.at("translation_axis");
        G.baxis = {b.at("start"), b.at("stride"), b.at("count")};
    } catch (const json::exception& e) {
        throw Error(Errc::provenance, path + ": " + e.what());
    }
    if (G.baxis.count != G.cols() || G.src_n == 0 ||
        G.baxis.start + (G.baxis.count - 1) * G.baxis.stride >= G.src_n)
        throw Error(Errc::provenance, path + ": translation axis does not match the grid");
}

// ---------------------------------------------------------------------------
// Committed demo configuration

struct LfmCase {
    chirp::LfmSpec spec;
    WindowSpec window;
    SaftParams params;
    rvec scales;
};

struct DemoConfig {
    int schema_version = 0;
    chirp::LfmSpec mono;
    WindowSpec window;
    WindowSpec alt_window;
    std::map<std::string, SaftParams> params;
    rvec scales;
    double ridge_edge = 0;

    // Bi-component comparison
    LfmCase bi;
    double bi_b_lo = 0, bi_b_hi = 0;
    std::size_t bi_col_stride = 1;

    // Echo experiment
    LfmCase echo;
    chirp::EchoSpec echo_spec;
    std::size_t echo_halfwidth = 3;

    // Rayleigh check
    std::size_t rayleigh_n = 0;
    double rayleigh_half = 0, rayleigh_sigma = 1;
    WindowSpec rayleigh_window;
    SaftParams rayleigh_params;
    rvec rayleigh_scales;
};

inline chirp::LfmSpec lfm_from_json(const json& j)
{
    chirp::LfmSpec s;
    s.sample_rate = j.at("sample_rate");
    s.duration = j.at("duration");
    for (const auto& c : j.at("components"))
        s.components.push_back({c.at("alpha"), c.at("beta"), {c.value("amplitude", 1.0), 0.0}});
    return s;
}

inline DemoConfig load_demo(const std::string& path)
{
    json j = read_json(path);
    DemoConfig d;
    try {
        d.schema_version = j.at("schema_version");
        bool nonuni = j.value("allow_non_unimodular", false);
        d.mono = lfm_from_json(j);
        d.window = parse_window(j.at("window"));
        d.alt_window = parse_window(j.at("alt_window"));
        for (auto& [k, v] : j.at("params").items())
            d.params.emplace(k, params_from_json(v, nonuni));
        d.scales = parse_scales(j.at("scales"));
        d.ridge_edge = j.at("ridge").at("edge_exclusion");

        const json& b = j.at("bi");
        d.bi.spec = lfm_from_json(b);
        d.bi.window = parse_window(b.at("window"));
        d.bi.params = params_from_json(b.at("params"));
        d.bi.scales = parse_scales(b.at("scales"));
        d.bi_b_lo = b.at("b_range")[0];
        d.bi_b_hi = b.at("b_range")[1];
        d.bi_col_stride = b.at("column_stride");

        const json& e = j.at("echo");
        d.echo.spec = lfm_from_json(e);
        d.echo.window = parse_window(e.at("window"));
        d.echo.params = params_from_json(e.at("params"));
        d.echo.scales = parse_scales(e.at("scales"));
        d.echo_spec.delay = e.at("delay");
        d.echo_spec.attenuation = e.at("attenuation").get<double>();
        d.echo_halfwidth = e.at("mask_halfwidth");

        const json& r = j.at("rayleigh");
        d.rayleigh_n = r.at("samples");
        d.rayleigh_half = r.at("half_width");
        d.rayleigh_sigma = r.at("sigma");
        d.rayleigh_window = parse_window(r.at("window"));
        d.rayleigh_params = params_from_json(r.at("params"));
        d.rayleigh_scales = parse_scales(r.at("scales"));
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, path + ": " + e.what());
    }
    return d;
}

} // namespace sast::config
