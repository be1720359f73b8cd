// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The sast authors
//
// sast_cli: synthesis, transforms, verification, comparison and echo
// filtering from the command line. Data goes to files (or stdout for JSON
// reports); diagnostics go to stderr. Exit codes: 0 success, 1 validation
// error, 2 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "sast/config.hpp"
#include "sast/io.hpp"
#include "sast/sast.hpp"

using namespace sast;
using config::json;

namespace {

// Transform settings shared by several subcommands.
struct TransformArgs {
    std::string params = "0,1,-1,0,0,0";
    bool allow_non_unimodular = false;
    std::string window = "gaussian-pi";
    std::string scales = "log:0.05:80:128";

    void add_to(CLI::App* app, const std::string& default_scales)
    {
        scales = default_scales;
        app->add_option("--params", params, "A,B,C,D,p,q")->capture_default_str();
        app->add_flag("--allow-non-unimodular", allow_non_unimodular, "accept AD - BC != 1");
        app->add_option("--window", window, "gaussian-pi | gaussian-dgs:<delta>")->capture_default_str();
        app->add_option("--scales", scales, "log|lin:<min>:<max>:<n>")->capture_default_str();
    }
    SaftParams N() const { return config::parse_params(params, allow_non_unimodular); }
    WindowSpec psi() const { return config::parse_window(window); }
    rvec axis() const { return config::parse_scales(scales); }
};

void emit_json(const json& j, const std::string& out)
{
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    f << j.dump(2) << '\n';
    if (!f)
        throw Error(Errc::io, "write failed: " + out);
}

BAxis strided(const SampledSignal& f, std::size_t stride)
{
    if (stride == 0)
        throw Error(Errc::invalid_input, "--stride must be positive");
    return BAxis{0, stride, (f.size() + stride - 1) / stride};
}

json report_json(const UcpReport& r)
{
    return json{{"lhs", r.lhs}, {"rhs_bound", r.rhs_bound}, {"ratio", r.ratio}, {"passed", r.passed}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Special affine Stockwell transform tools"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = all cores)");

    // synth lfm
    auto* synth = app.add_subcommand("synth", "synthesize test signals");
    synth->require_subcommand(1);
    auto* lfm = synth->add_subcommand("lfm", "linear FM chirp e^{i 2 pi (alpha t + beta t^2)}");
    double alpha = 80, beta = 30, rate = 1024, dur = 1, echo_delay = -1, echo_att = 0.5;
    std::string synth_out;
    lfm->add_option("--alpha", alpha, "start frequency [Hz]")->capture_default_str();
    lfm->add_option("--beta", beta, "frequency rate [Hz/s]")->capture_default_str();
    lfm->add_option("--rate", rate, "sample rate [Hz]")->capture_default_str();
    lfm->add_option("--dur", dur, "duration [s]")->capture_default_str();
    lfm->add_option("--echo-delay", echo_delay, "add a delayed copy [s]");
    lfm->add_option("--echo-att", echo_att, "echo attenuation")->capture_default_str();
    lfm->add_option("--out", synth_out, "signal CSV")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "forward transform to a SASTGRID file");
    TransformArgs an;
    an.add_to(analyze, "log:0.05:80:128");
    std::string an_in, an_out, an_heat, an_kind = "sast";
    std::size_t an_stride = 1;
    analyze->add_option("--in", an_in, "signal CSV")->required();
    analyze->add_option("--out", an_out, "grid file (a .json provenance sidecar is written next to it)")->required();
    analyze->add_option("--stride", an_stride, "translation stride in samples")->capture_default_str();
    analyze->add_option("--transform", an_kind, "sast | st")->check(CLI::IsMember({"sast", "st"}))->capture_default_str();
    analyze->add_option("--heatmap", an_heat, "also write an 8-bit PGM heatmap");

    // invert
    auto* invert = app.add_subcommand("invert", "inverse transform of a SASTGRID file");
    std::string inv_grid, inv_out;
    double inv_c = 0;
    invert->add_option("--grid", inv_grid, "grid file with its .json sidecar")->required();
    invert->add_option("--c", inv_c, "admissibility constant (default: mean over p +- 8|B|)");
    invert->add_option("--out", inv_out, "signal CSV")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "energy and uncertainty checks");
    TransformArgs ve;
    ve.add_to(verify, "log:0.05:80:128");
    std::string ve_suite, ve_in, ve_out;
    verify->add_option("--suite", ve_suite, "rayleigh | heisenberg | log-ucp")
        ->required()
        ->check(CLI::IsMember({"rayleigh", "heisenberg", "log-ucp"}));
    verify->add_option("--in", ve_in, "signal CSV")->required();
    verify->add_option("--out", ve_out, "JSON report (default stdout)");

    // admissibility
    auto* adm = app.add_subcommand("admissibility", "scale integral of the window");
    TransformArgs ad;
    ad.add_to(adm, "log:0.05:80:128");
    std::string ad_probes, ad_in, ad_out;
    adm->add_option("--probes", ad_probes, "probe frequencies lin:<min>:<max>:<n>");
    adm->add_option("--in", ad_in, "take probes from the spectral support of this signal");
    adm->add_option("--out", ad_out, "JSON report (default stdout)");

    // compare
    auto* cmp = app.add_subcommand("compare", "STFT, ST and SAST on the same axes");
    TransformArgs cm;
    cm.add_to(cmp, "log:300:2500:160");
    std::string cm_in, cm_out, cm_heat;
    std::size_t cm_stride = 8;
    double cm_sigma = 0.1;
    cmp->add_option("--in", cm_in, "signal CSV")->required();
    cmp->add_option("--stride", cm_stride, "translation stride in samples")->capture_default_str();
    cmp->add_option("--stft-sigma", cm_sigma, "STFT Gaussian width [s]")->capture_default_str();
    cmp->add_option("--heatmap-dir", cm_heat, "write one PGM per method here");
    cmp->add_option("--out", cm_out, "JSON report (default stdout)");

    // filter-echo
    auto* fe = app.add_subcommand("filter-echo", "keep a band around one chirp ridge and invert");
    TransformArgs fa;
    fa.add_to(fe, "log:300:1500:128");
    std::string fe_in, fe_out, fe_ref;
    double fe_alpha = 80, fe_beta = 30, fe_c = 1;
    std::size_t fe_half = 3;
    fe->add_option("--in", fe_in, "signal CSV")->required();
    fe->add_option("--alpha", fe_alpha, "ridge start frequency [Hz]")->capture_default_str();
    fe->add_option("--beta", fe_beta, "ridge frequency rate [Hz/s]")->capture_default_str();
    fe->add_option("--halfwidth", fe_half, "mask half width in scale bins")->capture_default_str();
    fe->add_option("--c", fe_c, "admissibility constant used by the inverse")->capture_default_str();
    fe->add_option("--reference", fe_ref, "clean signal CSV; prints the normalized correlation");
    fe->add_option("--out", fe_out, "signal CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }

    set_max_threads(threads);
    warning_sink() = [](const std::string& m) { std::cerr << "warning: " << m << '\n'; };

    try {
        if (*synth) {
            chirp::LfmSpec spec{{{alpha, beta, {1, 0}}}, dur, rate};
            std::optional<chirp::EchoSpec> echo;
            if (lfm->count("--echo-delay"))
                echo = chirp::EchoSpec{echo_delay, {echo_att, 0}};
            io::write_signal_csv(chirp::synth_lfm(spec, echo), synth_out);
        } else if (*analyze) {
            auto f = io::read_signal_csv(an_in);
            auto bax = strided(f, an_stride);
            TfrGrid G = an_kind == "st" ? st_forward(f, an.psi(), an.axis(), bax)
                                        : sast_forward(f, an.psi(), an.N(), an.axis(), bax);
            io::write_grid(G, an_out);
            config::write_provenance(G, an_out + ".json");
            if (!an_heat.empty())
                io::heatmap_export(G, an_heat);
        } else if (*invert) {
            TfrGrid G = io::read_grid(inv_grid);
            config::apply_provenance(G, inv_grid + ".json");
            double c = inv_c;
            if (!invert->count("--c")) {
                const SaftParams& N = G.params;
                c = admissibility_constant(G.window, N, G.scales,
                                           linspace(N.p - 8 * std::abs(N.B), N.p + 8 * std::abs(N.B), 17))
                        .c_psi;
            }
            auto g = G.tag == TransformTag::ST ? st_inverse(G, G.window, c) : sast_inverse(G, G.window, c);
            io::write_signal_csv(g, inv_out);
        } else if (*verify) {
            auto f = io::read_signal_csv(ve_in);
            auto N = ve.N();
            auto psi = ve.psi();
            auto sc = ve.axis();
            double c = admissibility_constant(psi, N, sc, probe_axis_for(f, N)).c_psi;
            json j{{"schema_version", 1}, {"suite", ve_suite}, {"c_psi", c}};
            if (ve_suite == "rayleigh") {
                double lhs = sast_forward(f, psi, N, sc).energy();
                double rhs = c / (2 * pi) * signal_energy(f);
                double ratio = lhs / rhs;
                j.update(json{{"lhs", lhs}, {"rhs_bound", rhs}, {"ratio", ratio},
                              {"passed", std::abs(ratio - 1) <= 0.03}});
            } else if (ve_suite == "heisenberg") {
                auto r = heisenberg_check(f, psi, N, c, sc);
                j.update(report_json(r));
                j["ratio_against_bound_over_sqrt_2pi"] = r.ratio * std::sqrt(2 * pi);
            } else {
                j.update(report_json(log_ucp_check(f, psi, N, c, sc)));
            }
            emit_json(j, ve_out);
        } else if (*adm) {
            auto N = ad.N();
            rvec probes;
            if (!ad_probes.empty())
                probes = config::parse_axis(ad_probes);
            else if (!ad_in.empty())
                probes = probe_axis_for(io::read_signal_csv(ad_in), N);
            else
                probes = linspace(N.p - 8 * std::abs(N.B), N.p + 8 * std::abs(N.B), 17);
            auto r = admissibility_constant(ad.psi(), N, ad.axis(), probes);
            json pf = json::array();
            for (auto [w, c] : r.per_frequency)
                pf.push_back({{"w", w}, {"c", c}});
            emit_json(json{{"schema_version", 1},
                           {"c_psi", r.c_psi},
                           {"max_relative_spread", r.max_relative_spread},
                           {"truncation_warning", r.truncation_warning},
                           {"tail_fraction", r.tail_fraction},
                           {"per_frequency", pf}},
                      ad_out);
        } else if (*cmp) {
            auto f = io::read_signal_csv(cm_in);
            std::vector<chirp::MethodSpec> methods{
                {chirp::MethodKind::STFT, {}, cm.psi(), cm_sigma, "STFT"},
                {chirp::MethodKind::ST, {}, cm.psi(), cm_sigma, "ST"},
                {chirp::MethodKind::SAST, cm.N(), cm.psi(), cm_sigma, "SAST"}};
            auto res = chirp::compare_methods(f, methods, cm.axis(), strided(f, cm_stride));
            json m = json::array();
            for (const auto& r : res) {
                m.push_back({{"method", r.label},
                             {"concentration", r.metric.defined ? json(r.metric.value) : json(nullptr)}});
                if (!cm_heat.empty()) {
                    std::filesystem::create_directories(cm_heat);
                    io::heatmap_export(r.grid, (std::filesystem::path(cm_heat) / (r.label + ".pgm")).string());
                }
            }
            emit_json(json{{"schema_version", 1}, {"methods", m}}, cm_out);
        } else if (*fe) {
            auto f = io::read_signal_csv(fe_in);
            auto N = fa.N();
            auto psi = fa.psi();
            auto sc = fa.axis();
            auto bax = BAxis::full(f);
            chirp::LfmComponent comp{fe_alpha, fe_beta, {1, 0}};
            TfrGrid G = sast_forward(f, psi, N, sc, bax);
            auto mask = chirp::ridge_mask(G, [&](double b) { return chirp::ridge_scale(comp, N, b); }, fe_half);
            auto out = chirp::echo_filter(f, mask, psi, N, fe_c, sc, bax);
            io::write_signal_csv(out, fe_out);
            if (!fe_ref.empty()) {
                auto ref = io::read_signal_csv(fe_ref);
                if (ref.size() != out.size())
                    throw Error(Errc::grid_mismatch, "reference and output lengths differ");
                emit_json(json{{"schema_version", 1},
                               {"correlation", chirp::normalized_correlation(out.samples, ref.samples)},
                               {"input_correlation", chirp::normalized_correlation(f.samples, ref.samples)}},
                          "");
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_numerical(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
