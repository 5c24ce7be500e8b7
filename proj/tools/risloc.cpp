// Command-line front end: emits CSV/text artifacts for the deployment
// described by a scenario config. Exit codes: 0 ok, 1 usage, 2 validation,
// 3 runtime or CRC failure.

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "risloc/beamforming.hpp"
#include "risloc/metrics.hpp"
#include "risloc/modem.hpp"
#include "risloc/protocol.hpp"
#include "risloc/sensing.hpp"

using namespace risloc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::vector<double> snr_list;
    std::vector<double> threshold_list;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_sweep) {
    cmd->add_option("--config", opts.config_path, "scenario config file (key = value)");
    cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
    cmd->add_option("--seed", opts.seed, "override the scenario master seed");
    if (with_sweep) {
        cmd->add_option("--trials", opts.trials, "Monte Carlo trials per sweep point");
        cmd->add_option("--snr-list", opts.snr_list, "SNR points in dB")->delimiter(',');
        cmd->add_option("--threshold-list", opts.threshold_list,
                        "success thresholds in meters")
            ->delimiter(',');
    }
}

Scenario make_scenario(const CommonOpts& opts) {
    Scenario sc = opts.config_path.empty() ? Scenario{} : load_scenario(opts.config_path);
    if (opts.seed) sc.master_seed = *opts.seed;
    if (opts.trials) sc.n_trials = *opts.trials;
    sc.validate();
    return sc;
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + opts.out_path + "'");
    out << text;
}

std::vector<double> snrs_or_default(const CommonOpts& opts) {
    if (!opts.snr_list.empty()) return opts.snr_list;
    return {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0};
}

// Array gain of a fixed beam evaluated over the xy grid, peak-normalized per
// column so the two patterns are directly comparable.
std::string beam_pattern_csv(const Scenario& sc) {
    const GridSpec grid;
    const BeamWeights wide = wide_beam_weights(sc);
    const BeamWeights directive = directive_beam_weights(sc, sc.beam_target_bs);
    const ArrayGeometry sens = sc.bs_sensing_array();
    const ArrayGeometry full = sc.bs_array();

    std::ostringstream out;
    out.precision(8);
    out << "x,y,gain_db_wide,gain_db_directive\n";
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Position3D p{grid.x_min + ix * grid.resolution,
                               grid.y_min + iy * grid.resolution, grid.z};
            if (p.distance_to(sc.anchors.bs) <= 0.0) continue;
            const double g_wide =
                std::norm(Complex(steering_vector(sens, p, sc.radio).adjoint() * wide.w));
            const double g_dir =
                std::norm(Complex(steering_vector(full, p, sc.radio).adjoint() * directive.w));
            out << p.x << ',' << p.y << ',' << 10.0 * std::log10(g_wide) << ','
                << 10.0 * std::log10(g_dir) << '\n';
        }
    }
    return out.str();
}

// Deterministic user -> RIS -> BS cascade power over the grid, static RIS
// phases, LoS segments. Shows where a reflecting user is visible to the BS.
std::string visibility_csv(const Scenario& sc) {
    const GridSpec grid;
    const BeamWeights w = wide_beam_weights(sc);
    const auto phases = static_ris_phases(sc);
    const ArrayGeometry bs = sc.bs_sensing_array();

    std::ostringstream out;
    out.precision(8);
    out << "x,y,rx_power_dbm\n";
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Position3D p{grid.x_min + ix * grid.resolution,
                               grid.y_min + iy * grid.resolution, grid.z};
            const ArrayGeometry user{p, 1, 0.0, {1.0, 0.0, 0.0}};
            Complex combined{0.0, 0.0};
            bool degenerate = false;
            for (int i = 0; i < 2; ++i) {
                const ArrayGeometry ris = sc.ris_array(i);
                if (p.distance_to(ris.center) <= 0.0) { degenerate = true; break; }
                const double b_ur = path_loss(p, ris.center, sc.radio);
                const double b_rb = path_loss(ris.center, sc.anchors.bs, sc.radio);
                const CxVector f = b_ur * los_channel(user, ris, sc.radio).col(0);
                const CxMatrix g = b_rb * los_channel(bs, ris, sc.radio);
                const CxVector h_urb =
                    (f.adjoint() * phases[i].theta.asDiagonal() * g).transpose().conjugate();
                combined += Complex(h_urb.adjoint() * w.w);
            }
            if (degenerate) continue;
            const double p_rx_w = sc.radio.tx_power_w * std::norm(combined);
            out << p.x << ',' << p.y << ',' << 10.0 * std::log10(p_rx_w * 1000.0) << '\n';
        }
    }
    return out.str();
}

std::string localize_csv(const Scenario& sc, const std::vector<double>& snrs) {
    std::ostringstream out;
    out.precision(10);
    out << "snr_db,n_trials,sr_sens,mse_m2,median_error_m\n";
    for (std::size_t s = 0; s < snrs.size(); ++s) {
        const auto recs = run_trials(sc, snrs[s], sc.n_trials, sc.master_seed,
                                     s * static_cast<std::uint64_t>(sc.n_trials));
        out << snrs[s] << ',' << sc.n_trials << ','
            << sensing_success_rate(recs, sc.eps_lth_m) << ',' << mse(recs) << ','
            << median_loc_error(recs) << '\n';
    }
    return out.str();
}

std::string ber_csv(const Scenario& sc, const std::vector<double>& snrs) {
    std::ostringstream out;
    out.precision(10);
    out << "snr_db,scheme,n_bits,ber_sim,ber_theory,ber_matched_filter\n";
    const std::uint64_t n_bits = 200'000;
    for (std::size_t s = 0; s < snrs.size(); ++s) {
        const double gamma = std::pow(10.0, snrs[s] / 10.0);
        for (ModScheme scheme : {ModScheme::Bpsk, ModScheme::Qam16}) {
            SeededRng rng(sc.master_seed, s * 2 + (scheme == ModScheme::Qam16));
            const BerSample sample = simulate_ber(scheme, gamma, n_bits,
                                                  BerChannel::NormalizedFixed,
                                                  sc.radio.rice_factor, rng);
            out << snrs[s] << ',' << (scheme == ModScheme::Bpsk ? "bpsk" : "qam16") << ','
                << sample.bits_sent << ',' << sample.ber() << ','
                << theoretical_ber(scheme, gamma) << ','
                << (scheme == ModScheme::Bpsk ? matched_filter_bpsk_ber(gamma) : 0.0)
                << '\n';
        }
    }
    return out.str();
}

std::string isac_csv(const Scenario& sc, const std::vector<double>& snrs,
                     std::vector<double> thresholds) {
    if (thresholds.empty()) thresholds = {sc.eps_lth_m};
    const auto points = run_monte_carlo(sc, snrs, thresholds, sc.n_trials, sc.master_seed);
    return sweep_to_csv(points);
}

struct FrameOpts {
    std::string hex;
    std::string kind = "sensing";
    std::uint32_t user_id = 0;
    std::uint32_t timestamp = 0;
    bool permission = false;
    double height_m = 0.0;
};

std::string describe_sensing(const SensingFrame& f, std::uint64_t bits) {
    std::ostringstream out;
    out << "kind: sensing\nhex: " << frame_to_hex(bits) << "\npreamble: 0x" << std::hex
        << static_cast<int>(f.preamble) << std::dec << "\nuser_id: " << f.user_id
        << "\ntimestamp: " << static_cast<int>(f.timestamp) << "\ncrc: ok\n";
    return out.str();
}

std::string describe_response(const ResponseFrame& f, std::uint64_t bits) {
    std::ostringstream out;
    out << "kind: response\nhex: " << frame_to_hex(bits) << "\nuser_id: " << f.user_id
        << "\npermission: " << (f.permission ? "granted" : "denied")
        << "\nheight_m: " << f.height_m << "\ncrc: ok\n";
    return out.str();
}

int run_frame(const FrameOpts& fo, const CommonOpts& opts) {
    if (!fo.hex.empty()) {
        const auto bits = frame_from_hex(fo.hex);
        if (!bits) {
            std::cerr << "error: malformed hex frame '" << fo.hex << "'\n";
            return kExitValidation;
        }
        if (fo.kind == "sensing") {
            const auto dec = decode_sensing_frame(*bits);
            if (!dec.frame) {
                std::cerr << "error: "
                          << (*dec.error == DecodeError::CrcMismatch ? "CRC mismatch"
                                                                     : "preamble mismatch")
                          << '\n';
                return kExitRuntime;
            }
            emit(opts, describe_sensing(*dec.frame, *bits));
        } else {
            const auto dec = decode_response_frame(*bits);
            if (!dec.frame) {
                std::cerr << "error: CRC mismatch\n";
                return kExitRuntime;
            }
            emit(opts, describe_response(*dec.frame, *bits));
        }
        return kExitOk;
    }
    if (fo.kind == "sensing") {
        SensingFrame f;
        f.user_id = fo.user_id;
        f.timestamp = static_cast<std::uint8_t>(fo.timestamp);
        emit(opts, describe_sensing(f, encode_sensing_frame(f)));
    } else {
        ResponseFrame f;
        f.user_id = fo.user_id;
        f.permission = fo.permission;
        f.height_m = fo.height_m;
        emit(opts, describe_response(f, encode_response_frame(f)));
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted localization and communication simulator"};
    app.require_subcommand(1);

    CommonOpts beam_opts, vis_opts, loc_opts, ber_opts, isac_opts, frame_common;
    FrameOpts frame_opts;

    CLI::App* beam = app.add_subcommand("beam-pattern", "array gain maps over the xy grid");
    add_common(beam, beam_opts, false);
    CLI::App* vis = app.add_subcommand("visibility", "reflected-power heatmap at the BS");
    add_common(vis, vis_opts, false);
    CLI::App* loc = app.add_subcommand("localize", "localization error sweep over SNR");
    add_common(loc, loc_opts, true);
    CLI::App* ber = app.add_subcommand("ber", "bit error rate sweep over SNR");
    add_common(ber, ber_opts, true);
    CLI::App* isac = app.add_subcommand("isac-sr", "joint sensing+communication success sweep");
    add_common(isac, isac_opts, true);

    CLI::App* frame = app.add_subcommand("frame", "encode or decode a 40-bit frame");
    add_common(frame, frame_common, false);
    frame->add_option("--hex", frame_opts.hex, "decode this 10-hex-digit frame");
    frame->add_option("--kind", frame_opts.kind, "frame kind: sensing or response")
        ->check(CLI::IsMember({"sensing", "response"}));
    frame->add_option("--user-id", frame_opts.user_id, "20-bit user id");
    frame->add_option("--timestamp", frame_opts.timestamp, "7-bit cycle counter");
    frame->add_flag("--permission", frame_opts.permission, "grant localization permission");
    frame->add_option("--height", frame_opts.height_m, "user height in meters (0..2.55)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (beam->parsed()) {
            emit(beam_opts, beam_pattern_csv(make_scenario(beam_opts)));
        } else if (vis->parsed()) {
            emit(vis_opts, visibility_csv(make_scenario(vis_opts)));
        } else if (loc->parsed()) {
            const Scenario sc = make_scenario(loc_opts);
            emit(loc_opts, localize_csv(sc, snrs_or_default(loc_opts)));
        } else if (ber->parsed()) {
            const Scenario sc = make_scenario(ber_opts);
            emit(ber_opts, ber_csv(sc, snrs_or_default(ber_opts)));
        } else if (isac->parsed()) {
            const Scenario sc = make_scenario(isac_opts);
            emit(isac_opts, isac_csv(sc, snrs_or_default(isac_opts),
                                     isac_opts.threshold_list));
        } else if (frame->parsed()) {
            return run_frame(frame_opts, frame_common);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
