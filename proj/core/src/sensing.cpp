#include "risloc/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace risloc {

CxVector steering_vector(const ArrayGeometry& geometry, const Position3D& target,
                         const RadioConfig& cfg) {
    const double lambda = cfg.wavelength();
    CxVector a(geometry.element_count);
    for (int m = 0; m < geometry.element_count; ++m) {
        const double d = geometry.element_position(m).distance_to(target);
        if (d <= 0.0)
            throw std::invalid_argument("steering_vector: target coincides with an element");
        a(m) = std::polar(1.0, -2.0 * std::numbers::pi / lambda * d);
    }
    a.normalize();
    return a;
}

BeamWeights wide_beam_weights(const Scenario& sc) {
    return mrt_weights(steering_vector(sc.bs_sensing_array(), sc.beam_target_bs, sc.radio));
}

BeamWeights directive_beam_weights(const Scenario& sc, const Position3D& target) {
    return mrt_weights(steering_vector(sc.bs_array(), target, sc.radio));
}

std::array<RisPhaseConfig, 2> static_ris_phases(const Scenario& sc) {
    const BeamWeights w = wide_beam_weights(sc);
    std::array<RisPhaseConfig, 2> phases;
    const ArrayGeometry target_point{sc.beam_target_ris, 1, 0.0, {1.0, 0.0, 0.0}};
    for (int i = 0; i < 2; ++i) {
        const ArrayGeometry ris = sc.ris_array(i);
        const CxMatrix g = los_channel(sc.bs_sensing_array(), ris, sc.radio);  // N x M
        const CxVector h = los_channel(target_point, ris, sc.radio).col(0);    // N x 1
        phases[i] = passive_beamforming(w, g, h);
    }
    return phases;
}

SensingCascade sensing_cascade(const Scenario& sc, const Position3D& ue, SeededRng& rng) {
    for (const Position3D* anchor : {&sc.anchors.bs, &sc.anchors.ris1, &sc.anchors.ris2})
        if (ue.distance_to(*anchor) <= 0.0)
            throw std::invalid_argument("sensing_cascade: user coincides with an anchor");

    const ArrayGeometry ue_point{ue, 1, 0.0, {1.0, 0.0, 0.0}};
    const ArrayGeometry bs = sc.bs_sensing_array();
    const std::array<RisPhaseConfig, 2> phases = static_ris_phases(sc);

    SensingCascade cascade;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    cascade.theta_ue = std::polar(sc.theta_ue_amplitude, phi);

    // Path 1: BS -> UE (M x 1) scaled by the user reflection and the
    // unit-distance-normalized return segment.
    const CxVector h_bs_ue = rice_channel(bs, ue_point, sc.radio, rng).row(0).transpose().conjugate();
    const Complex h_ur = rice_fading_factor(sc.radio.rice_factor, rng);
    cascade.h_bu = h_bs_ue * (cascade.theta_ue * h_ur);

    // Paths 2 and 3: UE -> RIS_i (N x 1), static reflection, RIS_i -> BS (N x M).
    for (int i = 0; i < 2; ++i) {
        const ArrayGeometry ris = sc.ris_array(i);
        const CxVector h_ur_i = rice_channel(ue_point, ris, sc.radio, rng).col(0);
        const CxMatrix h_rb = rice_channel(bs, ris, sc.radio, rng);  // N x M
        const CxVector row = (h_ur_i.adjoint() * phases[i].theta.asDiagonal() * h_rb)
                                 .transpose()
                                 .conjugate();
        cascade.h_urb[i] = row * cascade.theta_ue;
    }
    return cascade;
}

std::array<double, 3> toa_model(const Scenario& sc, const Position3D& true_position,
                                double snr_linear, SeededRng& rng) {
    if (snr_linear <= 0.0)
        throw std::invalid_argument("toa_model: SNR must be positive");
    const RangeTriple d = forward_ranges(sc.anchors, true_position);
    const double d_r1bs = sc.anchors.ris1.distance_to(sc.anchors.bs);
    const double d_r2bs = sc.anchors.ris2.distance_to(sc.anchors.bs);

    const std::array<double, 3> clean{
        2.0 * d.d1 / kSpeedOfLight,
        (d.d1 + d.d2 + d_r1bs) / kSpeedOfLight,
        (d.d1 + d.d3 + d_r2bs) / kSpeedOfLight,
    };
    std::array<double, 3> toa{};
    for (int k = 0; k < 3; ++k) {
        const double h_mag = std::abs(rice_fading_factor(sc.radio.rice_factor, rng));
        const double sigma_tau = h_mag * sc.toa_tau_scale_s / std::sqrt(snr_linear);
        toa[k] = clean[k] + (sigma_tau > 0.0 ? rng.gaussian(sigma_tau) : 0.0);
    }
    return toa;
}

SensingObservation observe(const Scenario& sc, const Position3D& true_position,
                           double snr_linear, SeededRng& rng) {
    SensingObservation obs;
    obs.snr_linear = snr_linear;
    const std::array<double, 3> toa = toa_model(sc, true_position, snr_linear, rng);

    const ArrayGeometry bs = sc.bs_sensing_array();
    const std::array<CxVector, 3> arrival{
        steering_vector(bs, true_position, sc.radio),
        steering_vector(bs, sc.anchors.ris1, sc.radio),
        steering_vector(bs, sc.anchors.ris2, sc.radio),
    };
    const double amp = std::sqrt(snr_linear * bs.element_count);

    // Random presentation order: the BS does not know which echo is which.
    std::array<int, 3> order{0, 1, 2};
    for (int i = 2; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.uniform() * (i + 1))]);

    for (int slot = 0; slot < 3; ++slot) {
        const int path = order[slot];
        CxVector x = amp * arrival[path];
        for (Eigen::Index m = 0; m < x.size(); ++m)
            x(m) += rng.complex_gaussian(0.5);
        obs.rx_signals[slot] = std::move(x);
        obs.toa_s[slot] = toa[path];
    }
    // Ground truth for labeling-accuracy accounting rides along in the order
    // array; recover it by inverting the permutation.
    obs.true_slot_of_path = {0, 0, 0};
    for (int slot = 0; slot < 3; ++slot)
        obs.true_slot_of_path[order[slot]] = slot;
    return obs;
}

PathLabeling identify_paths(const SensingObservation& obs, const CxVector& sv_ris1,
                            const CxVector& sv_ris2) {
    std::array<double, 3> corr1{}, corr2{};
    for (int i = 0; i < 3; ++i) {
        corr1[i] = std::abs(Complex(sv_ris1.adjoint() * obs.rx_signals[i]));
        corr2[i] = std::abs(Complex(sv_ris2.adjoint() * obs.rx_signals[i]));
    }
    const int pick2 = static_cast<int>(std::distance(
        corr1.begin(), std::max_element(corr1.begin(), corr1.end())));
    const int pick3_global = static_cast<int>(std::distance(
        corr2.begin(), std::max_element(corr2.begin(), corr2.end())));

    PathLabeling lab;
    int pick3 = pick3_global;
    if (pick3_global == pick2) {
        lab.conflict = true;
        // Both steering vectors claim one signal: take the two-signal
        // assignment maximizing the summed correlations.
        double best = -1.0;
        int best2 = pick2, best3 = pick2;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                const double score = corr1[i] + corr2[j];
                if (score > best) { best = score; best2 = i; best3 = j; }
            }
        lab.assignment[1] = best2;
        pick3 = best3;
    } else {
        // Path3 maximizes corr2 over the signals not already claimed.
        pick3 = -1;
        double best = -1.0;
        for (int i = 0; i < 3; ++i) {
            if (i == pick2) continue;
            if (corr2[i] > best) { best = corr2[i]; pick3 = i; }
        }
        lab.assignment[1] = pick2;
    }
    lab.assignment[2] = pick3;
    lab.assignment[0] = 3 - lab.assignment[1] - lab.assignment[2];
    return lab;
}

RangeResult ranges_from_toa(const std::array<double, 3>& toa_s, const AnchorSet& anchors) {
    RangeResult r;
    const double d1 = kSpeedOfLight * toa_s[0] / 2.0;
    if (d1 <= 0.0) return r;
    const double d2 = kSpeedOfLight * toa_s[1] - d1 - anchors.ris1.distance_to(anchors.bs);
    const double d3 = kSpeedOfLight * toa_s[2] - d1 - anchors.ris2.distance_to(anchors.bs);
    if (d2 <= 0.0 || d3 <= 0.0) return r;
    r.feasible = true;
    r.ranges = {d1, d2, d3};
    return r;
}

SenseOutcome sense_and_locate(const Scenario& sc, const Position3D& true_position,
                              double reported_height, double snr_linear, SeededRng& rng) {
    SenseOutcome out;
    out.loc_error_m = std::numeric_limits<double>::infinity();

    const SensingObservation obs = observe(sc, true_position, snr_linear, rng);
    const ArrayGeometry bs = sc.bs_sensing_array();
    const CxVector sv1 = steering_vector(bs, sc.anchors.ris1, sc.radio);
    const CxVector sv2 = steering_vector(bs, sc.anchors.ris2, sc.radio);
    const PathLabeling lab = identify_paths(obs, sv1, sv2);
    out.labeling_conflict = lab.conflict;
    out.labeling_correct = lab.assignment[0] == obs.true_slot_of_path[0] &&
                           lab.assignment[1] == obs.true_slot_of_path[1] &&
                           lab.assignment[2] == obs.true_slot_of_path[2];

    const std::array<double, 3> labeled_toa{
        obs.toa_s[lab.assignment[0]], obs.toa_s[lab.assignment[1]], obs.toa_s[lab.assignment[2]]};
    const RangeResult ranges = ranges_from_toa(labeled_toa, sc.anchors);
    if (!ranges.feasible) {
        out.failure = TrialFailure::InfeasibleRanges;
        return out;
    }
    out.estimate = solve_closed_form(sc.anchors, ranges.ranges, reported_height);
    if (out.estimate.status != SolveStatus::Ok) {
        out.failure = TrialFailure::SolveFailed;
        return out;
    }
    out.success = true;
    out.loc_error_m = (out.estimate.position - true_position).norm();
    return out;
}

} // namespace risloc
