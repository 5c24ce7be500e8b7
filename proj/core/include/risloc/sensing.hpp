#ifndef RISLOC_SENSING_HPP
#define RISLOC_SENSING_HPP

#include <array>

#include "risloc/beamforming.hpp"
#include "risloc/localization.hpp"
#include "risloc/scenario.hpp"

namespace risloc {

/// Unit-norm spherical-wave array response toward a point:
/// element m is exp(-j 2 pi / lambda * ||s_m - target||), normalized.
CxVector steering_vector(const ArrayGeometry& geometry, const Position3D& target,
                         const RadioConfig& cfg);

/// Wide sensing beam: LoS-conjugate weights of the sensing subarray aimed at
/// the scenario's BS beam target.
BeamWeights wide_beam_weights(const Scenario& sc);

/// Directive communication beam: full-array MRT toward a point.
BeamWeights directive_beam_weights(const Scenario& sc, const Position3D& target);

/// Static RIS phase configurations, programmed once from the BS -> RIS ->
/// second-quadrant-target geometry so user reflections return to the BS.
std::array<RisPhaseConfig, 2> static_ris_phases(const Scenario& sc);

/// The three sensing cascades for one trial: the direct user echo (M x 1)
/// and the two RIS-assisted echoes. Every segment carries its own path loss
/// and independent Rice fading; the user reflection is alpha * exp(j phi)
/// with phi uniform.
struct SensingCascade {
    CxVector h_bu;                       // BS -> UE -> BS
    std::array<CxVector, 2> h_urb;       // UE -> RIS_i -> BS
    Complex theta_ue;
};

SensingCascade sensing_cascade(const Scenario& sc, const Position3D& ue, SeededRng& rng);

/// Three round-trip times plus the received array snapshots presented to the
/// path identifier, in an arbitrary (shuffled) order.
struct SensingObservation {
    std::array<double, 3> toa_s{};       // observation order, not path order
    std::array<CxVector, 3> rx_signals;
    double snr_linear = 0.0;
    std::array<int, 3> true_slot_of_path{};  // ground truth, for accuracy accounting
};

/// Round-trip ToA per path with Gaussian timing noise of standard deviation
/// |h_k| * tau_scale / sqrt(SNR), h_k a unit-power Rice fading draw per path.
std::array<double, 3> toa_model(const Scenario& sc, const Position3D& true_position,
                                double snr_linear, SeededRng& rng);

/// Full observation: ToA draws plus per-path array snapshots
/// x_hat = sqrt(M * SNR) * a_path + CN(0, I), shuffled into a random order.
SensingObservation observe(const Scenario& sc, const Position3D& true_position,
                           double snr_linear, SeededRng& rng);

struct PathLabeling {
    std::array<int, 3> assignment{};   // assignment[path] = observation index
    bool conflict = false;             // both steering vectors picked one signal
};

/// Correlation-based path identification: Path2 maximizes |a(RIS1)^H x|,
/// Path3 maximizes it over the remaining signals for a(RIS2), Path1 is the
/// leftover. A double claim is resolved by the best two-signal assignment.
PathLabeling identify_paths(const SensingObservation& obs, const CxVector& sv_ris1,
                            const CxVector& sv_ris2);

/// ToA inversion: d1 = c t1 / 2, d2 = c t2 - d1 - d_R1BS, d3 likewise.
/// Negative derived ranges are infeasible.
struct RangeResult {
    bool feasible = false;
    RangeTriple ranges;
};

RangeResult ranges_from_toa(const std::array<double, 3>& toa_s, const AnchorSet& anchors);

enum class TrialFailure { None, InfeasibleRanges, SolveFailed };

struct SenseOutcome {
    bool success = false;           // an estimate was produced
    TrialFailure failure = TrialFailure::None;
    PositionEstimate estimate;
    double loc_error_m = 0.0;       // +inf when no estimate
    bool labeling_conflict = false;
    bool labeling_correct = false;  // against the ground-truth path order
};

/// One sensing trial end to end: cascade channels, ToA/AoA observation, path
/// identification, ToA inversion, closed-form trilateration. Failures are
/// reported, never thrown.
SenseOutcome sense_and_locate(const Scenario& sc, const Position3D& true_position,
                              double reported_height, double snr_linear, SeededRng& rng);

} // namespace risloc

#endif
