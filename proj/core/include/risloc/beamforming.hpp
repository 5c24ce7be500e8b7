#ifndef RISLOC_BEAMFORMING_HPP
#define RISLOC_BEAMFORMING_HPP

#include <vector>

#include "risloc/channel.hpp"
#include "risloc/numerics.hpp"

namespace risloc {

/// Unit-norm precoding/combining vector.
struct BeamWeights {
    CxVector w;
};

/// Unit-modulus RIS reflection coefficients (amplitude fixed to 1).
struct RisPhaseConfig {
    CxVector theta;
    bool had_undefined_phase = false;  // some per-element contribution was zero
};

/// Phase-aligned unit-norm weights: |h^H w| = ||h||. Throws on a zero channel.
BeamWeights mrt_weights(const CxVector& h);

/// RIS phases aligning the per-element contributions w^H G^H Diag(h) theta
/// so they sum coherently (real, non-negative). Zero contributions get
/// theta_j = 1 and set had_undefined_phase.
RisPhaseConfig passive_beamforming(const BeamWeights& w, const CxMatrix& g, const CxVector& h);

struct AlternatingResult {
    BeamWeights weights;
    std::vector<RisPhaseConfig> phases;
    std::vector<double> gain_history;  // |h^H w|^2 after each iteration
};

/// Coordinate ascent between MRT on the composite channel and per-RIS
/// passive beamforming. Gain is non-decreasing across iterations.
AlternatingResult alternate_optimize(const CxVector& h_los,
                                     const std::vector<CxMatrix>& g_bs_ris,
                                     const std::vector<CxVector>& f_ris_ue,
                                     int iterations);

/// sigma_n^2 = 10^(N0/10 - 3) * B, with N0 in dBm/Hz. Watts.
double noise_power(const RadioConfig& cfg);

double snr(const CxVector& h, const BeamWeights& w, double p_tx_w, double sigma2_w);
double snr_db(const CxVector& h, const BeamWeights& w, double p_tx_w, double sigma2_w);

/// SINR_k = |h_k^H w_k|^2 / (sum_{i != k} |h_i^H w_k|^2 + sigma2).
double sinr(const std::vector<CxVector>& h_all, const std::vector<BeamWeights>& w_all,
            std::size_t k, double sigma2_w);

/// SNR/SINR with the RIS-reflected effective channel G^H Theta h substituted.
double nlos_snr(const CxMatrix& g, const RisPhaseConfig& theta, const CxVector& h,
                const BeamWeights& w, double sigma2_w);
double nlos_sinr(const CxMatrix& g, const RisPhaseConfig& theta,
                 const std::vector<CxVector>& h_all, const BeamWeights& w_k,
                 std::size_t k, double sigma2_w);

struct SensingPower {
    double p_bs_sens_w = 0.0;
    double p_total_w = 0.0;
};

/// P_BS_sens = P_BS * |h_bu^H w|^2; total adds the static RIS powers.
SensingPower sensing_power(double p_bs_w, const CxVector& h_bu, const BeamWeights& w_wide,
                           const std::vector<double>& p_ris_w);

} // namespace risloc

#endif
