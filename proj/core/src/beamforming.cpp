#include "risloc/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace risloc {

BeamWeights mrt_weights(const CxVector& h) {
    const double n = h.norm();
    if (n <= 0.0)
        throw std::invalid_argument("mrt_weights: zero channel vector");
    // Stored as the unit-norm column aligned with h, so h^H w = ||h||.
    return BeamWeights{h / n};
}

RisPhaseConfig passive_beamforming(const BeamWeights& w, const CxMatrix& g, const CxVector& h) {
    if (g.cols() != w.w.size() || g.rows() != h.size())
        throw std::invalid_argument("passive_beamforming: dimension mismatch");
    // Per-element contribution j: (w^H G^H)_j * h_j; theta cancels its phase.
    const CxVector wg = g * w.w;  // (w^H G^H)^H, N x 1
    RisPhaseConfig cfg;
    cfg.theta.resize(h.size());
    for (Eigen::Index j = 0; j < h.size(); ++j) {
        const Complex contrib = std::conj(wg(j)) * h(j);
        if (std::abs(contrib) == 0.0) {
            cfg.theta(j) = Complex{1.0, 0.0};
            cfg.had_undefined_phase = true;
        } else {
            cfg.theta(j) = std::polar(1.0, -std::arg(contrib));
        }
    }
    return cfg;
}

AlternatingResult alternate_optimize(const CxVector& h_los,
                                     const std::vector<CxMatrix>& g_bs_ris,
                                     const std::vector<CxVector>& f_ris_ue,
                                     int iterations) {
    if (iterations < 1)
        throw std::invalid_argument("alternate_optimize: iterations must be >= 1");
    const std::size_t n_ris = g_bs_ris.size();
    AlternatingResult res;
    res.phases.resize(n_ris);
    std::vector<CxVector> theta(n_ris);
    for (std::size_t i = 0; i < n_ris; ++i)
        theta[i] = CxVector::Ones(g_bs_ris[i].rows());

    for (int it = 0; it < iterations; ++it) {
        const CxVector h = composite_channel(h_los, g_bs_ris, f_ris_ue, theta);
        res.weights = mrt_weights(h);
        for (std::size_t i = 0; i < n_ris; ++i) {
            res.phases[i] = passive_beamforming(res.weights, g_bs_ris[i], f_ris_ue[i]);
            theta[i] = res.phases[i].theta;
        }
        const CxVector h_new = composite_channel(h_los, g_bs_ris, f_ris_ue, theta);
        res.gain_history.push_back(std::norm(Complex(h_new.adjoint() * res.weights.w)));
    }
    return res;
}

double noise_power(const RadioConfig& cfg) {
    if (cfg.bandwidth_hz <= 0.0)
        throw std::invalid_argument("noise_power: bandwidth must be positive");
    return std::pow(10.0, cfg.noise_psd_dbm_hz / 10.0 - 3.0) * cfg.bandwidth_hz;
}

double snr(const CxVector& h, const BeamWeights& w, double p_tx_w, double sigma2_w) {
    if (sigma2_w <= 0.0)
        throw std::invalid_argument("snr: noise power must be positive");
    return p_tx_w * std::norm(Complex(h.adjoint() * w.w)) / sigma2_w;
}

double snr_db(const CxVector& h, const BeamWeights& w, double p_tx_w, double sigma2_w) {
    return 10.0 * std::log10(snr(h, w, p_tx_w, sigma2_w));
}

double sinr(const std::vector<CxVector>& h_all, const std::vector<BeamWeights>& w_all,
            std::size_t k, double sigma2_w) {
    if (k >= h_all.size() || k >= w_all.size())
        throw std::out_of_range("sinr: user index out of range");
    if (sigma2_w <= 0.0)
        throw std::invalid_argument("sinr: noise power must be positive");
    const double signal = std::norm(Complex(h_all[k].adjoint() * w_all[k].w));
    double interference = 0.0;
    for (std::size_t i = 0; i < h_all.size(); ++i) {
        if (i == k) continue;
        interference += std::norm(Complex(h_all[i].adjoint() * w_all[k].w));
    }
    return signal / (interference + sigma2_w);
}

namespace {
CxVector effective_channel(const CxMatrix& g, const RisPhaseConfig& theta, const CxVector& h) {
    if (g.rows() != theta.theta.size() || g.rows() != h.size())
        throw std::invalid_argument("nlos metric: dimension mismatch");
    return g.adjoint() * theta.theta.asDiagonal() * h;
}
} // namespace

double nlos_snr(const CxMatrix& g, const RisPhaseConfig& theta, const CxVector& h,
                const BeamWeights& w, double sigma2_w) {
    return snr(effective_channel(g, theta, h), w, 1.0, sigma2_w);
}

double nlos_sinr(const CxMatrix& g, const RisPhaseConfig& theta,
                 const std::vector<CxVector>& h_all, const BeamWeights& w_k,
                 std::size_t k, double sigma2_w) {
    std::vector<CxVector> eff;
    eff.reserve(h_all.size());
    for (const auto& h : h_all)
        eff.push_back(effective_channel(g, theta, h));
    std::vector<BeamWeights> w_all(h_all.size(), w_k);
    return sinr(eff, w_all, k, sigma2_w);
}

SensingPower sensing_power(double p_bs_w, const CxVector& h_bu, const BeamWeights& w_wide,
                           const std::vector<double>& p_ris_w) {
    if (h_bu.size() != w_wide.w.size())
        throw std::invalid_argument("sensing_power: dimension mismatch");
    SensingPower p;
    p.p_bs_sens_w = p_bs_w * std::norm(Complex(h_bu.adjoint() * w_wide.w));
    p.p_total_w = p.p_bs_sens_w;
    for (double pr : p_ris_w)
        p.p_total_w += pr;
    return p;
}

} // namespace risloc
