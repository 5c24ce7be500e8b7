#ifndef RISLOC_METRICS_HPP
#define RISLOC_METRICS_HPP

#include <cstdint>
#include <vector>

#include "risloc/scenario.hpp"
#include "risloc/sensing.hpp"

namespace risloc {

struct TrialRecord {
    Position3D true_position;
    Position3D estimated_position;   // meaningful only when has_estimate
    bool has_estimate = false;
    double loc_error_m = 0.0;        // +inf when no estimate
    bool labeling_correct = false;
    std::uint32_t bits_sent = 0;
    std::uint32_t bit_errors = 0;

    bool loc_success(double eps_lth_m) const { return loc_error_m <= eps_lth_m; }
    bool packet_ok() const { return bit_errors == 0; }
    bool isac_success(double eps_lth_m) const { return loc_success(eps_lth_m) && packet_ok(); }
};

struct IsacErrorModel {
    double p_loc_fail = 0.0;
    double p_comm_error = 0.0;
};

/// Mean squared position error over trials that produced an estimate.
double mse(const std::vector<TrialRecord>& records);

/// Fraction of trials with loc_error <= eps_lth (failed trials count out).
double sensing_success_rate(const std::vector<TrialRecord>& records, double eps_lth_m);

/// Union probability of two independent failure events: a + b - a*b.
double isac_error_probability(const IsacErrorModel& model);

/// Fraction of trials succeeding at both sensing and communication.
double isac_success_rate_sim(const std::vector<TrialRecord>& records, double eps_lth_m);

/// Median of the per-trial localization errors; failed trials enter as +inf.
double median_loc_error(const std::vector<TrialRecord>& records);

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval at 95% for a binomial success count.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n);

struct SweepPoint {
    double snr_db = 0.0;
    double threshold_m = 0.0;
    int n_trials = 0;
    double sr_sens = 0.0;
    double sr_isac_sim = 0.0;
    double sr_isac_analytic = 0.0;
    double ber_sim = 0.0;
    double ber_theory = 0.0;
    double ci_low = 0.0;   // Wilson 95% on sr_isac_sim
    double ci_high = 0.0;
};

/// One full sensing + packet trial. The packet is a 40-bit payload whose bit
/// errors follow the stated BPSK error model at the trial SNR; its noise is
/// drawn independently of the sensing noise.
TrialRecord run_trial(const Scenario& sc, double snr_linear, SeededRng& rng);

/// All trials for one SNR point, parallel across a fixed per-trial stream
/// layout so results do not depend on thread count.
std::vector<TrialRecord> run_trials(const Scenario& sc, double snr_db, int n_trials,
                                    std::uint64_t master_seed, std::uint64_t stream_offset = 0);

/// Full sweep: for each (snr, threshold) pair emits the simulated and the
/// analytic ISAC success rates plus the BER columns. Deterministic given the
/// master seed.
std::vector<SweepPoint> run_monte_carlo(const Scenario& sc, const std::vector<double>& snr_db,
                                        const std::vector<double>& thresholds_m, int n_trials,
                                        std::uint64_t master_seed);

/// CSV emission for the sweep (stable documented header).
std::string sweep_to_csv(const std::vector<SweepPoint>& points);

} // namespace risloc

#endif
