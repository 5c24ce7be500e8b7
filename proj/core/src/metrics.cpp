#include "risloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "risloc/modem.hpp"

namespace risloc {

double mse(const std::vector<TrialRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("mse: empty record list");
    double total = 0.0;
    std::size_t n = 0;
    for (const TrialRecord& r : records) {
        if (!r.has_estimate) continue;
        const double e = (r.true_position - r.estimated_position).norm();
        total += e * e;
        ++n;
    }
    if (n == 0)
        throw std::invalid_argument("mse: no trial produced an estimate");
    return total / static_cast<double>(n);
}

double sensing_success_rate(const std::vector<TrialRecord>& records, double eps_lth_m) {
    if (records.empty())
        throw std::invalid_argument("sensing_success_rate: empty record list");
    if (eps_lth_m <= 0.0)
        throw std::invalid_argument("sensing_success_rate: threshold must be positive");
    std::size_t hits = 0;
    for (const TrialRecord& r : records)
        hits += r.loc_success(eps_lth_m);
    return static_cast<double>(hits) / static_cast<double>(records.size());
}

double isac_error_probability(const IsacErrorModel& model) {
    const double a = model.p_loc_fail, b = model.p_comm_error;
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)
        throw std::invalid_argument("isac_error_probability: probabilities must be in [0,1]");
    return a + b - a * b;
}

double isac_success_rate_sim(const std::vector<TrialRecord>& records, double eps_lth_m) {
    if (records.empty())
        throw std::invalid_argument("isac_success_rate_sim: empty record list");
    std::size_t hits = 0;
    for (const TrialRecord& r : records)
        hits += r.isac_success(eps_lth_m);
    return static_cast<double>(hits) / static_cast<double>(records.size());
}

double median_loc_error(const std::vector<TrialRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("median_loc_error: empty record list");
    std::vector<double> errors;
    errors.reserve(records.size());
    for (const TrialRecord& r : records)
        errors.push_back(r.loc_error_m);
    std::sort(errors.begin(), errors.end());
    const std::size_t n = errors.size();
    return n % 2 ? errors[n / 2] : 0.5 * (errors[n / 2 - 1] + errors[n / 2]);
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n) {
    if (n == 0)
        return {0.0, 1.0};
    constexpr double z = 1.959963984540054;  // 95%
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

Position3D draw_trial_position(const Scenario& sc, SeededRng& rng) {
    if (sc.trial_region_radius_m <= 0.0)
        return sc.trial_position;
    // Uniform over the disc, fixed z.
    const double r = sc.trial_region_radius_m * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    return {sc.trial_position.x + r * std::cos(phi),
            sc.trial_position.y + r * std::sin(phi),
            sc.trial_position.z};
}

} // namespace

TrialRecord run_trial(const Scenario& sc, double snr_linear, SeededRng& rng) {
    TrialRecord rec;
    rec.true_position = draw_trial_position(sc, rng);

    const SenseOutcome outcome =
        sense_and_locate(sc, rec.true_position, rec.true_position.z, snr_linear, rng);
    rec.has_estimate = outcome.success;
    rec.loc_error_m = outcome.loc_error_m;
    rec.labeling_correct = outcome.labeling_correct;
    if (outcome.success)
        rec.estimated_position = outcome.estimate.position;

    // Independent communication draw: one 40-bit payload at the trial SNR
    // under the stated BPSK bit error model.
    const double p_bit = theoretical_ber(ModScheme::Bpsk, snr_linear);
    rec.bits_sent = kFrameBits;
    for (int b = 0; b < kFrameBits; ++b)
        rec.bit_errors += rng.uniform() < p_bit;
    return rec;
}

std::vector<TrialRecord> run_trials(const Scenario& sc, double snr_db, int n_trials,
                                    std::uint64_t master_seed, std::uint64_t stream_offset) {
    if (n_trials < 1)
        throw std::invalid_argument("run_trials: need at least one trial");
    const double snr_linear = std::pow(10.0, snr_db / 10.0);
    std::vector<TrialRecord> records(static_cast<std::size_t>(n_trials));

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = std::min<unsigned>(hw, static_cast<unsigned>(n_trials));
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t] {
            for (int i = static_cast<int>(t); i < n_trials; i += static_cast<int>(n_threads)) {
                SeededRng rng(master_seed, stream_offset + static_cast<std::uint64_t>(i));
                records[static_cast<std::size_t>(i)] = run_trial(sc, snr_linear, rng);
            }
        });
    }
    for (auto& w : workers) w.join();
    return records;
}

std::vector<SweepPoint> run_monte_carlo(const Scenario& sc, const std::vector<double>& snr_db,
                                        const std::vector<double>& thresholds_m, int n_trials,
                                        std::uint64_t master_seed) {
    sc.validate();
    if (snr_db.empty() || thresholds_m.empty())
        throw std::invalid_argument("run_monte_carlo: empty sweep axes");

    std::vector<SweepPoint> points;
    for (std::size_t s = 0; s < snr_db.size(); ++s) {
        const std::uint64_t stream_offset = s * static_cast<std::uint64_t>(n_trials);
        const std::vector<TrialRecord> records =
            run_trials(sc, snr_db[s], n_trials, master_seed, stream_offset);

        const double gamma = std::pow(10.0, snr_db[s] / 10.0);
        const double ber_theory = theoretical_ber(ModScheme::Bpsk, gamma);
        SeededRng ber_rng(master_seed ^ 0xbe5be5be5ULL, s);
        const double ber_sim =
            simulate_ber(ModScheme::Bpsk, gamma, 100'000, BerChannel::NormalizedFixed,
                         sc.radio.rice_factor, ber_rng)
                .ber();
        const double p_packet_err =
            1.0 - std::pow(1.0 - ber_theory, static_cast<double>(kFrameBits));

        for (double eps : thresholds_m) {
            SweepPoint pt;
            pt.snr_db = snr_db[s];
            pt.threshold_m = eps;
            pt.n_trials = n_trials;
            pt.sr_sens = sensing_success_rate(records, eps);
            pt.sr_isac_sim = isac_success_rate_sim(records, eps);
            pt.sr_isac_analytic =
                1.0 - isac_error_probability({1.0 - pt.sr_sens, p_packet_err});
            pt.ber_sim = ber_sim;
            pt.ber_theory = ber_theory;
            const auto ci = wilson_interval(
                static_cast<std::uint64_t>(std::llround(pt.sr_isac_sim * n_trials)),
                static_cast<std::uint64_t>(n_trials));
            pt.ci_low = ci.low;
            pt.ci_high = ci.high;
            points.push_back(pt);
        }
    }
    return points;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out.precision(10);
    out << "snr_db,threshold_m,n_trials,sr_sens,sr_isac_sim,sr_isac_analytic,"
           "ber_sim,ber_theory,ci_low,ci_high\n";
    for (const SweepPoint& p : points) {
        out << p.snr_db << ',' << p.threshold_m << ',' << p.n_trials << ',' << p.sr_sens << ','
            << p.sr_isac_sim << ',' << p.sr_isac_analytic << ',' << p.ber_sim << ','
            << p.ber_theory << ',' << p.ci_low << ',' << p.ci_high << '\n';
    }
    return out.str();
}

} // namespace risloc
