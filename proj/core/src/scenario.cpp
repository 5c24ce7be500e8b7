#include "risloc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace risloc {

namespace {

ArrayGeometry make_array(const Position3D& center, int count, double spacing,
                         const Position3D& orientation) {
    return ArrayGeometry{center, count, spacing, orientation};
}

Position3D parse_position(const std::string& key, const std::string& value) {
    Position3D p;
    char c1 = 0, c2 = 0;
    std::istringstream iss(value);
    if (!(iss >> p.x >> c1 >> p.y >> c2 >> p.z) || c1 != ',' || c2 != ',')
        throw std::invalid_argument("scenario: key '" + key + "' expects 'x,y,z'");
    return p;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("scenario: key '" + key + "' expects a number");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v))
        throw std::invalid_argument("scenario: key '" + key + "' expects an integer");
    return static_cast<int>(v);
}

} // namespace

ArrayGeometry Scenario::bs_array() const {
    return make_array(anchors.bs, bs_antennas, radio.wavelength() / 2.0, bs_orientation);
}

ArrayGeometry Scenario::bs_sensing_array() const {
    return make_array(anchors.bs, bs_sensing_antennas, radio.wavelength() / 2.0, bs_orientation);
}

ArrayGeometry Scenario::ris_array(int i) const {
    if (i == 0)
        return make_array(anchors.ris1, ris_elements, radio.wavelength() / 2.0, ris1_orientation);
    if (i == 1)
        return make_array(anchors.ris2, ris_elements, radio.wavelength() / 2.0, ris2_orientation);
    throw std::out_of_range("Scenario::ris_array: index must be 0 or 1");
}

void Scenario::validate() const {
    if (bs_antennas < 1 || bs_sensing_antennas < 1 || ris_elements < 1)
        throw std::invalid_argument("scenario: antenna/element counts must be positive");
    if (bs_sensing_antennas > bs_antennas)
        throw std::invalid_argument("scenario: bs_sensing_antennas exceeds bs_antennas");
    if (anchors.xy_determinant() == 0.0)
        throw std::invalid_argument(
            "scenario: anchors are xy-collinear (check bs/ris1/ris2 positions)");
    if (anchors.bs.distance_to(anchors.ris1) == 0.0 ||
        anchors.bs.distance_to(anchors.ris2) == 0.0 ||
        anchors.ris1.distance_to(anchors.ris2) == 0.0)
        throw std::invalid_argument("scenario: coincident anchors");
    if (radio.carrier_frequency_hz <= 0.0)
        throw std::invalid_argument("scenario: frequency_hz must be positive");
    if (radio.bandwidth_hz <= 0.0)
        throw std::invalid_argument("scenario: bandwidth_hz must be positive");
    if (radio.rice_factor < 0.0)
        throw std::invalid_argument("scenario: rice_factor must be non-negative");
    if (radio.tx_power_w <= 0.0)
        throw std::invalid_argument("scenario: tx_power_w must be positive");
    if (eps_lth_m <= 0.0)
        throw std::invalid_argument("scenario: eps_lth_m must be positive");
    if (theta_ue_amplitude <= 0.0 || theta_ue_amplitude > 1.0)
        throw std::invalid_argument("scenario: theta_ue_amplitude must be in (0, 1]");
    if (toa_tau_scale_s < 0.0)
        throw std::invalid_argument("scenario: toa_tau_scale_s must be non-negative");
    if (trial_region_radius_m < 0.0)
        throw std::invalid_argument("scenario: trial_region_radius_m must be non-negative");
    if (n_trials < 1)
        throw std::invalid_argument("scenario: trials must be positive");
    if (p_ris_w.size() != 2)
        throw std::invalid_argument("scenario: expected two RIS powers");
}

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    std::istringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario: line " + std::to_string(line_no) +
                                        " is not 'key = value'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "bs_position") sc.anchors.bs = parse_position(key, value);
        else if (key == "ris1_position") sc.anchors.ris1 = parse_position(key, value);
        else if (key == "ris2_position") sc.anchors.ris2 = parse_position(key, value);
        else if (key == "bs_antennas") sc.bs_antennas = parse_int(key, value);
        else if (key == "bs_sensing_antennas") sc.bs_sensing_antennas = parse_int(key, value);
        else if (key == "ris_elements") sc.ris_elements = parse_int(key, value);
        else if (key == "bs_orientation") sc.bs_orientation = parse_position(key, value);
        else if (key == "ris1_orientation") sc.ris1_orientation = parse_position(key, value);
        else if (key == "ris2_orientation") sc.ris2_orientation = parse_position(key, value);
        else if (key == "frequency_hz") sc.radio.carrier_frequency_hz = parse_double(key, value);
        else if (key == "bandwidth_hz") sc.radio.bandwidth_hz = parse_double(key, value);
        else if (key == "noise_psd_dbm_hz") sc.radio.noise_psd_dbm_hz = parse_double(key, value);
        else if (key == "tx_power_w") sc.radio.tx_power_w = parse_double(key, value);
        else if (key == "rice_factor") sc.radio.rice_factor = parse_double(key, value);
        else if (key == "antenna_gain") sc.radio.antenna_gain = parse_double(key, value);
        else if (key == "beam_target_bs") sc.beam_target_bs = parse_position(key, value);
        else if (key == "beam_target_ris") sc.beam_target_ris = parse_position(key, value);
        else if (key == "eps_lth_m") sc.eps_lth_m = parse_double(key, value);
        else if (key == "cycle_period_s")
            sc.schedule.cycle_period_ns = static_cast<std::int64_t>(
                std::llround(parse_double(key, value) * 1e9));
        else if (key == "sensing_slot_s")
            sc.schedule.sensing_slot_ns = static_cast<std::int64_t>(
                std::llround(parse_double(key, value) * 1e9));
        else if (key == "response_slot_s")
            sc.schedule.response_slot_ns = static_cast<std::int64_t>(
                std::llround(parse_double(key, value) * 1e9));
        else if (key == "propagation_guard_s")
            sc.schedule.propagation_guard_ns = static_cast<std::int64_t>(
                std::llround(parse_double(key, value) * 1e9));
        else if (key == "p_ris1_w") sc.p_ris_w[0] = parse_double(key, value);
        else if (key == "p_ris2_w") sc.p_ris_w[1] = parse_double(key, value);
        else if (key == "theta_ue_amplitude") sc.theta_ue_amplitude = parse_double(key, value);
        else if (key == "toa_tau_scale_s") sc.toa_tau_scale_s = parse_double(key, value);
        else if (key == "trial_position") sc.trial_position = parse_position(key, value);
        else if (key == "trial_region_radius_m")
            sc.trial_region_radius_m = parse_double(key, value);
        else if (key == "trials") sc.n_trials = parse_int(key, value);
        else if (key == "master_seed")
            sc.master_seed = static_cast<std::uint64_t>(parse_double(key, value));
        else
            throw std::invalid_argument("scenario: unknown key '" + key + "'");
    }
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("scenario: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

int GridSpec::nx() const { return static_cast<int>(std::floor((x_max - x_min) / resolution)) + 1; }
int GridSpec::ny() const { return static_cast<int>(std::floor((y_max - y_min) / resolution)) + 1; }

void GridSpec::validate() const {
    if (resolution <= 0.0)
        throw std::invalid_argument("grid: resolution must be positive");
    if (x_max < x_min || y_max < y_min)
        throw std::invalid_argument("grid: empty range");
}

} // namespace risloc
