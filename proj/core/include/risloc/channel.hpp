#ifndef RISLOC_CHANNEL_HPP
#define RISLOC_CHANNEL_HPP

#include <vector>

#include "risloc/numerics.hpp"

namespace risloc {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct Position3D {
    double x = 0.0, y = 0.0, z = 0.0;

    double distance_to(const Position3D& other) const;
    Position3D operator+(const Position3D& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Position3D operator-(const Position3D& o) const { return {x - o.x, y - o.y, z - o.z}; }
    double norm() const;
    bool operator==(const Position3D&) const = default;
};

/// Uniform linear array. Element k sits at
/// center + (k - (n-1)/2) * spacing * orientation.
struct ArrayGeometry {
    Position3D center;
    int element_count = 1;
    double element_spacing = 0.0;  // meters; typically lambda/2
    Position3D orientation{1.0, 0.0, 0.0};  // unit vector

    Position3D element_position(int k) const;
};

struct RadioConfig {
    double carrier_frequency_hz = 10e9;
    double antenna_gain = 1.0;          // A, linear
    double rice_factor = 3.0;           // epsilon_rb >= 0
    double bandwidth_hz = 500e3;
    double noise_psd_dbm_hz = -204.0;   // N0
    double tx_power_w = 10.0;

    double wavelength() const { return kSpeedOfLight / carrier_frequency_hz; }
};

/// One drawn set of channel matrices for a trial.
struct ChannelRealization {
    CxVector h_los;                        // M x 1 direct BS-UE channel
    std::vector<CxMatrix> g_bs_ris;        // per RIS: N_i x M
    std::vector<CxVector> f_ris_ue;        // per RIS: N_i x 1
    CxVector h_bu_cascade;                 // M x 1, BS -> UE -> BS
    std::vector<CxVector> h_urb_cascade;   // per RIS: M x 1, UE -> RIS_i -> BS
    Complex theta_ue{0.0, 0.0};            // user reflection coefficient
};

/// Free-space power coefficient beta = A * lambda^2 / (4 pi d)^2.
/// Throws std::invalid_argument when the endpoints coincide.
double path_loss(const Position3D& a, const Position3D& b, const RadioConfig& cfg);

/// Deterministic spherical-wave channel: entry (m1, m2) is
/// exp(-i 2 pi / lambda * ||s_m1 - s_m2||), unit modulus. rx rows, tx columns.
CxMatrix los_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, const RadioConfig& cfg);

/// Rice-faded channel: beta * (sqrt(eps/(eps+1)) * los + sqrt(1/(eps+1)) * scatter),
/// scatter entries complex Gaussian with per-component variance 0.5.
CxMatrix rice_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, const RadioConfig& cfg,
                      SeededRng& rng);

/// Unit-power Rice fading factor alone (no path loss), for normalized-channel
/// noise models: E[|g|^2] = 1 for every rice factor.
Complex rice_fading_factor(double rice_factor, SeededRng& rng);

/// Composite BS-side channel h_k = h_los + sum_i G_i^H Diag(theta_i) f_i.
/// The sum runs over the RIS index.
CxVector composite_channel(const CxVector& h_los, const std::vector<CxMatrix>& g_bs_ris,
                           const std::vector<CxVector>& f_ris_ue,
                           const std::vector<CxVector>& ris_phases);

} // namespace risloc

#endif
