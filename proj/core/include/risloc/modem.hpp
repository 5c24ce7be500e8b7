#ifndef RISLOC_MODEM_HPP
#define RISLOC_MODEM_HPP

#include <cstdint>
#include <vector>

#include "risloc/numerics.hpp"

namespace risloc {

enum class ModScheme { Bpsk, Qam16 };

int bits_per_symbol(ModScheme scheme);

/// Gray-mapped constellation points with unit average symbol energy.
/// BPSK: bit 0 -> +1, bit 1 -> -1. 16-QAM: 1/sqrt(10) scaling.
std::vector<Complex> modulate(const std::vector<std::uint8_t>& bits, ModScheme scheme);

/// Minimum-distance demodulation (coherent; the channel must already be
/// compensated).
std::vector<std::uint8_t> demodulate(const std::vector<Complex>& symbols, ModScheme scheme);

enum class BerChannel { NormalizedFixed, RiceFaded };

struct BerSample {
    double ebn0_effective = 0.0;  // |h|^2 Eb/N0, linear
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;

    double ber() const { return bits_sent ? static_cast<double>(bit_errors) / bits_sent : 0.0; }
};

/// Transmits random bits through y = h s + n and counts minimum-distance
/// demodulation errors. The receiver knows h exactly.
BerSample simulate_ber(ModScheme scheme, double ebn0, std::uint64_t n_bits,
                       BerChannel channel, double rice_factor, SeededRng& rng);

/// The reference analytic curves as stated: BPSK (1/2) Q(sqrt(g)),
/// 16-QAM (3/8) Q(sqrt(4 g)).
double theoretical_ber(ModScheme scheme, double gamma);

/// Textbook coherent matched-filter BPSK curve Q(sqrt(2 g)), used to validate
/// the waveform simulator independently of the curves above.
double matched_filter_bpsk_ber(double gamma);

} // namespace risloc

#endif
