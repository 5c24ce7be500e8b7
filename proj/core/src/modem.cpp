#include "risloc/modem.hpp"

#include "risloc/channel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace risloc {

namespace {

// Gray-coded 4-PAM levels indexed by 2 bits: 00 01 11 10 -> -3 -1 +1 +3.
constexpr std::array<double, 4> kPamLevel = {-3.0, -1.0, 1.0, 3.0};
constexpr std::array<std::uint8_t, 4> kGrayOrder = {0b00, 0b01, 0b11, 0b10};

double pam_level(std::uint8_t two_bits) {
    for (int i = 0; i < 4; ++i)
        if (kGrayOrder[i] == two_bits) return kPamLevel[i];
    throw std::logic_error("pam_level: bad input");
}

std::uint8_t pam_bits(double value) {
    int best = 0;
    double best_dist = std::abs(value - kPamLevel[0]);
    for (int i = 1; i < 4; ++i) {
        const double d = std::abs(value - kPamLevel[i]);
        if (d < best_dist) { best = i; best_dist = d; }
    }
    return kGrayOrder[best];
}

constexpr double kQamScale = 0.3162277660168379;  // 1/sqrt(10)

} // namespace

int bits_per_symbol(ModScheme scheme) {
    return scheme == ModScheme::Bpsk ? 1 : 4;
}

std::vector<Complex> modulate(const std::vector<std::uint8_t>& bits, ModScheme scheme) {
    const int bps = bits_per_symbol(scheme);
    if (bits.size() % bps != 0)
        throw std::invalid_argument("modulate: bit count not divisible by bits per symbol");
    std::vector<Complex> symbols;
    symbols.reserve(bits.size() / bps);
    if (scheme == ModScheme::Bpsk) {
        for (std::uint8_t b : bits)
            symbols.emplace_back(b ? -1.0 : 1.0, 0.0);
    } else {
        for (std::size_t i = 0; i < bits.size(); i += 4) {
            const std::uint8_t bi = static_cast<std::uint8_t>((bits[i] << 1) | bits[i + 1]);
            const std::uint8_t bq = static_cast<std::uint8_t>((bits[i + 2] << 1) | bits[i + 3]);
            symbols.emplace_back(kQamScale * pam_level(bi), kQamScale * pam_level(bq));
        }
    }
    return symbols;
}

std::vector<std::uint8_t> demodulate(const std::vector<Complex>& symbols, ModScheme scheme) {
    std::vector<std::uint8_t> bits;
    bits.reserve(symbols.size() * bits_per_symbol(scheme));
    if (scheme == ModScheme::Bpsk) {
        for (const Complex& s : symbols)
            bits.push_back(s.real() < 0.0 ? 1 : 0);
    } else {
        for (const Complex& s : symbols) {
            const std::uint8_t bi = pam_bits(s.real() / kQamScale);
            const std::uint8_t bq = pam_bits(s.imag() / kQamScale);
            bits.push_back((bi >> 1) & 1);
            bits.push_back(bi & 1);
            bits.push_back((bq >> 1) & 1);
            bits.push_back(bq & 1);
        }
    }
    return bits;
}

BerSample simulate_ber(ModScheme scheme, double ebn0, std::uint64_t n_bits,
                       BerChannel channel, double rice_factor, SeededRng& rng) {
    if (n_bits < 10'000)
        throw std::invalid_argument("simulate_ber: need at least 1e4 bits");
    const int bps = bits_per_symbol(scheme);
    n_bits -= n_bits % bps;

    // Unit-energy symbols: Es = 1 = bps * Eb, so Eb = 1/bps and
    // N0 = Eb / ebn0 = 1 / (bps * ebn0); per-component variance is N0/2.
    const double n0 = 1.0 / (static_cast<double>(bps) * ebn0);
    const double noise_sd = std::sqrt(n0 / 2.0);

    BerSample sample;
    sample.ebn0_effective = ebn0;
    constexpr std::size_t kBlockBits = 4096;
    std::vector<std::uint8_t> bits(kBlockBits);
    std::uint64_t remaining = n_bits;
    while (remaining > 0) {
        const std::size_t block = static_cast<std::size_t>(
            std::min<std::uint64_t>(remaining, kBlockBits));
        bits.resize(block - block % bps);
        for (auto& b : bits) b = rng.uniform() < 0.5 ? 0 : 1;

        Complex h{1.0, 0.0};
        if (channel == BerChannel::RiceFaded)
            h = rice_fading_factor(rice_factor, rng);

        std::vector<Complex> symbols = modulate(bits, scheme);
        for (Complex& s : symbols) {
            const Complex noise{rng.gaussian(noise_sd), rng.gaussian(noise_sd)};
            s = (h * s + noise) / h;  // coherent detection, perfect CSI
        }
        const std::vector<std::uint8_t> rx = demodulate(symbols, scheme);
        for (std::size_t i = 0; i < bits.size(); ++i)
            sample.bit_errors += bits[i] != rx[i];
        sample.bits_sent += bits.size();
        remaining -= bits.size();
    }
    return sample;
}

double theoretical_ber(ModScheme scheme, double gamma) {
    if (gamma < 0.0)
        throw std::invalid_argument("theoretical_ber: gamma must be non-negative");
    if (scheme == ModScheme::Bpsk)
        return 0.5 * q_function(std::sqrt(gamma));
    return 0.375 * q_function(std::sqrt(4.0 * gamma));
}

double matched_filter_bpsk_ber(double gamma) {
    return q_function(std::sqrt(2.0 * gamma));
}

} // namespace risloc
