#include "risloc/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risloc {

namespace {

// splitmix64; mixes (master, stream) into one well-scrambled engine seed.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0xda942042e4dd58b5ULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x9e3779b97f4a7c15ULL);
}

} // namespace

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), engine_(derive_seed(master_seed, stream_id)) {}

SeededRng SeededRng::substream(std::uint64_t stream_id) const {
    return SeededRng(master_, stream_id);
}

double SeededRng::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double SeededRng::gaussian(double stddev) {
    return std::normal_distribution<double>(0.0, stddev)(engine_);
}

std::uint64_t SeededRng::bits64() {
    return engine_();
}

Complex SeededRng::complex_gaussian(double variance_per_component) {
    if (!(variance_per_component > 0.0))
        throw std::invalid_argument("complex_gaussian: variance must be positive");
    const double sd = std::sqrt(variance_per_component);
    const double re = gaussian(sd);
    const double im = gaussian(sd);
    return {re, im};
}

double q_function(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("q_function: input must be finite");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

} // namespace risloc
