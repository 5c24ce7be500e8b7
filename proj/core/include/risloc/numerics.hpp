#ifndef RISLOC_NUMERICS_HPP
#define RISLOC_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace risloc {

using Complex = std::complex<double>;
using CxVector = Eigen::VectorXcd;
using CxMatrix = Eigen::MatrixXcd;

/// Deterministic per-stream random source. The same (master_seed, stream_id)
/// pair reproduces the same sample sequence regardless of how many other
/// streams exist or in what order they are consumed, so Monte Carlo trials
/// can run in parallel without changing results.
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

    /// Derived stream sharing this stream's master seed.
    SeededRng substream(std::uint64_t stream_id) const;

    double uniform();                    // U[0,1)
    double gaussian(double stddev);      // N(0, stddev^2)
    std::uint64_t bits64();

    /// Complex sample with independent N(0, variance_per_component) real and
    /// imaginary parts. Throws std::invalid_argument for non-positive variance.
    Complex complex_gaussian(double variance_per_component);

    std::uint64_t master_seed() const { return master_; }

private:
    std::uint64_t master_;
    std::mt19937_64 engine_;
};

/// Gaussian right-tail probability Q(x) = P(N(0,1) > x).
/// Implemented through erfc for deep-tail accuracy. Rejects non-finite input.
double q_function(double x);

} // namespace risloc

#endif
