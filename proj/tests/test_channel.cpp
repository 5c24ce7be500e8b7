#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "risloc/channel.hpp"

#include <cmath>
#include <numbers>

using namespace risloc;

namespace {

RadioConfig default_radio() { return {}; }

ArrayGeometry make_array(Position3D center, int n, Position3D orient) {
    RadioConfig cfg;
    return {center, n, cfg.wavelength() / 2.0, orient};
}

} // namespace

TEST_CASE("array element positions are symmetric about the center") {
    const ArrayGeometry g = make_array({1.0, 2.0, 3.0}, 5, {0.0, 1.0, 0.0});
    const Position3D mid = g.element_position(2);
    CHECK(mid == Position3D{1.0, 2.0, 3.0});
    const Position3D p0 = g.element_position(0);
    const Position3D p4 = g.element_position(4);
    CHECK(p0.x + p4.x == doctest::Approx(2.0 * mid.x));
    CHECK(p0.y + p4.y == doctest::Approx(2.0 * mid.y));
    CHECK(p0.distance_to(g.element_position(1)) == doctest::Approx(g.element_spacing));
    // even count: no element at the exact center
    const ArrayGeometry e = make_array({0, 0, 0}, 4, {1, 0, 0});
    CHECK(e.element_position(1).x == doctest::Approx(-e.element_spacing / 2.0));
    CHECK(e.element_position(2).x == doctest::Approx(e.element_spacing / 2.0));
}

TEST_CASE("path loss hand value at 55 m") {
    // lambda = c / 10 GHz = 0.0299792458 m;
    // beta = lambda^2 / (4 pi 55)^2 = 1.8814e-9 (unit antenna gain)
    const RadioConfig cfg = default_radio();
    const double beta = path_loss({0, 0, 0}, {0, 55, 0}, cfg);
    const double lambda = 0.0299792458;
    const double expected =
        lambda * lambda / std::pow(4.0 * std::numbers::pi * 55.0, 2.0);
    CHECK(beta == doctest::Approx(expected).epsilon(1e-12));
    CHECK(beta == doctest::Approx(1.8814e-9).epsilon(1e-4));
}

TEST_CASE("path loss scales with inverse square distance and with gain") {
    RadioConfig cfg = default_radio();
    const double b1 = path_loss({0, 0, 0}, {10, 0, 0}, cfg);
    const double b2 = path_loss({0, 0, 0}, {20, 0, 0}, cfg);
    CHECK(b1 / b2 == doctest::Approx(4.0).epsilon(1e-12));
    cfg.antenna_gain = 3.0;
    CHECK(path_loss({0, 0, 0}, {10, 0, 0}, cfg) == doctest::Approx(3.0 * b1).epsilon(1e-12));
    CHECK_THROWS_AS(path_loss({1, 2, 3}, {1, 2, 3}, cfg), std::invalid_argument);
}

TEST_CASE("los channel entries are unit modulus with the spherical phase") {
    const RadioConfig cfg = default_radio();
    const ArrayGeometry tx = make_array({0, 0, 0}, 3, {1, 0, 0});
    const ArrayGeometry rx = make_array({0, 40, 0}, 2, {0, 1, 0});
    const CxMatrix h = los_channel(tx, rx, cfg);
    REQUIRE(h.rows() == 2);
    REQUIRE(h.cols() == 3);
    for (int r = 0; r < h.rows(); ++r) {
        for (int c = 0; c < h.cols(); ++c) {
            CHECK(std::abs(h(r, c)) == doctest::Approx(1.0).epsilon(1e-12));
            const double d = tx.element_position(c).distance_to(rx.element_position(r));
            const Complex expect =
                std::exp(Complex(0.0, -2.0 * std::numbers::pi / cfg.wavelength() * d));
            CHECK(std::abs(h(r, c) - expect) < 1e-9);
        }
    }
}

TEST_CASE("los channel is reciprocal up to transposition") {
    const RadioConfig cfg = default_radio();
    const ArrayGeometry a = make_array({0, 0, 0}, 4, {1, 0, 0});
    const ArrayGeometry b = make_array({30, 20, 5}, 3, {0, 1, 0});
    const CxMatrix fwd = los_channel(a, b, cfg);
    const CxMatrix rev = los_channel(b, a, cfg);
    CHECK((fwd - rev.transpose()).norm() < 1e-12);
}

TEST_CASE("rice channel second moment equals the path loss for every rice factor") {
    const ArrayGeometry tx = make_array({0, 0, 0}, 2, {1, 0, 0});
    const ArrayGeometry rx = make_array({0, 25, 0}, 2, {0, 1, 0});
    for (double eps : {0.0, 1.0, 3.0, 100.0}) {
        RadioConfig cfg = default_radio();
        cfg.rice_factor = eps;
        const double beta = path_loss(tx.center, rx.center, cfg);
        SeededRng rng(11, static_cast<std::uint64_t>(eps * 10));
        double power = 0.0;
        const int n = 20'000;
        for (int i = 0; i < n; ++i) {
            const CxMatrix h = rice_channel(tx, rx, cfg, rng);
            power += h.squaredNorm() / static_cast<double>(h.size());
        }
        // beta multiplies a unit-second-moment fade, so E[|h_ij|^2] = beta^2.
        const double mean = power / n;
        CHECK(mean / (beta * beta) == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("rice channel collapses to scaled los when the rice factor is huge") {
    RadioConfig cfg = default_radio();
    cfg.rice_factor = 1e12;
    const ArrayGeometry tx = make_array({0, 0, 0}, 3, {1, 0, 0});
    const ArrayGeometry rx = make_array({10, 10, 0}, 3, {0, 1, 0});
    SeededRng rng(1, 0);
    const CxMatrix h = rice_channel(tx, rx, cfg, rng);
    const double beta = path_loss(tx.center, rx.center, cfg);
    const CxMatrix los = los_channel(tx, rx, cfg);
    // The center-to-center beta ignores the per-element-pair distance spread
    // (a few cm over ~14 m), so allow that geometric slack.
    CHECK((h - beta * los).norm() < 1e-2 * beta * los.norm());
}

TEST_CASE("unit-power rice fading factor") {
    for (double eps : {0.0, 3.0, 50.0}) {
        SeededRng rng(21, static_cast<std::uint64_t>(eps));
        double power = 0.0;
        const int n = 100'000;
        for (int i = 0; i < n; ++i) power += std::norm(rice_fading_factor(eps, rng));
        CHECK(power / n == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("composite channel superposes the reflected terms explicitly") {
    SeededRng rng(4, 0);
    const int m = 4, n1 = 3, n2 = 2;
    auto vec = [&](int n) {
        CxVector v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.complex_gaussian(0.5);
        return v;
    };
    auto mat = [&](int r, int c) {
        CxMatrix mm(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) mm(i, j) = rng.complex_gaussian(0.5);
        return mm;
    };
    const CxVector h_los = vec(m);
    const std::vector<CxMatrix> g{mat(n1, m), mat(n2, m)};
    const std::vector<CxVector> f{vec(n1), vec(n2)};
    const std::vector<CxVector> theta{vec(n1), vec(n2)};

    const CxVector h = composite_channel(h_los, g, f, theta);
    CxVector manual = h_los;
    for (int i = 0; i < 2; ++i)
        manual += g[i].adjoint() * theta[i].asDiagonal() * f[i];
    CHECK((h - manual).norm() < 1e-12);

    // zero phases leave only the direct path
    const std::vector<CxVector> zero{CxVector::Zero(n1), CxVector::Zero(n2)};
    CHECK((composite_channel(h_los, g, f, zero) - h_los).norm() < 1e-15);
}
