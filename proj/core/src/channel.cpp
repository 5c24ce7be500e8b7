#include "risloc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risloc {

double Position3D::distance_to(const Position3D& other) const {
    const double dx = x - other.x, dy = y - other.y, dz = z - other.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double Position3D::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

Position3D ArrayGeometry::element_position(int k) const {
    if (k < 0 || k >= element_count)
        throw std::out_of_range("ArrayGeometry::element_position: index out of range");
    const double offset = (static_cast<double>(k) - (element_count - 1) / 2.0) * element_spacing;
    return {center.x + offset * orientation.x,
            center.y + offset * orientation.y,
            center.z + offset * orientation.z};
}

double path_loss(const Position3D& a, const Position3D& b, const RadioConfig& cfg) {
    const double d = a.distance_to(b);
    if (d <= 0.0)
        throw std::invalid_argument("path_loss: zero distance");
    const double lambda = cfg.wavelength();
    const double denom = 4.0 * std::numbers::pi * d;
    return cfg.antenna_gain * lambda * lambda / (denom * denom);
}

CxMatrix los_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, const RadioConfig& cfg) {
    const double lambda = cfg.wavelength();
    CxMatrix h(rx.element_count, tx.element_count);
    for (int m1 = 0; m1 < rx.element_count; ++m1) {
        const Position3D p1 = rx.element_position(m1);
        for (int m2 = 0; m2 < tx.element_count; ++m2) {
            const Position3D p2 = tx.element_position(m2);
            const double d = p1.distance_to(p2);
            if (d <= 0.0)
                throw std::invalid_argument("los_channel: coincident element positions");
            const double phase = -2.0 * std::numbers::pi / lambda * d;
            h(m1, m2) = std::polar(1.0, phase);
        }
    }
    return h;
}

CxMatrix rice_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, const RadioConfig& cfg,
                      SeededRng& rng) {
    const double eps = cfg.rice_factor;
    if (eps < 0.0)
        throw std::invalid_argument("rice_channel: rice factor must be non-negative");
    const double w_los = std::sqrt(eps / (eps + 1.0));
    const double w_nlos = std::sqrt(1.0 / (eps + 1.0));

    CxMatrix h = los_channel(tx, rx, cfg);
    for (int m1 = 0; m1 < rx.element_count; ++m1) {
        const Position3D p1 = rx.element_position(m1);
        for (int m2 = 0; m2 < tx.element_count; ++m2) {
            const Position3D p2 = tx.element_position(m2);
            const double beta = path_loss(p2, p1, cfg);
            const Complex scatter = rng.complex_gaussian(0.5);
            h(m1, m2) = beta * (w_los * h(m1, m2) + w_nlos * scatter);
        }
    }
    return h;
}

Complex rice_fading_factor(double rice_factor, SeededRng& rng) {
    if (rice_factor < 0.0)
        throw std::invalid_argument("rice_fading_factor: rice factor must be non-negative");
    const double w_los = std::sqrt(rice_factor / (rice_factor + 1.0));
    const double w_nlos = std::sqrt(1.0 / (rice_factor + 1.0));
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return w_los * std::polar(1.0, phase) + w_nlos * rng.complex_gaussian(0.5);
}

CxVector composite_channel(const CxVector& h_los, const std::vector<CxMatrix>& g_bs_ris,
                           const std::vector<CxVector>& f_ris_ue,
                           const std::vector<CxVector>& ris_phases) {
    if (g_bs_ris.size() != f_ris_ue.size() || g_bs_ris.size() != ris_phases.size())
        throw std::invalid_argument("composite_channel: RIS list sizes differ");
    CxVector h = h_los;
    for (std::size_t i = 0; i < g_bs_ris.size(); ++i) {
        const CxMatrix& g = g_bs_ris[i];
        if (g.rows() != f_ris_ue[i].size() || g.rows() != ris_phases[i].size() ||
            g.cols() != h_los.size())
            throw std::invalid_argument("composite_channel: dimension mismatch");
        h += g.adjoint() * ris_phases[i].asDiagonal() * f_ris_ue[i];
    }
    return h;
}

} // namespace risloc
