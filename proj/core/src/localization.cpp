#include "risloc/localization.hpp"

#include <cmath>
#include <stdexcept>

namespace risloc {

double AnchorSet::xy_determinant() const {
    const double a1 = ris1.x - bs.x, b1 = ris1.y - bs.y;
    const double a2 = ris2.x - bs.x, b2 = ris2.y - bs.y;
    return a1 * b2 - a2 * b1;
}

LinearSystem build_linear_system(const AnchorSet& anchors, const RangeTriple& d) {
    const Position3D& p1 = anchors.bs;
    const Position3D& p2 = anchors.ris1;
    const Position3D& p3 = anchors.ris2;

    auto sq = [](double v) { return v * v; };

    LinearSystem s;
    s.a = {p2.x - p1.x, p3.x - p1.x, p3.x - p2.x};
    s.b = {p2.y - p1.y, p3.y - p1.y, p3.y - p2.y};
    s.c = {p2.z - p1.z, p3.z - p1.z, p3.z - p2.z};
    s.d_rhs = {
        0.5 * (sq(d.d1) - sq(d.d2) + sq(p2.x) - sq(p1.x) + sq(p2.y) - sq(p1.y) + sq(p2.z) - sq(p1.z)),
        0.5 * (sq(d.d1) - sq(d.d3) + sq(p3.x) - sq(p1.x) + sq(p3.y) - sq(p1.y) + sq(p3.z) - sq(p1.z)),
        0.5 * (sq(d.d2) - sq(d.d3) + sq(p3.x) - sq(p2.x) + sq(p3.y) - sq(p2.y) + sq(p3.z) - sq(p2.z)),
    };
    return s;
}

PositionEstimate solve_closed_form(const AnchorSet& anchors, const RangeTriple& d,
                                   double reported_height,
                                   double discriminant_tolerance) {
    PositionEstimate est;
    const double det = anchors.xy_determinant();
    if (det == 0.0) {
        est.status = SolveStatus::DegenerateAnchors;
        return est;
    }
    const LinearSystem s = build_linear_system(anchors, d);

    // Cramer's rule on the first two equations; anchors sit in a common
    // z-plane in the reference scenario, so the z column drops out there.
    const double x = (s.d_rhs[0] * s.b[1] - s.d_rhs[1] * s.b[0]) / det;
    const double y = (s.a[0] * s.d_rhs[1] - s.a[1] * s.d_rhs[0]) / det;

    double disc = d.d1 * d.d1 - (x - anchors.bs.x) * (x - anchors.bs.x)
                               - (y - anchors.bs.y) * (y - anchors.bs.y);
    if (disc < 0.0) {
        if (disc < -discriminant_tolerance) {
            est.status = SolveStatus::InfeasibleRanges;
            return est;
        }
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    est.z_candidates = {anchors.bs.z + root, anchors.bs.z - root};

    const double d_pos = std::abs(est.z_candidates[0] - reported_height);
    const double d_neg = std::abs(est.z_candidates[1] - reported_height);
    double z;
    if (d_pos < d_neg) {
        z = est.z_candidates[0];
        est.chose_positive_root = true;
    } else if (d_neg < d_pos) {
        z = est.z_candidates[1];
    } else {
        // Tie: prefer the root in the feasible orthant.
        z = est.z_candidates[0] >= 0.0 ? est.z_candidates[0] : est.z_candidates[1];
        est.chose_positive_root = z == est.z_candidates[0];
    }

    est.position = {x, y, z};
    est.negative_coordinate = x < 0.0 || y < 0.0 || z < 0.0;
    est.residual = nls_objective(est.position, anchors, d);
    return est;
}

double nls_objective(const Position3D& p, const AnchorSet& anchors, const RangeTriple& d) {
    const std::array<const Position3D*, 3> centers{&anchors.bs, &anchors.ris1, &anchors.ris2};
    const std::array<double, 3> ranges{d.d1, d.d2, d.d3};
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Position3D diff = p - *centers[i];
        const double ci = diff.x * diff.x + diff.y * diff.y + diff.z * diff.z;
        const double r = ranges[i] * ranges[i] - ci;
        total += r * r;
    }
    return total;
}

RangeTriple forward_ranges(const AnchorSet& anchors, const Position3D& ue) {
    return {ue.distance_to(anchors.bs), ue.distance_to(anchors.ris1), ue.distance_to(anchors.ris2)};
}

} // namespace risloc
