#include "lm_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

namespace risloc::testing {

namespace {

Eigen::Vector3d residuals(const Position3D& p, const AnchorSet& anchors, const RangeTriple& d) {
    const std::array<const Position3D*, 3> centers{&anchors.bs, &anchors.ris1, &anchors.ris2};
    const std::array<double, 3> ranges{d.d1, d.d2, d.d3};
    Eigen::Vector3d r;
    for (int i = 0; i < 3; ++i) {
        const Position3D diff = p - *centers[i];
        const double ci = diff.x * diff.x + diff.y * diff.y + diff.z * diff.z;
        r(i) = ranges[i] * ranges[i] - ci;
    }
    return r;
}

Eigen::Matrix3d jacobian(const Position3D& p, const AnchorSet& anchors) {
    const std::array<const Position3D*, 3> centers{&anchors.bs, &anchors.ris1, &anchors.ris2};
    Eigen::Matrix3d j;
    for (int i = 0; i < 3; ++i) {
        const Position3D diff = p - *centers[i];
        j(i, 0) = -2.0 * diff.x;
        j(i, 1) = -2.0 * diff.y;
        j(i, 2) = -2.0 * diff.z;
    }
    return j;
}

Position3D project_nonnegative(const Position3D& p) {
    return {std::max(0.0, p.x), std::max(0.0, p.y), std::max(0.0, p.z)};
}

} // namespace

Position3D nls_gradient(const Position3D& p, const AnchorSet& anchors, const RangeTriple& d) {
    const Eigen::Vector3d r = residuals(p, anchors, d);
    const Eigen::Vector3d g = 2.0 * jacobian(p, anchors).transpose() * r;
    return {g(0), g(1), g(2)};
}

LmResult lm_solve(const AnchorSet& anchors, const RangeTriple& d, const Position3D& initial) {
    LmResult res;
    Position3D p = project_nonnegative(initial);
    double lambda = 1e-3;
    double e = nls_objective(p, anchors, d);

    for (int it = 0; it < 200; ++it) {
        res.iterations = it + 1;
        const Eigen::Vector3d r = residuals(p, anchors, d);
        const Eigen::Matrix3d j = jacobian(p, anchors);
        const Eigen::Matrix3d jtj = j.transpose() * j;
        const Eigen::Vector3d jtr = j.transpose() * r;

        if (jtr.norm() < 1e-14) {
            res.converged = true;
            break;
        }

        const Eigen::Matrix3d a = jtj + lambda * Eigen::Matrix3d(jtj.diagonal().asDiagonal());
        const Eigen::Vector3d step = a.ldlt().solve(-jtr);
        const Position3D candidate =
            project_nonnegative({p.x + step(0), p.y + step(1), p.z + step(2)});
        const double e_new = nls_objective(candidate, anchors, d);

        if (e_new < e) {
            p = candidate;
            e = e_new;
            lambda = std::max(lambda / 10.0, 1e-12);
            if (step.norm() < 1e-12) {
                res.converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }
    res.position = p;
    res.objective = e;
    return res;
}

} // namespace risloc::testing
