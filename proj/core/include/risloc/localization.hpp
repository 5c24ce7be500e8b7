#ifndef RISLOC_LOCALIZATION_HPP
#define RISLOC_LOCALIZATION_HPP

#include <array>
#include <optional>

#include "risloc/channel.hpp"

namespace risloc {

/// Sphere centers of the three ranging anchors.
struct AnchorSet {
    Position3D bs;
    Position3D ris1;
    Position3D ris2;

    /// a1*b2 - a2*b1 from the linearized system; zero means the anchors are
    /// collinear in the xy-plane and x/y cannot be recovered.
    double xy_determinant() const;
};

struct RangeTriple {
    double d1 = 0.0;  // UE -> BS, meters
    double d2 = 0.0;  // UE -> RIS1
    double d3 = 0.0;  // UE -> RIS2
};

/// Coefficients of the linearized trilateration system.
struct LinearSystem {
    std::array<double, 3> a, b, c, d_rhs;  // a_i x + b_i y + c_i z = D_i
};

enum class SolveStatus { Ok, DegenerateAnchors, InfeasibleRanges };

struct PositionEstimate {
    SolveStatus status = SolveStatus::Ok;
    Position3D position;            // valid when status == Ok
    std::array<double, 2> z_candidates{0.0, 0.0};
    double residual = 0.0;          // least-squares objective at the estimate
    bool chose_positive_root = false;
    bool negative_coordinate = false;  // algebraic solution left the feasible orthant
};

LinearSystem build_linear_system(const AnchorSet& anchors, const RangeTriple& d);

/// Closed-form trilateration: x*, y* by Cramer's rule on the first two
/// linearized equations, z* from the BS sphere. The +/- z ambiguity is
/// resolved toward reported_height; on a tie the non-negative root wins.
/// Discriminants in [-discriminant_tolerance, 0) are clamped to zero.
PositionEstimate solve_closed_form(const AnchorSet& anchors, const RangeTriple& d,
                                   double reported_height,
                                   double discriminant_tolerance = 1e-6);

/// E(p) = sum_i (d_i^2 - c_i(p))^2 with c_i the squared anchor distance.
double nls_objective(const Position3D& p, const AnchorSet& anchors, const RangeTriple& d);

/// Forward model: exact anchor distances from a known position.
RangeTriple forward_ranges(const AnchorSet& anchors, const Position3D& ue);

} // namespace risloc

#endif
