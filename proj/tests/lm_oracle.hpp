#ifndef RISLOC_TESTS_LM_ORACLE_HPP
#define RISLOC_TESTS_LM_ORACLE_HPP

// Test-only nonlinear least-squares solver for cross-validating the
// closed-form trilateration. Kept out of the core library on purpose: it is
// the independent oracle, not a production path.

#include "risloc/localization.hpp"

namespace risloc::testing {

struct LmResult {
    Position3D position;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Levenberg-Marquardt on E(p) = sum_i (d_i^2 - c_i(p))^2 with the analytic
/// Jacobian, projecting iterates onto p >= 0. Damping starts at 1e-3,
/// at most 200 iterations.
LmResult lm_solve(const AnchorSet& anchors, const RangeTriple& d, const Position3D& initial);

/// Analytic gradient of E(p), for finite-difference checks.
Position3D nls_gradient(const Position3D& p, const AnchorSet& anchors, const RangeTriple& d);

} // namespace risloc::testing

#endif
