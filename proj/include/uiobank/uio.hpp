#pragma once

#include "uiobank/plant.hpp"
#include "uiobank/types.hpp"

#include <utility>

namespace uiobank {

/// Unknown-input observer z+ = N z + T B u + L y with estimate x^ = z + E y.
/// A complete design (subset empty) rejects the whole injection B a and
/// ignores u; a partial design for subset J rejects only the columns b_J and
/// feeds the known input through T B.
struct UioDesign {
    IndexSet subset;  // rejected actuators; empty means the complete observer
    Matrix N;         // n x n, Schur
    Matrix L;         // n x ny
    Matrix E;         // n x ny
    Matrix T;         // n x n; zero for complete designs
    Matrix TB;        // cached T * B (n x p); zero for complete designs

    bool complete() const { return subset.empty(); }
};

struct ObserverState {
    Vector z;
};

/// c1: rank(C B) = rank(B) = p, necessary and sufficient for full injection
/// decoupling with this observer family.
bool check_c1(const LtiSystem& sys, const Tolerances& tol = {});

/// Observer decoupled from all actuators. Throws DesignError with condition
/// c1 or c2 when infeasible, NumericError when a synthesized design fails its
/// own residual or stability postcondition.
UioDesign design_complete(const LtiSystem& sys, const Tolerances& tol = {});

/// Observer decoupled from the actuators in J only (c3/c4 analogously).
UioDesign design_partial(const LtiSystem& sys, const IndexSet& j, const Tolerances& tol = {});

/// Max-abs residual of the defining observer equations; near zero for any
/// design produced by design_complete/design_partial.
double design_residual(const LtiSystem& sys, const UioDesign& d);

/// Largest protection level q: every actuator subset of cardinality up to 2q
/// admits a partial design and 2q < p. Zero when even single columns fail.
int max_q(const LtiSystem& sys, const Tolerances& tol = {});

/// Advances the observer one tick and reports the estimate aligned with y:
/// returns ({z+}, x^ = z + E y).
std::pair<ObserverState, Vector> observer_step(const UioDesign& d, const ObserverState& os,
                                               const Vector& y, const Vector& u);

}  // namespace uiobank
