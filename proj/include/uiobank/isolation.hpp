#pragma once

#include "uiobank/plant.hpp"

namespace uiobank {

enum class IsolationMode {
    instantaneous,  // isolated set tracks the current thresholded support
    sticky,         // isolated set latches: once flagged, an actuator stays flagged
};

const char* to_string(IsolationMode mode);

// Rolling isolation verdict: the current attack estimate, the isolated actuators w_hat,
// and their complement j_bar (the actuators still trusted to carry control).
struct IsolationState {
    Vector a_hat;
    IndexSet w_hat;
    IndexSet j_bar;
    int burn_in = 100;
    IsolationMode mode = IsolationMode::instantaneous;
};

// Fresh state for p actuators: nothing isolated, zero attack estimate.
IsolationState make_isolation_state(int p, int burn_in = 100,
                                    IsolationMode mode = IsolationMode::instantaneous);

// Attack estimate from two consecutive state estimates and the applied input:
// a_hat(k) = B+ (x_hat(k) - A x_hat(k-1)) - u(k-1). Converges to a(k-1) as the
// estimation error vanishes, so reconstruction carries a one-step delay.
// b_pinv is the precomputed pseudoinverse of B.
Vector reconstruct_attack(const Matrix& a, const Matrix& b_pinv, const Vector& x_hat_k,
                          const Vector& x_hat_prev, const Vector& u_prev);

// Convenience overload computing B+ on the fly.
Vector reconstruct_attack(const LtiSystem& sys, const Vector& x_hat_k, const Vector& x_hat_prev,
                          const Vector& u_prev, const Tolerances& tol = {});

// Advances the verdict with the attack estimate at tick k. Before burn_in the isolated
// set stays empty; afterwards the thresholded support {i : |a_hat_i| > support_eps}
// either replaces (instantaneous) or augments (sticky) the previous set.
IsolationState isolate(IsolationState iso, const Vector& a_hat, std::int64_t k,
                       const Tolerances& tol = {});

}  // namespace uiobank
