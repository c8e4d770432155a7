#pragma once

#include <map>
#include <vector>

#include "uiobank/estimator.hpp"
#include "uiobank/isolation.hpp"
#include "uiobank/plant.hpp"

namespace uiobank {

enum class CertificateStatus {
    common_p_validated,  // one quadratic Lyapunov function covers every mode
    falsified,           // some product of modes has spectral radius >= 1
    inconclusive,        // neither a common certificate nor a falsifying product found
};

const char* to_string(CertificateStatus status);

struct SwitchedCertificate {
    CertificateStatus status = CertificateStatus::inconclusive;
    int falsified_length = 0;  // product length that falsified, when status == falsified
    Matrix p;                  // common Lyapunov matrix, when status == common_p_validated
};

// Per-active-set feedback gains. Each stored K satisfies: A - b_Jbar * K is Schur, and
// the applied input on the trusted actuators is u_Jbar = -K * x_hat.
struct SwitchingController {
    std::map<IndexSet, Matrix> gains;
    SwitchedCertificate certificate;
    int q_star = 0;  // widest survivable isolation level for this actuation
    int q = 0;       // level the gain table actually covers (card(Jbar) >= p - q)
};

// Largest integer q* such that every nonempty actuator subset of cardinality >= p - q*
// can stabilize the plant. Capped at p-1: the empty actuator set is never acceptable.
int stab_q_star(const LtiSystem& sys, const Tolerances& tol = {});

// Unit-weight regulator gains for every trusted set of cardinality p-q .. p, plus a
// switched-stability certificate over the resulting closed-loop modes. Throws
// SynthesisError naming the first subset that cannot stabilize the plant.
SwitchingController synthesize_gains(const LtiSystem& sys, int q, const Tolerances& tol = {});

// Three-stage switched-stability verdict for a set of closed-loop mode matrices:
// (i) solve for a single quadratic Lyapunov candidate and validate it against every
// mode; (ii) otherwise search all mode products up to the given length for one with
// spectral radius >= 1; (iii) otherwise report inconclusive.
SwitchedCertificate certify_switched(const std::vector<Matrix>& modes, const Tolerances& tol = {},
                                     int max_product_length = 6);

// Everything the closed loop carries from tick to tick.
struct ClosedLoopState {
    PlantState plant;
    EstimatorVariant estimator;
    IsolationState iso;
    Matrix b_pinv;      // cached for attack reconstruction
    Vector x_hat_prev;  // estimate at the previous tick
    Vector u_prev;      // input applied at the previous tick
    bool has_prev = false;
};

ClosedLoopState make_closed_loop_state(const LtiSystem& sys, PlantState plant,
                                       EstimatorVariant estimator, IsolationState iso,
                                       const Tolerances& tol = {});

// One tick of the closed loop, as recorded for the trace.
struct ClosedLoopRow {
    std::int64_t k = 0;
    Vector x;          // true state at k
    Vector x_hat;      // estimate at k
    double e_norm = 0; // |x_hat - x|
    Vector a_hat;      // attack estimate at k (estimates a(k-1))
    Vector u;          // input applied at k (zero on isolated actuators)
    Vector a_applied;  // injected attack at k after switch-off removed isolated columns
    IndexSet w_hat;    // isolated set at k
    IndexSet j_bar;    // trusted set at k
    IndexSet sigma;    // selected observer subset (empty for the complete observer)
};

// Advances plant, estimator, and isolation by one tick: measure, estimate, reconstruct
// and isolate, apply u = -K_Jbar x_hat on the trusted actuators (isolated actuators get
// zero input and their attack is removed with the column), then step the plant. Throws
// SafetyStopError when more than ctrl.q actuators are isolated.
ClosedLoopRow closed_loop_step(const LtiSystem& sys, const SwitchingController& ctrl,
                               ClosedLoopState& st, const AttackScenario& scn,
                               const RandomSource& rng, const Tolerances& tol = {});

}  // namespace uiobank
