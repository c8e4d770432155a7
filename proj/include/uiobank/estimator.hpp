#pragma once

#include <map>
#include <variant>

#include "uiobank/bank.hpp"
#include "uiobank/uio.hpp"

namespace uiobank {

// Single full-decoupling observer wrapped with the same anchoring convention as the
// bank: the first measurement pins the estimate to x_hat0 exactly.
struct CompleteEstimator {
    UioDesign design;
    ObserverState state;
    Vector x_hat0;
    bool primed = false;
};

CompleteEstimator make_complete_estimator(const LtiSystem& sys, const Vector& x_hat0,
                                          const Tolerances& tol = {});

// Either one complete observer or a fused bank; chosen per scenario.
using EstimatorVariant = std::variant<CompleteEstimator, ObserverBank>;

// Uniform per-tick output. sigma/pi are empty for the complete observer (there is no
// selection step).
struct EstimateResult {
    Vector x_hat;
    IndexSet sigma;
    std::map<IndexSet, double> pi;
};

// Estimate at the current tick without advancing internal state.
EstimateResult estimator_estimate(EstimatorVariant& est, const Vector& y);

// Advance internal state one tick with the measurement and the applied input.
void estimator_advance(EstimatorVariant& est, const Vector& y, const Vector& u);

// Estimate, then advance.
EstimateResult estimator_step(EstimatorVariant& est, const Vector& y, const Vector& u);

}  // namespace uiobank
