#include "uiobank/estimator.hpp"

#include <string>

namespace uiobank {

CompleteEstimator make_complete_estimator(const LtiSystem& sys, const Vector& x_hat0,
                                          const Tolerances& tol) {
    if (x_hat0.size() != sys.n())
        throw DimensionError("make_complete_estimator: initial estimate has length " +
                             std::to_string(x_hat0.size()) + ", expected " +
                             std::to_string(sys.n()));
    CompleteEstimator est;
    est.design = design_complete(sys, tol);
    est.state.z = Vector::Zero(sys.n());
    est.x_hat0 = x_hat0;
    return est;
}

EstimateResult estimator_estimate(EstimatorVariant& est, const Vector& y) {
    EstimateResult result;
    if (auto* complete = std::get_if<CompleteEstimator>(&est)) {
        if (y.size() != complete->design.E.cols())
            throw DimensionError("estimator_estimate: measurement dimension mismatch");
        if (!complete->primed) {
            complete->state.z = complete->x_hat0 - complete->design.E * y;
            complete->primed = true;
        }
        result.x_hat = complete->state.z + complete->design.E * y;
        return result;
    }
    FusedEstimate fused = bank_estimate(std::get<ObserverBank>(est), y);
    result.x_hat = std::move(fused.x_hat);
    result.sigma = std::move(fused.sigma);
    result.pi = std::move(fused.pi);
    return result;
}

void estimator_advance(EstimatorVariant& est, const Vector& y, const Vector& u) {
    if (auto* complete = std::get_if<CompleteEstimator>(&est)) {
        if (!complete->primed)
            throw std::logic_error("estimator_advance: no estimate produced yet");
        complete->state = observer_step(complete->design, complete->state, y, u).first;
        return;
    }
    bank_advance(std::get<ObserverBank>(est), y, u);
}

EstimateResult estimator_step(EstimatorVariant& est, const Vector& y, const Vector& u) {
    EstimateResult result = estimator_estimate(est, y);
    estimator_advance(est, y, u);
    return result;
}

}  // namespace uiobank
