#pragma once

#include <map>
#include <vector>

#include "uiobank/plant.hpp"
#include "uiobank/uio.hpp"

namespace uiobank {

// Verdict attached to a fitted convergence envelope.
enum class FitStatus {
    certified,            // lambda_bar < 1 and the envelope holds on every fitted sample
    trivially_converged,  // the whole trace sits at or below the fit floor
    non_convergent,       // fitted trend does not decay (lambda_bar >= 1)
};

const char* to_string(FitStatus status);

// Exponential envelope e(k) <= c_bar * lambda_bar^k * e(0) fitted to an error trace.
// lambda_bar comes from a least-squares line through (k, log e(k)) over the samples above
// the fit floor; c_bar is the smallest prefactor that makes the envelope hold at every
// fitted sample, so it absorbs multi-mode knees and selector-switch transients.
struct ConvergenceFit {
    double c_bar = 0.0;
    double lambda_bar = 0.0;
    FitStatus status = FitStatus::non_convergent;

    bool certifies() const {
        return status == FitStatus::certified || status == FitStatus::trivially_converged;
    }
};

// Samples at or below this magnitude are floating-point noise and are excluded from fits.
inline constexpr double kFitFloor = 1e-12;
// Multiplicative headroom allowed when re-checking a fitted envelope against a trace.
inline constexpr double kEnvelopeSlack = 1.10;

// One observer of the bank: its synthesized design plus its running state.
struct BankEntry {
    UioDesign design;
    ObserverState state;
};

// Observers for every actuator subset of cardinality q and 2q, plus the superset links
// used by the deviation test. All observers share the initial estimate x_hat0; since an
// estimate needs a measurement (x_hat = z + E y), states are anchored to x_hat0 when the
// first measurement arrives (z := x_hat0 - E y(0)).
struct ObserverBank {
    int q = 0;
    Vector x_hat0;
    bool primed = false;
    std::map<IndexSet, BankEntry> designs_q;
    std::map<IndexSet, BankEntry> designs_2q;
    std::map<IndexSet, std::vector<IndexSet>> superset_map;

    int size() const { return static_cast<int>(designs_q.size() + designs_2q.size()); }
};

// Result of fusing the bank at one tick: per-subset deviations pi, the selected subset
// sigma (argmin of pi, lexicographic tie-break), the fused estimate (the sigma-observer's
// estimate), and every per-set estimate for diagnostics.
struct FusedEstimate {
    std::map<IndexSet, double> pi;
    IndexSet sigma;
    Vector x_hat;
    std::map<IndexSet, Vector> estimates;
};

// Synthesizes the full bank for protection level q (requires 0 < 2q < p). Throws
// DesignError naming the first subset whose observer is infeasible.
ObserverBank enumerate_bank(const LtiSystem& sys, int q, const Vector& x_hat0,
                            const Tolerances& tol = {});

// Fuses the bank against the measurement y(k) without advancing any observer. The first
// call anchors every observer so all estimates start at x_hat0 exactly.
FusedEstimate bank_estimate(ObserverBank& bank, const Vector& y);

// Advances every observer one tick with the measurement y(k) and applied input u(k).
void bank_advance(ObserverBank& bank, const Vector& y, const Vector& u);

// Convenience composition: fuse at time k, then advance all observers to k+1.
FusedEstimate bank_step(ObserverBank& bank, const Vector& y, const Vector& u);

// Fits a decay envelope to a nonnegative error trace (length >= 10).
ConvergenceFit fit_envelope(const std::vector<double>& error_trace);

}  // namespace uiobank
