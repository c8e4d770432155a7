#pragma once

#include "uiobank/control.hpp"
#include "uiobank/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace uiobank {

/// Whole-run record: one ClosedLoopRow per tick. Estimation-only runs fill
/// the same row shape with u = exogenous input and a_applied = injected
/// attack; w_hat/j_bar are informational (nothing is switched off).
struct SimTrace {
    int n = 0;
    int p = 0;
    std::vector<ClosedLoopRow> rows;
};

/// One configured gate: measured value against its limit.
struct ThresholdCheck {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool pass = false;
};

struct RunSummary {
    std::string scenario;
    std::string estimator;      // "complete" or "bank(q=1, 6 observers)"
    std::int64_t horizon = 0;
    std::uint64_t seed = 0;
    std::int64_t window_start = 0;  // settled window [window_start, horizon]

    double lambda_bar = 0.0;    // fitted decay rate of |e(k)|; 0 when not fitted
    std::string fit_status;     // certified / trivially_converged / non_convergent / not_fitted
    double initial_error = 0.0; // |x_hat(0) - x(0)|
    double final_error = 0.0;   // |x_hat(horizon) - x(horizon)|
    double reconstruction_error = 0.0;  // window max |a_hat(k) - a(k-1)|_inf
    double isolation_accuracy = 0.0;    // correct-verdict fraction over the window
    double initial_state = 0.0;         // |x(0)|
    double final_state = 0.0;           // |x(horizon)|
    double state_window_max = 0.0;      // max |x(k)| over the window
    std::string certificate;    // switched-stability verdict; "none" without control
    double wall_clock_ms = 0.0;

    std::vector<ThresholdCheck> checks;
    bool pass = true;           // conjunction of all configured checks
};

struct PipelineResult {
    SimTrace trace;
    RunSummary summary;
};

/// Runs the configured scenario end to end: build the estimator (and, when
/// control is on, the switching controller), simulate `horizon` ticks, then
/// score every configured threshold. Deterministic for fixed config+seed.
/// Infeasible designs throw DesignError/SynthesisError; an isolation verdict
/// wider than the controller's budget throws SafetyStopError.
PipelineResult run_pipeline(const ScenarioConfig& cfg);

/// CSV rendering with a fixed header; doubles carry 17 significant digits so
/// a replay compares bit-for-bit.
std::string trace_to_csv(const SimTrace& trace);

/// Writes trace_to_csv(trace) to `path`; I/O failures name the path.
void write_trace(const SimTrace& trace, const std::string& path);

std::string summary_to_json(const RunSummary& summary);

/// Human-readable multi-line report, one line per measured quantity and one
/// PASS/FAIL line per configured check.
std::string summary_to_text(const RunSummary& summary);

}  // namespace uiobank
