#pragma once

#include "uiobank/isolation.hpp"
#include "uiobank/plant.hpp"
#include "uiobank/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uiobank {

enum class EstimatorKind { complete, bank };

std::string to_string(EstimatorKind kind);

/// Initial plant state: an explicit vector, or i.i.d. N(0,1) entries drawn
/// from the initial-state streams of the scenario's RandomSource.
struct X0Spec {
    bool literal = false;
    Vector value;  // used only when literal
};

/// Optional pass/fail gates evaluated at the end of a pipeline run. Unset
/// gates are skipped; set gates become ThresholdCheck rows in the summary.
struct Thresholds {
    std::optional<double> lambda_bar_max;           // fitted error decay rate
    std::optional<double> final_error_max;          // |e(horizon)|, absolute
    std::optional<double> final_error_max_rel;      // |e(horizon)| / max(1, |e(0)|)
    std::optional<double> reconstruction_error_max; // window max |a_hat(k) - a(k-1)|_inf
    std::optional<double> isolation_accuracy_min;   // fraction of correct window ticks
    std::optional<double> final_state_max_rel;      // |x(horizon)| / max(1, |x(0)|)
    std::optional<double> state_window_max_rel;     // window max |x(k)| / |x(0)|
    bool require_certificate = false;               // demand a validated common-P

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Complete description of one simulation run. Parsed from JSON, produced by
/// preset(), and consumed by run_pipeline.
struct ScenarioConfig {
    std::string name = "custom";
    LtiSystem system;
    AttackScenario attack;           // num_actuators always mirrors system.p()
    std::vector<SignalSpec> inputs;  // exogenous input laws; empty means u = 0
    std::int64_t horizon = 1000;
    std::uint64_t seed = 1;
    EstimatorKind estimator = EstimatorKind::bank;
    std::optional<int> bank_q;    // bank protection level; default max_q(system)
    IsolationMode isolation = IsolationMode::instantaneous;
    int burn_in = 100;
    bool control = false;
    std::optional<int> control_q; // switch-off budget; default derived in run_pipeline
    X0Spec x0;
    Vector x_hat0;                // estimator start; empty means zeros(n)
    std::optional<std::int64_t> window_start;  // settled window; default 4*horizon/5
    Tolerances tol;
    Thresholds thresholds;
};

bool operator==(const X0Spec& a, const X0Spec& b);
bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

/// Parses a JSON scenario document. Unknown keys anywhere are rejected;
/// matrices are shape-checked and attack/input indices range-checked, with
/// errors naming the offending field.
ScenarioConfig parse_scenario(const std::string& text);

/// Canonical JSON rendering; parse_scenario(serialize_scenario(cfg)) == cfg.
std::string serialize_scenario(const ScenarioConfig& cfg);

/// Built-in scenarios. example1..example5 carry the benchmark systems and
/// their published attack settings; bankdemo and loopdemo exercise the same
/// pipelines on systems where every bank subset is feasible.
ScenarioConfig preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace uiobank
