#include "uiobank/control.hpp"
#include "uiobank/pipeline.hpp"
#include "uiobank/scenario.hpp"
#include "uiobank/uio.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace uiobank;

struct CommonOpts {
    std::string scenario_path;
    std::string preset_name;
    std::int64_t horizon = -1;  // -1: keep the scenario's value
    std::int64_t seed = -1;
    std::vector<std::string> modes;
    std::string out_path;
    std::string summary_path;
    bool json = false;
    bool strict = false;
    int sweep = 1;
    int jobs = 0;  // 0: pick from hardware_concurrency
};

std::string preset_list() {
    std::string out;
    for (const auto& name : preset_names()) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

void add_source_options(CLI::App* cmd, CommonOpts& o) {
    auto* scenario =
        cmd->add_option("--scenario", o.scenario_path, "Path to a scenario JSON document");
    auto* preset_opt =
        cmd->add_option("--preset", o.preset_name, "Built-in scenario: " + preset_list());
    scenario->excludes(preset_opt);
    preset_opt->excludes(scenario);
}

void add_run_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--horizon", o.horizon, "Override the scenario horizon");
    cmd->add_option("--seed", o.seed, "Override the scenario seed");
    cmd->add_option("--mode", o.modes,
                    "Override one setting, key=value. Keys: estimator=complete|bank, "
                    "isolation=instantaneous|sticky, control=on|off, bank_q=N, control_q=N, "
                    "burn_in=N, window_start=N, support_eps=X");
    cmd->add_option("--out", o.out_path, "Write the CSV trace here");
    cmd->add_option("--summary", o.summary_path, "Write the JSON summary document here");
    cmd->add_flag("--json", o.json, "Print the JSON summary to stdout instead of text");
    cmd->add_flag("--strict", o.strict,
                  "Fail unless the switching certificate reports a validated common-P");
    cmd->add_option("--sweep", o.sweep,
                    "Run this many consecutive seeds starting at the scenario seed")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", o.jobs, "Worker threads for --sweep (default: hardware)")
        ->check(CLI::NonNegativeNumber);
}

void apply_mode(ScenarioConfig& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) {
        throw std::invalid_argument("--mode expects key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    auto as_int = [&](const std::string& v) {
        std::size_t pos = 0;
        const long long r = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("--mode " + key + ": bad integer '" + v + "'");
        return r;
    };
    if (key == "estimator") {
        if (value == "complete") {
            cfg.estimator = EstimatorKind::complete;
        } else if (value == "bank") {
            cfg.estimator = EstimatorKind::bank;
        } else {
            throw std::invalid_argument("--mode estimator: expected complete|bank");
        }
    } else if (key == "isolation") {
        if (value == "instantaneous") {
            cfg.isolation = IsolationMode::instantaneous;
        } else if (value == "sticky") {
            cfg.isolation = IsolationMode::sticky;
        } else {
            throw std::invalid_argument("--mode isolation: expected instantaneous|sticky");
        }
    } else if (key == "control") {
        if (value == "on") {
            cfg.control = true;
        } else if (value == "off") {
            cfg.control = false;
        } else {
            throw std::invalid_argument("--mode control: expected on|off");
        }
    } else if (key == "bank_q") {
        cfg.bank_q = static_cast<int>(as_int(value));
    } else if (key == "control_q") {
        cfg.control_q = static_cast<int>(as_int(value));
    } else if (key == "burn_in") {
        cfg.burn_in = static_cast<int>(as_int(value));
    } else if (key == "window_start") {
        cfg.window_start = as_int(value);
    } else if (key == "support_eps") {
        cfg.tol.support_eps = std::stod(value);
    } else {
        throw std::invalid_argument(
            "--mode: unknown key '" + key +
            "' (expected estimator, isolation, control, bank_q, control_q, burn_in, "
            "window_start, support_eps)");
    }
}

ScenarioConfig load_config(const CommonOpts& o) {
    ScenarioConfig cfg;
    if (!o.scenario_path.empty()) {
        std::ifstream f(o.scenario_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open scenario file '" + o.scenario_path + "'");
        std::ostringstream buf;
        buf << f.rdbuf();
        cfg = parse_scenario(buf.str());
    } else if (!o.preset_name.empty()) {
        cfg = preset(o.preset_name);
    } else {
        throw std::invalid_argument("one of --scenario or --preset is required");
    }
    if (o.horizon >= 0) cfg.horizon = o.horizon;
    if (o.seed >= 0) {
        cfg.seed = static_cast<std::uint64_t>(o.seed);
        cfg.attack.seed = cfg.seed;
    }
    for (const auto& kv : o.modes) apply_mode(cfg, kv);
    if (o.strict) cfg.thresholds.require_certificate = true;
    return cfg;
}

/// Maps every failure class onto the exit-code contract: 2 for anything that
/// prevented the run (bad config, infeasible design, safety stop), 1 when the
/// run finished but a configured threshold failed, 0 otherwise.
int report_error(const std::exception& e) {
    if (const auto* d = dynamic_cast<const DesignError*>(&e)) {
        std::cerr << "error: observer design infeasible, condition " << to_string(d->condition());
        if (!d->subset().empty()) std::cerr << " for subset " << set_to_braced(d->subset());
        std::cerr << ": " << d->what() << "\n";
    } else if (const auto* s = dynamic_cast<const SafetyStopError*>(&e)) {
        std::cerr << "error: safety stop at tick " << s->time_index() << ", isolated "
                  << set_to_braced(s->isolated()) << ": " << s->what() << "\n";
    } else {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}

int run_one(const ScenarioConfig& cfg, const CommonOpts& o) {
    const PipelineResult res = run_pipeline(cfg);
    if (!o.out_path.empty()) write_trace(res.trace, o.out_path);
    if (!o.summary_path.empty()) {
        std::ofstream f(o.summary_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open summary file '" + o.summary_path + "'");
        f << summary_to_json(res.summary);
    }
    std::cout << (o.json ? summary_to_json(res.summary) : summary_to_text(res.summary));
    return res.summary.pass ? 0 : 1;
}

/// Fans seeds cfg.seed .. cfg.seed+sweep-1 across worker threads; each worker
/// owns its config copy, so RNG state is never shared.
int run_sweep(const ScenarioConfig& base, const CommonOpts& o) {
    if (!o.out_path.empty()) {
        throw std::invalid_argument("--out is for single runs; drop it when sweeping seeds");
    }
    const int count = o.sweep;
    std::vector<std::optional<RunSummary>> summaries(static_cast<std::size_t>(count));
    std::vector<std::string> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            ScenarioConfig cfg = base;
            cfg.seed = base.seed + static_cast<std::uint64_t>(i);
            cfg.attack.seed = cfg.seed;
            try {
                summaries[static_cast<std::size_t>(i)] = run_pipeline(cfg).summary;
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(i)] = e.what();
            }
        }
    };
    int threads = o.jobs > 0 ? o.jobs : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool any_error = false;
    bool all_pass = true;
    for (int i = 0; i < count; ++i) {
        const auto& sum = summaries[static_cast<std::size_t>(i)];
        const std::uint64_t seed = base.seed + static_cast<std::uint64_t>(i);
        if (!sum) {
            any_error = true;
            std::cout << "seed " << seed << ": ERROR " << errors[static_cast<std::size_t>(i)]
                      << "\n";
            continue;
        }
        all_pass = all_pass && sum->pass;
        std::cout << "seed " << seed << ": " << (sum->pass ? "PASS" : "FAIL")
                  << " (fit=" << sum->fit_status << ", lambda_bar=" << sum->lambda_bar
                  << ", final_error=" << sum->final_error << ", final_|x|=" << sum->final_state
                  << ")\n";
    }
    std::cout << (any_error ? "sweep: ERROR" : (all_pass ? "sweep: PASS" : "sweep: FAIL")) << " ("
              << count << " seeds)\n";
    return any_error ? 2 : (all_pass ? 0 : 1);
}

int cmd_run(const CommonOpts& o, ScenarioConfig cfg) {
    if (o.sweep > 1) return run_sweep(cfg, o);
    return run_one(cfg, o);
}

/// Feasibility survey: complete-observer conditions, every partial subset,
/// the bank protection ceiling, and the switching budget.
int cmd_design_check(const ScenarioConfig& cfg) {
    const LtiSystem& sys = cfg.system;
    validate_system(sys, cfg.tol);
    const int p = static_cast<int>(sys.p());
    std::cout << "system: n=" << sys.n() << ", p=" << p << ", ny=" << sys.ny() << "\n";

    try {
        design_complete(sys, cfg.tol);
        std::cout << "complete observer: feasible\n";
    } catch (const DesignError& e) {
        std::cout << "complete observer: infeasible (" << to_string(e.condition()) << ": "
                  << e.what() << ")\n";
    }

    std::cout << "partial observers:\n";
    for (int card = 1; card < p; ++card) {
        for (const IndexSet& j : subsets_of_size(p, card)) {
            std::cout << "  " << set_to_braced(j) << ": ";
            try {
                design_partial(sys, j, cfg.tol);
                std::cout << "feasible\n";
            } catch (const DesignError& e) {
                std::cout << "infeasible (" << to_string(e.condition()) << ": " << e.what()
                          << ")\n";
            }
        }
    }

    std::cout << "max_q: " << max_q(sys, cfg.tol) << "\n";
    std::cout << "q_star: " << stab_q_star(sys, cfg.tol) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "uiobank: unknown-input observer banks for state estimation, attack reconstruction, "
        "and switching control under sparse actuator injections"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* design = app.add_subcommand(
        "design-check", "Report observer/controller feasibility for a system");
    add_source_options(design, o);

    auto* estimate = app.add_subcommand(
        "estimate", "Run state estimation only (control off; state gates dropped)");
    add_source_options(estimate, o);
    add_run_options(estimate, o);

    auto* isolate_cmd = app.add_subcommand(
        "isolate", "Run estimation plus reconstruction/isolation scoring (control off)");
    add_source_options(isolate_cmd, o);
    add_run_options(isolate_cmd, o);

    auto* control_cmd = app.add_subcommand(
        "control", "Run the full closed loop with the switching controller (control on)");
    add_source_options(control_cmd, o);
    add_run_options(control_cmd, o);

    auto* demo = app.add_subcommand("demo", "Run a built-in scenario exactly as configured");
    demo->add_option("preset", o.preset_name, "One of: " + preset_list())->required();
    add_run_options(demo, o);

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg = load_config(o);
        if (design->parsed()) return cmd_design_check(cfg);
        if (estimate->parsed()) {
            cfg.control = false;
            cfg.thresholds.reconstruction_error_max.reset();
            cfg.thresholds.isolation_accuracy_min.reset();
            cfg.thresholds.final_state_max_rel.reset();
            cfg.thresholds.state_window_max_rel.reset();
            cfg.thresholds.require_certificate = false;
            return cmd_run(o, std::move(cfg));
        }
        if (isolate_cmd->parsed()) {
            cfg.control = false;
            cfg.thresholds.final_state_max_rel.reset();
            cfg.thresholds.state_window_max_rel.reset();
            cfg.thresholds.require_certificate = false;
            return cmd_run(o, std::move(cfg));
        }
        if (control_cmd->parsed()) {
            cfg.control = true;
            cfg.inputs.clear();
            return cmd_run(o, std::move(cfg));
        }
        return cmd_run(o, std::move(cfg));  // demo
    } catch (const std::exception& e) {
        return report_error(e);
    }
}
