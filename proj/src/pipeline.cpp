#include "uiobank/pipeline.hpp"

#include "uiobank/linmath.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace uiobank {

namespace {

/// Initial state draw: literal vector or seeded i.i.d. N(0,1) entries.
Vector draw_x0(const ScenarioConfig& cfg, const RandomSource& rng) {
    const Eigen::Index n = cfg.system.n();
    if (cfg.x0.literal) {
        if (cfg.x0.value.size() != n) {
            throw DimensionError("pipeline: x0 has " + std::to_string(cfg.x0.value.size()) +
                                 " entries for a " + std::to_string(n) + "-state system");
        }
        return cfg.x0.value;
    }
    Vector x0(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        x0(j) = rng.normal(streams::initial_state + static_cast<std::uint64_t>(j) + 1, 0);
    }
    return x0;
}

/// Exogenous input at tick k; one stream per actuator.
Vector input_vector(const std::vector<SignalSpec>& inputs, Eigen::Index p, std::int64_t k,
                    const RandomSource& rng) {
    Vector u = Vector::Zero(p);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        u(static_cast<Eigen::Index>(i)) =
            signal_value(inputs[i], k, rng, streams::exogenous_input + i + 1);
    }
    return u;
}

/// Isolation verdict scoring. A tick is correct when the verdict equals the
/// true attacked set, or undershoots it with every missed actuator excused:
/// the signal it carried at the previous tick was at or below the support
/// threshold, so no reconstruction could flag it. False positives are never
/// excused.
bool verdict_correct(const IndexSet& w_hat, const IndexSet& attacked, const Vector& a_prev,
                     bool has_prev, double support_eps) {
    if (!is_subset(w_hat, attacked)) return false;
    for (int i : attacked) {
        if (contains(w_hat, i)) continue;
        if (has_prev && std::abs(a_prev(i - 1)) > support_eps) return false;
    }
    return true;
}

double rel_to_unit_floor(double value, double reference) {
    return value / std::max(1.0, reference);
}

void append_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

PipelineResult run_pipeline(const ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();

    validate(cfg.tol);
    validate_system(cfg.system, cfg.tol);
    const LtiSystem& sys = cfg.system;
    const Eigen::Index n = sys.n();
    const Eigen::Index p = sys.p();
    if (cfg.attack.num_actuators != static_cast<int>(p)) {
        throw DimensionError("pipeline: attack covers " +
                             std::to_string(cfg.attack.num_actuators) + " actuators, system has " +
                             std::to_string(p));
    }
    validate(cfg.attack);
    if (!cfg.inputs.empty() && cfg.inputs.size() != static_cast<std::size_t>(p)) {
        throw DimensionError("pipeline: got " + std::to_string(cfg.inputs.size()) +
                             " input laws for " + std::to_string(p) + " actuators");
    }
    if (cfg.control && !cfg.inputs.empty()) {
        throw std::invalid_argument(
            "pipeline: closed-loop scenarios derive u from feedback; remove 'inputs'");
    }
    if (cfg.horizon < 1) throw std::invalid_argument("pipeline: horizon must be at least 1");
    if (cfg.burn_in < 0) throw std::invalid_argument("pipeline: burn_in must be non-negative");

    Vector x_hat0 = cfg.x_hat0;
    if (x_hat0.size() == 0) {
        x_hat0 = Vector::Zero(n);
    } else if (x_hat0.size() != n) {
        throw DimensionError("pipeline: x_hat0 has " + std::to_string(x_hat0.size()) +
                             " entries for a " + std::to_string(n) + "-state system");
    }

    const RandomSource rng(cfg.seed);
    const Vector x0 = draw_x0(cfg, rng);

    RunSummary summary;
    summary.scenario = cfg.name;
    summary.horizon = cfg.horizon;
    summary.seed = cfg.seed;

    // Estimator construction; infeasibility surfaces here as DesignError.
    EstimatorVariant est = CompleteEstimator{};
    if (cfg.estimator == EstimatorKind::complete) {
        est = make_complete_estimator(sys, x_hat0, cfg.tol);
        summary.estimator = "complete";
    } else {
        const int q_bank = cfg.bank_q ? *cfg.bank_q : max_q(sys, cfg.tol);
        if (q_bank < 1) {
            throw SynthesisError(
                "pipeline: no feasible bank protection level (max_q = 0); some actuator subset "
                "admits no partial observer");
        }
        ObserverBank bank = enumerate_bank(sys, q_bank, x_hat0, cfg.tol);
        summary.estimator =
            "bank(q=" + std::to_string(q_bank) + ", " + std::to_string(bank.size()) + " observers)";
        est = std::move(bank);
    }

    // Controller synthesis; the budget defaults to what both the gain table
    // and the estimator bank can survive.
    SwitchingController ctrl;
    if (cfg.control) {
        const int q_star = stab_q_star(sys, cfg.tol);
        int q_ctrl = q_star;
        if (const auto* bank = std::get_if<ObserverBank>(&est)) {
            q_ctrl = std::min(q_ctrl, bank->q);
        }
        if (cfg.control_q) q_ctrl = *cfg.control_q;
        ctrl = synthesize_gains(sys, q_ctrl, cfg.tol);
        summary.certificate = to_string(ctrl.certificate.status);
        if (ctrl.certificate.status == CertificateStatus::falsified) {
            summary.certificate +=
                "(length " + std::to_string(ctrl.certificate.falsified_length) + ")";
        }
    } else {
        summary.certificate = "none";
    }

    SimTrace trace;
    trace.n = static_cast<int>(n);
    trace.p = static_cast<int>(p);
    trace.rows.reserve(static_cast<std::size_t>(cfg.horizon));

    Vector x_final;
    Vector x_hat_final;

    if (cfg.control) {
        ClosedLoopState st =
            make_closed_loop_state(sys, PlantState{x0, 0}, std::move(est),
                                   make_isolation_state(static_cast<int>(p), cfg.burn_in,
                                                        cfg.isolation),
                                   cfg.tol);
        for (std::int64_t k = 0; k < cfg.horizon; ++k) {
            trace.rows.push_back(closed_loop_step(sys, ctrl, st, cfg.attack, rng, cfg.tol));
        }
        const Vector y = measure(sys, st.plant);
        x_hat_final = estimator_estimate(st.estimator, y).x_hat;
        x_final = st.plant.x;
    } else {
        PlantState plant{x0, 0};
        IsolationState iso =
            make_isolation_state(static_cast<int>(p), cfg.burn_in, cfg.isolation);
        const Matrix b_pinv = pinv(sys.B, cfg.tol);
        Vector x_hat_prev;
        Vector u_prev;
        bool has_prev = false;
        for (std::int64_t k = 0; k < cfg.horizon; ++k) {
            const Vector y = measure(sys, plant);
            const EstimateResult r = estimator_estimate(est, y);
            const Vector a_hat =
                has_prev ? reconstruct_attack(sys.A, b_pinv, r.x_hat, x_hat_prev, u_prev)
                         : Vector::Zero(p);
            iso = isolate(iso, a_hat, k, cfg.tol);

            const Vector u = input_vector(cfg.inputs, p, k, rng);
            const Vector a = attack_vector(cfg.attack, k, rng);

            ClosedLoopRow row;
            row.k = k;
            row.x = plant.x;
            row.x_hat = r.x_hat;
            row.e_norm = (r.x_hat - plant.x).norm();
            row.a_hat = a_hat;
            row.u = u;
            row.a_applied = a;
            row.w_hat = iso.w_hat;
            row.j_bar = iso.j_bar;
            row.sigma = r.sigma;
            trace.rows.push_back(std::move(row));

            plant = plant_step(sys, plant, u, a);
            estimator_advance(est, y, u);
            x_hat_prev = trace.rows.back().x_hat;
            u_prev = u;
            has_prev = true;
        }
        const Vector y = measure(sys, plant);
        x_hat_final = estimator_estimate(est, y).x_hat;
        x_final = plant.x;
    }

    // ---- scoring ----
    const std::int64_t h = cfg.horizon;
    std::int64_t ws = cfg.window_start ? *cfg.window_start : 4 * h / 5;
    ws = std::clamp<std::int64_t>(ws, 0, h - 1);
    summary.window_start = ws;

    summary.initial_error = trace.rows.front().e_norm;
    summary.final_error = (x_hat_final - x_final).norm();
    summary.initial_state = trace.rows.front().x.norm();
    summary.final_state = x_final.norm();

    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(h) + 1);
    for (const auto& row : trace.rows) errors.push_back(row.e_norm);
    errors.push_back(summary.final_error);
    if (errors.size() >= 10) {
        try {
            const ConvergenceFit fit = fit_envelope(errors);
            summary.lambda_bar =
                fit.status == FitStatus::trivially_converged ? 0.0 : fit.lambda_bar;
            summary.fit_status = to_string(fit.status);
        } catch (const std::invalid_argument&) {
            summary.fit_status = "not_fitted";
        }
    } else {
        summary.fit_status = "not_fitted";
    }

    double recon = 0.0;
    double state_max = summary.final_state;
    std::int64_t correct = 0;
    for (std::int64_t k = ws; k < h; ++k) {
        const auto& row = trace.rows[static_cast<std::size_t>(k)];
        if (k >= 1) {
            const auto& prev = trace.rows[static_cast<std::size_t>(k - 1)];
            recon = std::max(recon, (row.a_hat - prev.a_applied).lpNorm<Eigen::Infinity>());
        }
        state_max = std::max(state_max, row.x.norm());
        const Vector* a_prev =
            k >= 1 ? &trace.rows[static_cast<std::size_t>(k - 1)].a_applied : nullptr;
        if (verdict_correct(row.w_hat, cfg.attack.attacked,
                            a_prev ? *a_prev : Vector::Zero(p), a_prev != nullptr,
                            cfg.tol.support_eps)) {
            ++correct;
        }
    }
    summary.reconstruction_error = recon;
    summary.state_window_max = state_max;
    summary.isolation_accuracy = static_cast<double>(correct) / static_cast<double>(h - ws);

    // ---- configured gates ----
    const Thresholds& th = cfg.thresholds;
    auto add_check = [&](const std::string& name, double value, double limit, bool pass) {
        summary.checks.push_back(ThresholdCheck{name, value, limit, pass});
        summary.pass = summary.pass && pass;
    };
    if (th.lambda_bar_max) {
        const bool fitted_ok = summary.fit_status == "certified" ||
                               summary.fit_status == "trivially_converged";
        add_check("lambda_bar_max", summary.lambda_bar, *th.lambda_bar_max,
                  fitted_ok && summary.lambda_bar < *th.lambda_bar_max);
    }
    if (th.final_error_max) {
        add_check("final_error_max", summary.final_error, *th.final_error_max,
                  summary.final_error <= *th.final_error_max);
    }
    if (th.final_error_max_rel) {
        const double v = rel_to_unit_floor(summary.final_error, summary.initial_error);
        add_check("final_error_max_rel", v, *th.final_error_max_rel,
                  v <= *th.final_error_max_rel);
    }
    if (th.reconstruction_error_max) {
        add_check("reconstruction_error_max", summary.reconstruction_error,
                  *th.reconstruction_error_max,
                  summary.reconstruction_error <= *th.reconstruction_error_max);
    }
    if (th.isolation_accuracy_min) {
        add_check("isolation_accuracy_min", summary.isolation_accuracy,
                  *th.isolation_accuracy_min,
                  summary.isolation_accuracy >= *th.isolation_accuracy_min);
    }
    if (th.final_state_max_rel) {
        const double v = rel_to_unit_floor(summary.final_state, summary.initial_state);
        add_check("final_state_max_rel", v, *th.final_state_max_rel,
                  v <= *th.final_state_max_rel);
    }
    if (th.state_window_max_rel) {
        const double ref = summary.initial_state > 0.0 ? summary.initial_state : 1.0;
        const double v = summary.state_window_max / ref;
        add_check("state_window_max_rel", v, *th.state_window_max_rel,
                  v <= *th.state_window_max_rel);
    }
    if (th.require_certificate) {
        const bool ok =
            cfg.control && ctrl.certificate.status == CertificateStatus::common_p_validated;
        add_check("require_certificate", ok ? 1.0 : 0.0, 1.0, ok);
    }

    summary.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    return PipelineResult{std::move(trace), std::move(summary)};
}

std::string trace_to_csv(const SimTrace& trace) {
    std::string out;
    out += "k";
    for (int i = 1; i <= trace.n; ++i) out += ",x" + std::to_string(i);
    for (int i = 1; i <= trace.n; ++i) out += ",xhat" + std::to_string(i);
    out += ",e_norm";
    for (int i = 1; i <= trace.p; ++i) out += ",ahat" + std::to_string(i);
    for (int i = 1; i <= trace.p; ++i) out += ",u" + std::to_string(i);
    for (int i = 1; i <= trace.p; ++i) out += ",a" + std::to_string(i);
    out += ",w_hat,j_bar,sigma\n";

    for (const auto& row : trace.rows) {
        out += std::to_string(row.k);
        auto append_vec = [&](const Vector& v) {
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                out += ',';
                append_double(out, v(i));
            }
        };
        append_vec(row.x);
        append_vec(row.x_hat);
        out += ',';
        append_double(out, row.e_norm);
        append_vec(row.a_hat);
        append_vec(row.u);
        append_vec(row.a_applied);
        out += ',' + set_to_string(row.w_hat);
        out += ',' + set_to_string(row.j_bar);
        out += ',' + set_to_string(row.sigma);
        out += '\n';
    }
    return out;
}

void write_trace(const SimTrace& trace, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_trace: cannot open '" + path + "' for writing");
    const std::string csv = trace_to_csv(trace);
    f.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    f.flush();
    if (!f) throw std::runtime_error("write_trace: write to '" + path + "' failed");
}

std::string summary_to_json(const RunSummary& s) {
    nlohmann::ordered_json j;
    j["scenario"] = s.scenario;
    j["estimator"] = s.estimator;
    j["horizon"] = s.horizon;
    j["seed"] = s.seed;
    j["window_start"] = s.window_start;
    j["lambda_bar"] = s.lambda_bar;
    j["fit_status"] = s.fit_status;
    j["initial_error"] = s.initial_error;
    j["final_error"] = s.final_error;
    j["reconstruction_error"] = s.reconstruction_error;
    j["isolation_accuracy"] = s.isolation_accuracy;
    j["initial_state"] = s.initial_state;
    j["final_state"] = s.final_state;
    j["state_window_max"] = s.state_window_max;
    j["certificate"] = s.certificate;
    j["wall_clock_ms"] = s.wall_clock_ms;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["value"] = c.value;
        jc["limit"] = c.limit;
        jc["pass"] = c.pass;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    j["pass"] = s.pass;
    return j.dump(2) + "\n";
}

std::string summary_to_text(const RunSummary& s) {
    std::string out;
    out += "scenario:             " + s.scenario + "\n";
    out += "estimator:            " + s.estimator + "\n";
    out += "horizon:              " + std::to_string(s.horizon) + "\n";
    out += "seed:                 " + std::to_string(s.seed) + "\n";
    out += "window:               [" + std::to_string(s.window_start) + ", " +
           std::to_string(s.horizon) + "]\n";
    out += "fit:                  " + s.fit_status +
           " (lambda_bar = " + format_double(s.lambda_bar) + ")\n";
    out += "initial error:        " + format_double(s.initial_error) + "\n";
    out += "final error:          " + format_double(s.final_error) + "\n";
    out += "reconstruction error: " + format_double(s.reconstruction_error) + "\n";
    out += "isolation accuracy:   " + format_double(s.isolation_accuracy) + "\n";
    out += "initial |x|:          " + format_double(s.initial_state) + "\n";
    out += "final |x|:            " + format_double(s.final_state) + "\n";
    out += "window max |x|:       " + format_double(s.state_window_max) + "\n";
    out += "certificate:          " + s.certificate + "\n";
    out += "wall clock:           " + format_double(s.wall_clock_ms) + " ms\n";
    for (const auto& c : s.checks) {
        out += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name + ": " +
               format_double(c.value) + (c.name.find("_min") != std::string::npos ? " >= " : " <= ") +
               format_double(c.limit) + "\n";
    }
    out += std::string("result:               ") + (s.pass ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace uiobank
