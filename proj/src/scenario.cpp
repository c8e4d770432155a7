#include "uiobank/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <utility>

namespace uiobank {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("scenario: " + msg);
}

const json& member(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + ": missing required key '" + key + "'");
    return *it;
}

/// Strict-schema guard: every object must consist solely of keys we know.
void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return it.key() == k; });
        if (!known) fail(where + ": unknown key '" + it.key() + "'");
    }
}

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + ": expected an object");
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + ": expected a number");
    return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where + ": expected an integer");
    return j.get<std::int64_t>();
}

bool as_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) fail(where + ": expected a boolean");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where + ": expected a string");
    return j.get<std::string>();
}

Vector parse_vector(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of numbers");
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = as_number(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

Matrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where + ": expected a non-empty array of rows");
    const json& first = j[0];
    if (!first.is_array() || first.empty()) {
        fail(where + ": expected rows to be non-empty arrays");
    }
    Matrix m(j.size(), first.size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        const json& row = j[r];
        const std::string rw = where + "[" + std::to_string(r) + "]";
        if (!row.is_array()) fail(rw + ": expected an array of numbers");
        if (row.size() != first.size()) {
            fail(rw + ": ragged matrix, row has " + std::to_string(row.size()) +
                 " entries but row 0 has " + std::to_string(first.size()));
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                as_number(row[c], rw + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

SignalSpec parse_signal(const json& j, const std::string& where) {
    expect_object(j, where);
    const std::string kind = as_string(member(j, where, "kind"), where + ".kind");
    if (kind == "uniform") {
        check_keys(j, where, {"kind", "lo", "hi"});
        UniformSignal s;
        s.lo = as_number(member(j, where, "lo"), where + ".lo");
        s.hi = as_number(member(j, where, "hi"), where + ".hi");
        return s;
    }
    if (kind == "constant") {
        check_keys(j, where, {"kind", "value"});
        ConstantSignal s;
        s.value = as_number(member(j, where, "value"), where + ".value");
        return s;
    }
    if (kind == "sinusoid") {
        check_keys(j, where, {"kind", "amplitude", "period"});
        SinusoidSignal s;
        s.amplitude = as_number(member(j, where, "amplitude"), where + ".amplitude");
        s.period = as_number(member(j, where, "period"), where + ".period");
        return s;
    }
    if (kind == "duty_uniform") {
        check_keys(j, where, {"kind", "duty", "lo", "hi"});
        DutyUniformSignal s;
        s.duty = as_number(member(j, where, "duty"), where + ".duty");
        s.lo = as_number(member(j, where, "lo"), where + ".lo");
        s.hi = as_number(member(j, where, "hi"), where + ".hi");
        return s;
    }
    fail(where + ".kind: unknown signal kind '" + kind + "'");
}

std::vector<SignalSpec> parse_signal_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of signal objects");
    std::vector<SignalSpec> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_signal(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json signal_to_json(const SignalSpec& spec) {
    json j;
    if (const auto* u = std::get_if<UniformSignal>(&spec)) {
        j["kind"] = "uniform";
        j["lo"] = u->lo;
        j["hi"] = u->hi;
    } else if (const auto* c = std::get_if<ConstantSignal>(&spec)) {
        j["kind"] = "constant";
        j["value"] = c->value;
    } else if (const auto* s = std::get_if<SinusoidSignal>(&spec)) {
        j["kind"] = "sinusoid";
        j["amplitude"] = s->amplitude;
        j["period"] = s->period;
    } else {
        const auto& d = std::get<DutyUniformSignal>(spec);
        j["kind"] = "duty_uniform";
        j["duty"] = d.duty;
        j["lo"] = d.lo;
        j["hi"] = d.hi;
    }
    return j;
}

bool same(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

bool same(const Vector& a, const Vector& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

std::string to_string(EstimatorKind kind) {
    return kind == EstimatorKind::complete ? "complete" : "bank";
}

bool operator==(const X0Spec& a, const X0Spec& b) {
    if (a.literal != b.literal) return false;
    return !a.literal || same(a.value, b.value);
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
    return a.name == b.name && same(a.system.A, b.system.A) && same(a.system.B, b.system.B) &&
           same(a.system.C, b.system.C) && a.attack == b.attack && a.inputs == b.inputs &&
           a.horizon == b.horizon && a.seed == b.seed && a.estimator == b.estimator &&
           a.bank_q == b.bank_q && a.isolation == b.isolation && a.burn_in == b.burn_in &&
           a.control == b.control && a.control_q == b.control_q && a.x0 == b.x0 &&
           same(a.x_hat0, b.x_hat0) && a.window_start == b.window_start && a.tol == b.tol &&
           a.thresholds == b.thresholds;
}

ScenarioConfig parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("parse error: ") + e.what());
    }
    expect_object(doc, "document");
    check_keys(doc, "document",
               {"name", "system", "attack", "inputs", "horizon", "seed", "estimator", "bank_q",
                "isolation", "burn_in", "control", "control_q", "x0", "x_hat0", "window_start",
                "tolerances", "thresholds"});

    ScenarioConfig cfg;
    if (doc.contains("name")) cfg.name = as_string(doc["name"], "name");

    const json& sys = member(doc, "document", "system");
    expect_object(sys, "system");
    check_keys(sys, "system", {"A", "B", "C"});
    cfg.system.A = parse_matrix(member(sys, "system", "A"), "system.A");
    cfg.system.B = parse_matrix(member(sys, "system", "B"), "system.B");
    cfg.system.C = parse_matrix(member(sys, "system", "C"), "system.C");
    const Eigen::Index n = cfg.system.A.rows();
    if (cfg.system.A.cols() != n) {
        fail("system.A: expected a square matrix, got " + std::to_string(n) + "x" +
             std::to_string(cfg.system.A.cols()));
    }
    if (cfg.system.B.rows() != n) {
        fail("system.B: expected " + std::to_string(n) + " rows to match system.A, got " +
             std::to_string(cfg.system.B.rows()));
    }
    if (cfg.system.C.cols() != n) {
        fail("system.C: expected " + std::to_string(n) + " columns to match system.A, got " +
             std::to_string(cfg.system.C.cols()));
    }
    const int p = static_cast<int>(cfg.system.p());

    cfg.attack.num_actuators = p;
    if (doc.contains("attack")) {
        const json& atk = doc["attack"];
        expect_object(atk, "attack");
        check_keys(atk, "attack", {"actuators", "signals"});
        const json& idx = member(atk, "attack", "actuators");
        if (!idx.is_array()) fail("attack.actuators: expected an array of integers");
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const std::string where = "attack.actuators[" + std::to_string(i) + "]";
            const std::int64_t v = as_integer(idx[i], where);
            if (v < 1 || v > p) {
                fail(where + ": actuator index " + std::to_string(v) +
                     " out of range for p = " + std::to_string(p));
            }
            cfg.attack.attacked.push_back(static_cast<int>(v));
        }
        if (!std::is_sorted(cfg.attack.attacked.begin(), cfg.attack.attacked.end()) ||
            std::adjacent_find(cfg.attack.attacked.begin(), cfg.attack.attacked.end()) !=
                cfg.attack.attacked.end()) {
            fail("attack.actuators: indices must be strictly increasing");
        }
        cfg.attack.signals = parse_signal_list(member(atk, "attack", "signals"), "attack.signals");
        if (cfg.attack.signals.size() != cfg.attack.attacked.size()) {
            fail("attack.signals: got " + std::to_string(cfg.attack.signals.size()) +
                 " signals for " + std::to_string(cfg.attack.attacked.size()) + " actuators");
        }
    }

    if (doc.contains("inputs")) {
        cfg.inputs = parse_signal_list(doc["inputs"], "inputs");
        if (!cfg.inputs.empty() && cfg.inputs.size() != static_cast<std::size_t>(p)) {
            fail("inputs: expected 0 or " + std::to_string(p) + " signal laws, got " +
                 std::to_string(cfg.inputs.size()));
        }
    }

    cfg.horizon = as_integer(member(doc, "document", "horizon"), "horizon");
    if (cfg.horizon < 1) fail("horizon: must be at least 1");
    const std::int64_t seed = as_integer(member(doc, "document", "seed"), "seed");
    if (seed < 0) fail("seed: must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.attack.seed = cfg.seed;

    if (doc.contains("estimator")) {
        const std::string kind = as_string(doc["estimator"], "estimator");
        if (kind == "complete") {
            cfg.estimator = EstimatorKind::complete;
        } else if (kind == "bank") {
            cfg.estimator = EstimatorKind::bank;
        } else {
            fail("estimator: expected 'complete' or 'bank', got '" + kind + "'");
        }
    }
    if (doc.contains("bank_q")) {
        const std::int64_t q = as_integer(doc["bank_q"], "bank_q");
        if (q < 1) fail("bank_q: must be at least 1");
        cfg.bank_q = static_cast<int>(q);
    }
    if (doc.contains("isolation")) {
        const std::string mode = as_string(doc["isolation"], "isolation");
        if (mode == "instantaneous") {
            cfg.isolation = IsolationMode::instantaneous;
        } else if (mode == "sticky") {
            cfg.isolation = IsolationMode::sticky;
        } else {
            fail("isolation: expected 'instantaneous' or 'sticky', got '" + mode + "'");
        }
    }
    if (doc.contains("burn_in")) {
        const std::int64_t b = as_integer(doc["burn_in"], "burn_in");
        if (b < 0) fail("burn_in: must be non-negative");
        cfg.burn_in = static_cast<int>(b);
    }
    if (doc.contains("control")) cfg.control = as_bool(doc["control"], "control");
    if (doc.contains("control_q")) {
        const std::int64_t q = as_integer(doc["control_q"], "control_q");
        if (q < 0) fail("control_q: must be non-negative");
        cfg.control_q = static_cast<int>(q);
    }

    if (doc.contains("x0")) {
        const json& x0 = doc["x0"];
        expect_object(x0, "x0");
        const std::string kind = as_string(member(x0, "x0", "kind"), "x0.kind");
        if (kind == "literal") {
            check_keys(x0, "x0", {"kind", "value"});
            cfg.x0.literal = true;
            cfg.x0.value = parse_vector(member(x0, "x0", "value"), "x0.value");
            if (cfg.x0.value.size() != n) {
                fail("x0.value: expected " + std::to_string(n) + " entries, got " +
                     std::to_string(cfg.x0.value.size()));
            }
        } else if (kind == "normal") {
            check_keys(x0, "x0", {"kind"});
            cfg.x0.literal = false;
        } else {
            fail("x0.kind: expected 'literal' or 'normal', got '" + kind + "'");
        }
    }

    if (doc.contains("x_hat0")) {
        cfg.x_hat0 = parse_vector(doc["x_hat0"], "x_hat0");
        if (cfg.x_hat0.size() != n) {
            fail("x_hat0: expected " + std::to_string(n) + " entries, got " +
                 std::to_string(cfg.x_hat0.size()));
        }
    }

    if (doc.contains("window_start")) {
        const std::int64_t w = as_integer(doc["window_start"], "window_start");
        if (w < 0 || w >= cfg.horizon) fail("window_start: must lie in [0, horizon)");
        cfg.window_start = w;
    }

    if (doc.contains("tolerances")) {
        const json& tol = doc["tolerances"];
        expect_object(tol, "tolerances");
        check_keys(tol, "tolerances", {"rank_tol", "residual_tol", "schur_margin", "support_eps"});
        if (tol.contains("rank_tol")) cfg.tol.rank_tol = as_number(tol["rank_tol"], "tolerances.rank_tol");
        if (tol.contains("residual_tol")) {
            cfg.tol.residual_tol = as_number(tol["residual_tol"], "tolerances.residual_tol");
        }
        if (tol.contains("schur_margin")) {
            cfg.tol.schur_margin = as_number(tol["schur_margin"], "tolerances.schur_margin");
        }
        if (tol.contains("support_eps")) {
            cfg.tol.support_eps = as_number(tol["support_eps"], "tolerances.support_eps");
        }
        try {
            validate(cfg.tol);
        } catch (const std::invalid_argument& e) {
            fail(std::string("tolerances: ") + e.what());
        }
    }

    if (doc.contains("thresholds")) {
        const json& th = doc["thresholds"];
        expect_object(th, "thresholds");
        check_keys(th, "thresholds",
                   {"lambda_bar_max", "final_error_max", "final_error_max_rel",
                    "reconstruction_error_max", "isolation_accuracy_min", "final_state_max_rel",
                    "state_window_max_rel", "require_certificate"});
        auto grab = [&](const char* key) -> std::optional<double> {
            if (!th.contains(key)) return std::nullopt;
            return as_number(th[key], std::string("thresholds.") + key);
        };
        cfg.thresholds.lambda_bar_max = grab("lambda_bar_max");
        cfg.thresholds.final_error_max = grab("final_error_max");
        cfg.thresholds.final_error_max_rel = grab("final_error_max_rel");
        cfg.thresholds.reconstruction_error_max = grab("reconstruction_error_max");
        cfg.thresholds.isolation_accuracy_min = grab("isolation_accuracy_min");
        cfg.thresholds.final_state_max_rel = grab("final_state_max_rel");
        cfg.thresholds.state_window_max_rel = grab("state_window_max_rel");
        if (th.contains("require_certificate")) {
            cfg.thresholds.require_certificate =
                as_bool(th["require_certificate"], "thresholds.require_certificate");
        }
    }

    return cfg;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
    json doc;
    doc["name"] = cfg.name;
    doc["system"]["A"] = matrix_to_json(cfg.system.A);
    doc["system"]["B"] = matrix_to_json(cfg.system.B);
    doc["system"]["C"] = matrix_to_json(cfg.system.C);

    json atk;
    atk["actuators"] = cfg.attack.attacked;
    json sigs = json::array();
    for (const auto& s : cfg.attack.signals) sigs.push_back(signal_to_json(s));
    atk["signals"] = std::move(sigs);
    doc["attack"] = std::move(atk);

    json ins = json::array();
    for (const auto& s : cfg.inputs) ins.push_back(signal_to_json(s));
    doc["inputs"] = std::move(ins);

    doc["horizon"] = cfg.horizon;
    doc["seed"] = cfg.seed;
    doc["estimator"] = to_string(cfg.estimator);
    if (cfg.bank_q) doc["bank_q"] = *cfg.bank_q;
    doc["isolation"] = to_string(cfg.isolation);
    doc["burn_in"] = cfg.burn_in;
    doc["control"] = cfg.control;
    if (cfg.control_q) doc["control_q"] = *cfg.control_q;

    if (cfg.x0.literal) {
        doc["x0"]["kind"] = "literal";
        doc["x0"]["value"] = vector_to_json(cfg.x0.value);
    } else {
        doc["x0"]["kind"] = "normal";
    }
    if (cfg.x_hat0.size() > 0) doc["x_hat0"] = vector_to_json(cfg.x_hat0);
    if (cfg.window_start) doc["window_start"] = *cfg.window_start;

    doc["tolerances"]["rank_tol"] = cfg.tol.rank_tol;
    doc["tolerances"]["residual_tol"] = cfg.tol.residual_tol;
    doc["tolerances"]["schur_margin"] = cfg.tol.schur_margin;
    doc["tolerances"]["support_eps"] = cfg.tol.support_eps;

    json th;
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) th[key] = *v;
    };
    put("lambda_bar_max", cfg.thresholds.lambda_bar_max);
    put("final_error_max", cfg.thresholds.final_error_max);
    put("final_error_max_rel", cfg.thresholds.final_error_max_rel);
    put("reconstruction_error_max", cfg.thresholds.reconstruction_error_max);
    put("isolation_accuracy_min", cfg.thresholds.isolation_accuracy_min);
    put("final_state_max_rel", cfg.thresholds.final_state_max_rel);
    put("state_window_max_rel", cfg.thresholds.state_window_max_rel);
    th["require_certificate"] = cfg.thresholds.require_certificate;
    doc["thresholds"] = std::move(th);

    return doc.dump(2) + "\n";
}

namespace {

ScenarioConfig base_config(const std::string& name, Matrix a, Matrix b, Matrix c) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.system.A = std::move(a);
    cfg.system.B = std::move(b);
    cfg.system.C = std::move(c);
    cfg.attack.num_actuators = static_cast<int>(cfg.system.p());
    cfg.attack.seed = cfg.seed;
    cfg.x_hat0 = Vector::Zero(cfg.system.n());
    return cfg;
}

/// Two-state single-actuator benchmark; its complete UIO exists.
ScenarioConfig make_example1() {
    Matrix a(2, 2), b(2, 1), c(3, 2);
    a << 0.2, 0.5, 0.2, 0.7;
    b << 1, 2;
    c << 1, 3, 1, 1, 3, 2;
    ScenarioConfig cfg = base_config("example1", a, b, c);
    cfg.estimator = EstimatorKind::complete;
    cfg.attack.attacked = {1};
    cfg.attack.signals = {UniformSignal{-1.0, 1.0}};
    cfg.inputs = {UniformSignal{-1.0, 1.0}};
    cfg.thresholds.lambda_bar_max = 1.0;
    cfg.thresholds.final_error_max_rel = 1e-8;
    return cfg;
}

/// Three-state identity-input benchmark; no complete UIO, bank requested at
/// protection level 1 (subset {1,2} fails the partial design conditions, so
/// construction reports that infeasibility).
ScenarioConfig make_example2() {
    Matrix a(3, 3), b(3, 3), c(2, 3);
    a << 0.5, 0, 0.1, 0.2, 0.7, 0, 1, 0, 0.3;
    b = Matrix::Identity(3, 3);
    c << 1, 2, 0, 2, 1, 3;
    ScenarioConfig cfg = base_config("example2", a, b, c);
    cfg.estimator = EstimatorKind::bank;
    cfg.bank_q = 1;
    cfg.attack.attacked = {2};
    cfg.attack.signals = {UniformSignal{-1.0, 1.0}};
    cfg.inputs = {UniformSignal{-1.0, 1.0}, UniformSignal{-1.0, 1.0}, UniformSignal{-1.0, 1.0}};
    cfg.thresholds.lambda_bar_max = 1.0;
    cfg.thresholds.final_error_max_rel = 1e-8;
    return cfg;
}

/// example1 plus attack reconstruction scored over the settled window.
ScenarioConfig make_example3() {
    ScenarioConfig cfg = make_example1();
    cfg.name = "example3";
    cfg.window_start = 800;
    cfg.thresholds.reconstruction_error_max = 1e-6;
    return cfg;
}

/// example2 plus isolation scored over the settled window.
ScenarioConfig make_example4() {
    ScenarioConfig cfg = make_example2();
    cfg.name = "example4";
    cfg.window_start = 800;
    cfg.thresholds.reconstruction_error_max = 1e-6;
    cfg.thresholds.isolation_accuracy_min = 0.99;
    return cfg;
}

/// Unstable three-state benchmark under switching feedback; the controller
/// switches isolated actuators off. Bank protection level 1 is requested and
/// hits the same {1,2} infeasibility as example2.
ScenarioConfig make_example5() {
    Matrix a(3, 3), b(3, 3), c(2, 3);
    a << 1.5, 0, 0.1, 0.2, 0.7, 0, 1, 0, 0.3;
    b << 1, 1, 1, 0, 1, 0, 0, 0, 1;
    c << 1, 2, 0, 2, 1, 3;
    ScenarioConfig cfg = base_config("example5", a, b, c);
    cfg.estimator = EstimatorKind::bank;
    cfg.bank_q = 1;
    cfg.control = true;
    cfg.control_q = 1;
    cfg.attack.attacked = {1};
    cfg.attack.signals = {UniformSignal{-1.0, 1.0}};
    cfg.x0.literal = true;
    cfg.x0.value = Vector::Constant(3, 100.0);
    cfg.window_start = 800;
    cfg.thresholds.lambda_bar_max = 1.0;
    cfg.thresholds.state_window_max_rel = 0.05;
    return cfg;
}

/// Stable three-state system where every bank subset is feasible: full
/// estimation, reconstruction, and isolation showcase.
ScenarioConfig make_bankdemo() {
    Matrix a(3, 3), b(3, 3), c(2, 3);
    a << 0.5, 0, 0.1, 0.2, 0.7, 0, 0.2, 0, 0.3;
    b = Matrix::Identity(3, 3);
    c << 1, 2, 0, 2, 1, 3;
    ScenarioConfig cfg = base_config("bankdemo", a, b, c);
    cfg.estimator = EstimatorKind::bank;
    cfg.bank_q = 1;
    cfg.attack.attacked = {2};
    cfg.attack.signals = {UniformSignal{-1.0, 1.0}};
    cfg.inputs = {UniformSignal{-1.0, 1.0}, UniformSignal{-1.0, 1.0}, UniformSignal{-1.0, 1.0}};
    cfg.window_start = 800;
    cfg.thresholds.lambda_bar_max = 1.0;
    cfg.thresholds.final_error_max_rel = 1e-8;
    cfg.thresholds.reconstruction_error_max = 1e-6;
    cfg.thresholds.isolation_accuracy_min = 0.99;
    return cfg;
}

/// Unstable three-state system with a fully feasible bank: the switching
/// controller isolates the attacked actuator and shuts it off.
ScenarioConfig make_loopdemo() {
    Matrix a(3, 3), b(3, 3), c(2, 3);
    a << 1.1, 1.6, 0, 0, 0.3, 0, 0.5, 1, 0.3;
    b = Matrix::Identity(3, 3);
    c << 1, 2, 0, 2, 1, 3;
    ScenarioConfig cfg = base_config("loopdemo", a, b, c);
    cfg.estimator = EstimatorKind::bank;
    cfg.bank_q = 1;
    cfg.control = true;
    cfg.control_q = 1;
    cfg.attack.attacked = {1};
    cfg.attack.signals = {UniformSignal{-1.0, 1.0}};
    cfg.x0.literal = true;
    cfg.x0.value = Vector::Constant(3, 100.0);
    cfg.window_start = 800;
    cfg.thresholds.lambda_bar_max = 1.0;
    cfg.thresholds.state_window_max_rel = 0.05;
    return cfg;
}

}  // namespace

ScenarioConfig preset(const std::string& name) {
    if (name == "example1") return make_example1();
    if (name == "example2") return make_example2();
    if (name == "example3") return make_example3();
    if (name == "example4") return make_example4();
    if (name == "example5") return make_example5();
    if (name == "bankdemo") return make_bankdemo();
    if (name == "loopdemo") return make_loopdemo();
    throw std::invalid_argument("scenario: unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"example1", "example2", "example3", "example4",
            "example5", "bankdemo", "loopdemo"};
}

}  // namespace uiobank
