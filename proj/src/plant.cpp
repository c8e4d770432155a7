#include "uiobank/plant.hpp"

#include "uiobank/linmath.hpp"

#include <cmath>
#include <numbers>

namespace uiobank {

void validate_system(const LtiSystem& sys, const Tolerances& tol) {
    const Eigen::Index n = sys.A.rows();
    if (n == 0 || sys.A.cols() != n) throw DimensionError("system.A must be square and non-empty");
    if (sys.B.rows() != n || sys.B.cols() == 0)
        throw DimensionError("system.B must have one row per state and at least one column");
    if (sys.C.cols() != n || sys.C.rows() == 0)
        throw DimensionError("system.C must have one column per state and at least one row");
    if (!sys.A.allFinite() || !sys.B.allFinite() || !sys.C.allFinite())
        throw InvalidMatrixError("system matrices must be finite");
    if (rank_of(sys.B, tol) != sys.B.cols())
        throw InvalidMatrixError("system.B must have full column rank");
    if (!is_detectable(sys.A, sys.C, tol))
        throw InvalidMatrixError("pair (A, C) is not detectable");
    if (!is_stabilizable(sys.A, sys.B, tol))
        throw InvalidMatrixError("pair (A, B) is not stabilizable");
}

Matrix actuator_columns(const Matrix& b, const IndexSet& j) {
    Matrix out(b.rows(), static_cast<Eigen::Index>(j.size()));
    for (std::size_t c = 0; c < j.size(); ++c) {
        if (j[c] < 1 || j[c] > b.cols())
            throw std::invalid_argument("actuator index " + std::to_string(j[c]) +
                                        " is out of range 1.." + std::to_string(b.cols()));
        out.col(static_cast<Eigen::Index>(c)) = b.col(j[c] - 1);
    }
    return out;
}

void validate(const AttackScenario& scn) {
    if (scn.num_actuators < 1)
        throw std::invalid_argument("attack scenario: num_actuators must be positive");
    if (scn.signals.size() != scn.attacked.size())
        throw std::invalid_argument("attack scenario: one signal per attacked actuator required");
    int prev = 0;
    for (int i : scn.attacked) {
        if (i < 1 || i > scn.num_actuators)
            throw std::invalid_argument("attack scenario: actuator index " + std::to_string(i) +
                                        " is out of range 1.." + std::to_string(scn.num_actuators));
        if (i <= prev)
            throw std::invalid_argument(
                "attack scenario: attacked indices must be strictly increasing");
        prev = i;
    }
    for (const SignalSpec& s : scn.signals) {
        if (const auto* u = std::get_if<UniformSignal>(&s)) {
            if (!(u->lo < u->hi))
                throw std::invalid_argument("attack scenario: uniform signal needs lo < hi");
        } else if (const auto* d = std::get_if<DutyUniformSignal>(&s)) {
            if (!(d->lo < d->hi))
                throw std::invalid_argument("attack scenario: duty signal needs lo < hi");
            if (d->duty < 0.0 || d->duty > 1.0)
                throw std::invalid_argument("attack scenario: duty must lie in [0, 1]");
        } else if (const auto* w = std::get_if<SinusoidSignal>(&s)) {
            if (!(w->period > 0.0))
                throw std::invalid_argument("attack scenario: sinusoid period must be positive");
        }
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t RandomSource::word(std::uint64_t stream, std::uint64_t counter,
                                 std::uint64_t salt) const {
    std::uint64_t h = splitmix64(seed_ ^ 0x8BADF00DDEADBEEFull);
    h = splitmix64(h ^ stream);
    h = splitmix64(h ^ counter);
    return splitmix64(h ^ salt);
}

double RandomSource::uniform(std::uint64_t stream, std::uint64_t counter, double lo, double hi,
                             std::uint64_t salt) const {
    const double u = static_cast<double>(word(stream, counter, salt) >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

double RandomSource::normal(std::uint64_t stream, std::uint64_t counter) const {
    // Box-Muller; u1 is shifted into (0, 1] so the log never sees zero.
    const double u1 = static_cast<double>((word(stream, counter, 1) >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(word(stream, counter, 2) >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double signal_value(const SignalSpec& spec, std::int64_t k, const RandomSource& rng,
                    std::uint64_t stream) {
    const auto counter = static_cast<std::uint64_t>(k);
    if (const auto* u = std::get_if<UniformSignal>(&spec)) {
        return rng.uniform(stream, counter, u->lo, u->hi);
    }
    if (const auto* c = std::get_if<ConstantSignal>(&spec)) {
        return c->value;
    }
    if (const auto* s = std::get_if<SinusoidSignal>(&spec)) {
        return s->amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / s->period);
    }
    const auto& d = std::get<DutyUniformSignal>(spec);
    const double coin = rng.uniform(stream, counter, 0.0, 1.0, /*salt=*/1);
    return coin < d.duty ? rng.uniform(stream, counter, d.lo, d.hi) : 0.0;
}

Vector attack_vector(const AttackScenario& scn, std::int64_t k, const RandomSource& rng) {
    validate(scn);
    Vector a = Vector::Zero(scn.num_actuators);
    for (std::size_t idx = 0; idx < scn.attacked.size(); ++idx) {
        const int i = scn.attacked[idx];
        const std::uint64_t stream = streams::attack + static_cast<std::uint64_t>(i);
        a(i - 1) = signal_value(scn.signals[idx], k, rng, stream);
    }
    return a;
}

PlantState plant_step(const LtiSystem& sys, const PlantState& st, const Vector& u,
                      const Vector& a) {
    if (st.x.size() != sys.n()) throw DimensionError("plant_step: state dimension mismatch");
    if (u.size() != sys.p()) throw DimensionError("plant_step: input dimension mismatch");
    if (a.size() != sys.p()) throw DimensionError("plant_step: attack dimension mismatch");
    PlantState next;
    next.x = sys.A * st.x + sys.B * (u + a);
    next.k = st.k + 1;
    return next;
}

Vector measure(const LtiSystem& sys, const PlantState& st) {
    if (st.x.size() != sys.n()) throw DimensionError("measure: state dimension mismatch");
    return sys.C * st.x;
}

}  // namespace uiobank
