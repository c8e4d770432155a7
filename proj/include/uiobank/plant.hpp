#pragma once

#include "uiobank/types.hpp"

#include <variant>

namespace uiobank {

/// Discrete-time plant x+ = A x + B (u + a), y = C x, where a is an
/// actuator-level false-data injection.
struct LtiSystem {
    Matrix A;  // n x n
    Matrix B;  // n x p, full column rank
    Matrix C;  // ny x n

    Eigen::Index n() const { return A.rows(); }
    Eigen::Index p() const { return B.cols(); }
    Eigen::Index ny() const { return C.rows(); }
};

/// Checks shapes, finiteness, full column rank of B, detectability of
/// (A, C) and stabilizability of (A, B). Throws on the first violation.
void validate_system(const LtiSystem& sys, const Tolerances& tol = {});

/// Columns of B selected by the 1-based index set J, in ascending order.
Matrix actuator_columns(const Matrix& b, const IndexSet& j);

// ---- attack signal shapes ----

struct UniformSignal {
    double lo = -1.0;
    double hi = 1.0;

    friend bool operator==(const UniformSignal&, const UniformSignal&) = default;
};

struct ConstantSignal {
    double value = 0.0;

    friend bool operator==(const ConstantSignal&, const ConstantSignal&) = default;
};

/// amplitude * sin(2 pi k / period)
struct SinusoidSignal {
    double amplitude = 1.0;
    double period = 50.0;

    friend bool operator==(const SinusoidSignal&, const SinusoidSignal&) = default;
};

/// Uniform draw with probability `duty` per tick, zero otherwise.
struct DutyUniformSignal {
    double duty = 0.5;
    double lo = -1.0;
    double hi = 1.0;

    friend bool operator==(const DutyUniformSignal&, const DutyUniformSignal&) = default;
};

using SignalSpec = std::variant<UniformSignal, ConstantSignal, SinusoidSignal, DutyUniformSignal>;

/// Which actuators carry injected signals and what those signals look like.
/// `signals` is aligned with `attacked`.
struct AttackScenario {
    int num_actuators = 0;
    IndexSet attacked;
    std::vector<SignalSpec> signals;
    std::uint64_t seed = 0;

    friend bool operator==(const AttackScenario&, const AttackScenario&) = default;
};

void validate(const AttackScenario& scn);

struct PlantState {
    Vector x;
    std::int64_t k = 0;
};

/// Counter-based generator (splitmix64-counter-v1): every draw is a pure
/// function of (seed, stream, counter), so traces replay bit-identically and
/// any tick can be sampled without stepping through its predecessors.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed) {}

    static constexpr const char* algorithm = "splitmix64-counter-v1";

    std::uint64_t seed() const { return seed_; }

    /// Raw 64-bit word for (stream, counter, salt).
    std::uint64_t word(std::uint64_t stream, std::uint64_t counter, std::uint64_t salt = 0) const;

    /// Uniform draw on [lo, hi).
    double uniform(std::uint64_t stream, std::uint64_t counter, double lo, double hi,
                   std::uint64_t salt = 0) const;

    /// Standard normal via Box-Muller on two derived words.
    double normal(std::uint64_t stream, std::uint64_t counter) const;

  private:
    std::uint64_t seed_;
};

/// Stream layout: every stochastic quantity owns a stream index so draws
/// never alias between signal kinds.
namespace streams {
inline constexpr std::uint64_t attack = 100;         // + 1-based actuator index
inline constexpr std::uint64_t exogenous_input = 500;  // + 1-based actuator index
inline constexpr std::uint64_t initial_state = 900;  // + 1-based state index
}  // namespace streams

/// Value of one signal law at tick k; stochastic laws draw from `stream`.
double signal_value(const SignalSpec& spec, std::int64_t k, const RandomSource& rng,
                    std::uint64_t stream);

/// Attack vector a(k): zero outside scn.attacked, signal-driven inside.
Vector attack_vector(const AttackScenario& scn, std::int64_t k, const RandomSource& rng);

/// One plant transition with applied input u and injected attack a.
PlantState plant_step(const LtiSystem& sys, const PlantState& st, const Vector& u,
                      const Vector& a);

/// Measurement y = C x.
Vector measure(const LtiSystem& sys, const PlantState& st);

}  // namespace uiobank
