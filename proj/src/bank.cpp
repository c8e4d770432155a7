#include "uiobank/bank.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace uiobank {

namespace {

void check_measurement(const ObserverBank& bank, const Vector& y, const char* who) {
    if (bank.designs_q.empty()) throw std::invalid_argument(std::string(who) + ": empty bank");
    const auto& any = bank.designs_q.begin()->second;
    if (y.size() != any.design.E.cols())
        throw DimensionError(std::string(who) + ": measurement has length " +
                             std::to_string(y.size()) + ", expected " +
                             std::to_string(any.design.E.cols()));
}

void prime_if_needed(ObserverBank& bank, const Vector& y) {
    if (bank.primed) return;
    for (auto* group : {&bank.designs_q, &bank.designs_2q})
        for (auto& [subset, entry] : *group) entry.state.z = bank.x_hat0 - entry.design.E * y;
    bank.primed = true;
}

}  // namespace

const char* to_string(FitStatus status) {
    switch (status) {
        case FitStatus::certified: return "certified";
        case FitStatus::trivially_converged: return "trivially-converged";
        case FitStatus::non_convergent: return "non-convergent";
    }
    return "unknown";
}

ObserverBank enumerate_bank(const LtiSystem& sys, int q, const Vector& x_hat0,
                            const Tolerances& tol) {
    const int p = static_cast<int>(sys.B.cols());
    if (q < 1 || 2 * q >= p)
        throw std::invalid_argument("enumerate_bank: protection level q=" + std::to_string(q) +
                                    " violates 0 < 2q < p for p=" + std::to_string(p));
    if (x_hat0.size() != sys.A.rows())
        throw DimensionError("enumerate_bank: initial estimate has length " +
                             std::to_string(x_hat0.size()) + ", expected " +
                             std::to_string(sys.A.rows()));
    if (!x_hat0.allFinite())
        throw InvalidMatrixError("enumerate_bank: initial estimate has non-finite entries");

    ObserverBank bank;
    bank.q = q;
    bank.x_hat0 = x_hat0;
    auto synthesize = [&](const IndexSet& subset) {
        try {
            BankEntry entry;
            entry.design = design_partial(sys, subset, tol);
            entry.state.z = Vector::Zero(sys.A.rows());
            return entry;
        } catch (const DesignError& e) {
            throw DesignError(e.condition(), e.subset(),
                              "bank infeasible: " + std::string(e.what()));
        }
    };
    for (const IndexSet& j : subsets_of_size(p, q)) bank.designs_q.emplace(j, synthesize(j));
    for (const IndexSet& s : subsets_of_size(p, 2 * q)) bank.designs_2q.emplace(s, synthesize(s));
    for (const auto& [j, entry_j] : bank.designs_q) {
        auto& list = bank.superset_map[j];
        for (const auto& [s, entry_s] : bank.designs_2q)
            if (is_subset(j, s)) list.push_back(s);
    }
    return bank;
}

FusedEstimate bank_estimate(ObserverBank& bank, const Vector& y) {
    check_measurement(bank, y, "bank_estimate");
    prime_if_needed(bank, y);

    FusedEstimate fused;
    for (const auto* group : {&bank.designs_q, &bank.designs_2q})
        for (const auto& [subset, entry] : *group)
            fused.estimates.emplace(subset, Vector(entry.state.z + entry.design.E * y));

    double best = std::numeric_limits<double>::infinity();
    for (const auto& [j, entry] : bank.designs_q) {
        double pi = 0.0;
        for (const IndexSet& s : bank.superset_map.at(j))
            pi = std::max(pi, (fused.estimates.at(j) - fused.estimates.at(s)).norm());
        fused.pi.emplace(j, pi);
        if (pi < best) {  // strict: ties keep the lexicographically first subset
            best = pi;
            fused.sigma = j;
        }
    }
    fused.x_hat = fused.estimates.at(fused.sigma);
    return fused;
}

void bank_advance(ObserverBank& bank, const Vector& y, const Vector& u) {
    check_measurement(bank, y, "bank_advance");
    if (!bank.primed)
        throw std::logic_error("bank_advance: bank has not produced an estimate yet");
    for (auto* group : {&bank.designs_q, &bank.designs_2q})
        for (auto& [subset, entry] : *group)
            entry.state = observer_step(entry.design, entry.state, y, u).first;
}

FusedEstimate bank_step(ObserverBank& bank, const Vector& y, const Vector& u) {
    FusedEstimate fused = bank_estimate(bank, y);
    bank_advance(bank, y, u);
    return fused;
}

ConvergenceFit fit_envelope(const std::vector<double>& error_trace) {
    if (error_trace.size() < 10)
        throw std::invalid_argument("fit_envelope: need at least 10 samples, got " +
                                    std::to_string(error_trace.size()));
    for (double v : error_trace)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("fit_envelope: trace entries must be finite and >= 0");

    std::vector<std::pair<double, double>> samples;  // (k, log e(k)) above the fit floor
    for (std::size_t k = 0; k < error_trace.size(); ++k)
        if (error_trace[k] > kFitFloor)
            samples.emplace_back(static_cast<double>(k), std::log(error_trace[k]));

    ConvergenceFit fit;
    if (samples.size() < 2) {
        // Nothing (or only the very first sample) rises above noise: converged outright.
        fit.status = FitStatus::trivially_converged;
        return fit;
    }
    if (error_trace.front() <= kFitFloor)
        throw std::invalid_argument("fit_envelope: initial error must exceed the fit floor");

    double sk = 0, sv = 0, skk = 0, skv = 0;
    for (const auto& [k, v] : samples) {
        sk += k;
        sv += v;
        skk += k * k;
        skv += k * v;
    }
    const double m = static_cast<double>(samples.size());
    const double denom = m * skk - sk * sk;
    const double slope = (m * skv - sk * sv) / denom;
    fit.lambda_bar = std::exp(slope);

    // Smallest prefactor that bounds every fitted sample: e(k) <= c_bar * lambda^k * e(0).
    const double e0 = error_trace.front();
    double c = 0.0;
    for (const auto& [k, v] : samples) c = std::max(c, std::exp(v - slope * k) / e0);
    fit.c_bar = c;
    fit.status = fit.lambda_bar < 1.0 ? FitStatus::certified : FitStatus::non_convergent;
    return fit;
}

}  // namespace uiobank
