#include "uiobank/control.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <string>
#include <utility>

#include "uiobank/linmath.hpp"

namespace uiobank {

namespace {

// True when the symmetric matrix has all eigenvalues strictly below -margin.
bool negative_definite(const Matrix& m, double margin) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    return eig.eigenvalues().maxCoeff() < -margin;
}

}  // namespace

const char* to_string(CertificateStatus status) {
    switch (status) {
        case CertificateStatus::common_p_validated: return "common-P-validated";
        case CertificateStatus::falsified: return "falsified";
        case CertificateStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

int stab_q_star(const LtiSystem& sys, const Tolerances& tol) {
    const int p = static_cast<int>(sys.p());
    int widest_failing = 0;  // largest cardinality of a subset that cannot stabilize
    for (int card = 1; card <= p; ++card)
        for (const IndexSet& j : subsets_of_size(p, card))
            if (!is_stabilizable(sys.A, actuator_columns(sys.B, j), tol))
                widest_failing = card;
    return std::max(0, p - widest_failing - 1);
}

SwitchingController synthesize_gains(const LtiSystem& sys, int q, const Tolerances& tol) {
    const int p = static_cast<int>(sys.p());
    if (q < 0 || q >= p)
        throw std::invalid_argument("synthesize_gains: protection level q=" + std::to_string(q) +
                                    " must satisfy 0 <= q < p");
    SwitchingController ctrl;
    ctrl.q = q;
    ctrl.q_star = stab_q_star(sys, tol);
    if (q > ctrl.q_star)
        throw SynthesisError("synthesize_gains: protection level q=" + std::to_string(q) +
                             " exceeds the widest survivable level q*=" +
                             std::to_string(ctrl.q_star));

    std::vector<Matrix> modes;
    for (int card = p - q; card <= p; ++card) {
        for (const IndexSet& j : subsets_of_size(p, card)) {
            const Matrix cols = actuator_columns(sys.B, j);
            if (!is_stabilizable(sys.A, cols, tol))
                throw SynthesisError("synthesize_gains: actuators " + set_to_braced(j) +
                                     " cannot stabilize the plant");
            Matrix k = lqr_gain(sys.A, cols, tol);
            const Matrix mode = sys.A - cols * k;
            if (!is_schur(mode, tol))
                throw NumericError("synthesize_gains: regulator for actuators " +
                                   set_to_braced(j) + " failed to stabilize its mode");
            modes.push_back(mode);
            ctrl.gains.emplace(j, std::move(k));
        }
    }
    ctrl.certificate = certify_switched(modes, tol);
    return ctrl;
}

SwitchedCertificate certify_switched(const std::vector<Matrix>& modes, const Tolerances& tol,
                                     int max_product_length) {
    validate(tol);
    if (modes.empty()) throw std::invalid_argument("certify_switched: no modes given");
    if (max_product_length < 1)
        throw std::invalid_argument("certify_switched: product length must be positive");
    const Eigen::Index n = modes.front().rows();
    for (const Matrix& m : modes) {
        if (m.rows() != n || m.cols() != n)
            throw DimensionError("certify_switched: modes must be square and equally sized");
        if (!m.allFinite())
            throw InvalidMatrixError("certify_switched: mode has non-finite entries");
    }

    SwitchedCertificate cert;

    // Stage one: a single Lyapunov candidate validated against every mode.
    try {
        Matrix p = common_stein_candidate(modes);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(p);
        bool valid = eig.eigenvalues().minCoeff() > tol.schur_margin;
        for (const Matrix& m : modes) {
            if (!valid) break;
            valid = negative_definite(m.transpose() * p * m - p, tol.schur_margin);
        }
        if (valid) {
            cert.status = CertificateStatus::common_p_validated;
            cert.p = std::move(p);
            return cert;
        }
    } catch (const SynthesisError&) {
        // Candidate system was singular; fall through to the product search.
    }

    // Stage two: hunt for a mode product that cannot decay under periodic repetition.
    std::vector<Matrix> products{Matrix::Identity(n, n)};
    for (int len = 1; len <= max_product_length; ++len) {
        std::vector<Matrix> longer;
        longer.reserve(products.size() * modes.size());
        for (const Matrix& head : products) {
            for (const Matrix& m : modes) {
                Matrix candidate = head * m;
                if (spectral_radius(candidate) >= 1.0) {
                    cert.status = CertificateStatus::falsified;
                    cert.falsified_length = len;
                    return cert;
                }
                longer.push_back(std::move(candidate));
            }
        }
        products = std::move(longer);
    }

    cert.status = CertificateStatus::inconclusive;
    return cert;
}

ClosedLoopState make_closed_loop_state(const LtiSystem& sys, PlantState plant,
                                       EstimatorVariant estimator, IsolationState iso,
                                       const Tolerances& tol) {
    if (plant.x.size() != sys.n())
        throw DimensionError("make_closed_loop_state: plant state dimension mismatch");
    if (iso.a_hat.size() != sys.p())
        throw DimensionError("make_closed_loop_state: isolation sized for the wrong actuation");
    ClosedLoopState st;
    st.plant = std::move(plant);
    st.estimator = std::move(estimator);
    st.iso = std::move(iso);
    st.b_pinv = pinv(sys.B, tol);
    return st;
}

ClosedLoopRow closed_loop_step(const LtiSystem& sys, const SwitchingController& ctrl,
                               ClosedLoopState& st, const AttackScenario& scn,
                               const RandomSource& rng, const Tolerances& tol) {
    const int p = static_cast<int>(sys.p());
    if (scn.num_actuators != p)
        throw DimensionError("closed_loop_step: attack scenario sized for the wrong actuation");

    ClosedLoopRow row;
    row.k = st.plant.k;
    row.x = st.plant.x;

    const Vector y = measure(sys, st.plant);
    EstimateResult est = estimator_estimate(st.estimator, y);
    row.x_hat = est.x_hat;
    row.sigma = std::move(est.sigma);
    row.e_norm = (row.x_hat - row.x).norm();

    row.a_hat = st.has_prev
                    ? reconstruct_attack(sys.A, st.b_pinv, row.x_hat, st.x_hat_prev, st.u_prev)
                    : Vector::Zero(p);
    st.iso = isolate(st.iso, row.a_hat, row.k, tol);
    row.w_hat = st.iso.w_hat;
    row.j_bar = st.iso.j_bar;

    if (static_cast<int>(row.w_hat.size()) > ctrl.q)
        throw SafetyStopError(row.k, row.w_hat,
                              "closed_loop_step: " + std::to_string(row.w_hat.size()) +
                                  " actuators isolated at tick " + std::to_string(row.k) +
                                  ", but the gain table only covers up to q=" +
                                  std::to_string(ctrl.q));

    // Trusted actuators carry the feedback; isolated ones are switched off entirely,
    // which removes their column and with it both control and attack injection.
    const Matrix& gain = ctrl.gains.at(row.j_bar);
    const Vector u_trusted = -gain * row.x_hat;
    row.u = Vector::Zero(p);
    for (std::size_t idx = 0; idx < row.j_bar.size(); ++idx)
        row.u(row.j_bar[idx] - 1) = u_trusted(static_cast<Eigen::Index>(idx));

    row.a_applied = attack_vector(scn, row.k, rng);
    for (int i : row.w_hat) row.a_applied(i - 1) = 0.0;

    st.plant = plant_step(sys, st.plant, row.u, row.a_applied);
    estimator_advance(st.estimator, y, row.u);
    st.x_hat_prev = row.x_hat;
    st.u_prev = row.u;
    st.has_prev = true;
    return row;
}

}  // namespace uiobank
