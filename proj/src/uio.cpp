#include "uiobank/uio.hpp"

#include "uiobank/linmath.hpp"

namespace uiobank {

namespace {

void check_shapes(const LtiSystem& sys, const char* who) {
    if (sys.A.rows() == 0 || sys.A.rows() != sys.A.cols())
        throw DimensionError(std::string(who) + ": A must be square and non-empty");
    if (sys.B.rows() != sys.A.rows() || sys.B.cols() == 0)
        throw DimensionError(std::string(who) + ": B must be n x p with p >= 1");
    if (sys.C.cols() != sys.A.rows() || sys.C.rows() == 0)
        throw DimensionError(std::string(who) + ": C must be ny x n with ny >= 1");
    if (!sys.A.allFinite() || !sys.B.allFinite() || !sys.C.allFinite())
        throw InvalidMatrixError(std::string(who) + ": system matrices must be finite");
}

void check_subset(const LtiSystem& sys, const IndexSet& j, const char* who) {
    if (j.empty()) throw std::invalid_argument(std::string(who) + ": subset must be non-empty");
    int prev = 0;
    for (int i : j) {
        if (i < 1 || i > sys.p())
            throw std::invalid_argument(std::string(who) + ": actuator index " +
                                        std::to_string(i) + " is out of range 1.." +
                                        std::to_string(sys.p()));
        if (i <= prev)
            throw std::invalid_argument(std::string(who) +
                                        ": subset indices must be strictly increasing");
        prev = i;
    }
}

// Shared constructive core: reject the columns `cols` (the whole B for the
// complete observer), then place the remaining dynamics with a Kalman-style
// gain. E is the fixed left-inverse-based choice cols * pinv(C * cols);
// T = I - E C annihilates `cols` whenever C*cols has full column rank.
UioDesign build_design(const LtiSystem& sys, const Matrix& cols, IndexSet subset,
                       const Tolerances& tol, const char* who, Condition detect_cond) {
    const Eigen::Index n = sys.n();
    UioDesign d;
    d.subset = std::move(subset);
    d.E = cols * pinv(sys.C * cols, tol);
    const Matrix t = Matrix::Identity(n, n) - d.E * sys.C;
    const Matrix ta = t * sys.A;
    if (!is_detectable(ta, sys.C, tol))
        throw DesignError(detect_cond, d.subset,
                          std::string(who) + ": condition " + to_string(detect_cond) +
                              " failed: the decoupled pair (T A, C) is not detectable");
    const Matrix k = observer_gain(ta, sys.C, tol);
    d.N = ta - k * sys.C;
    d.L = ta * d.E + k * (Matrix::Identity(sys.ny(), sys.ny()) - sys.C * d.E);
    if (d.complete()) {
        d.T = Matrix::Zero(n, n);
        d.TB = Matrix::Zero(n, sys.p());
    } else {
        d.T = t;
        d.TB = t * sys.B;
    }
    const double residual = design_residual(sys, d);
    if (residual > tol.residual_tol)
        throw NumericError(std::string(who) + ": design residual " + std::to_string(residual) +
                           " exceeds the tolerance");
    if (!is_schur(d.N, tol))
        throw NumericError(std::string(who) + ": synthesized N is not Schur within the margin");
    return d;
}

}  // namespace

bool check_c1(const LtiSystem& sys, const Tolerances& tol) {
    check_shapes(sys, "check_c1");
    const Eigen::Index p = sys.p();
    return rank_of(sys.C * sys.B, tol) == p && rank_of(sys.B, tol) == p;
}

UioDesign design_complete(const LtiSystem& sys, const Tolerances& tol) {
    check_shapes(sys, "design_complete");
    if (!check_c1(sys, tol))
        throw DesignError(Condition::c1, {},
                          "design_complete: condition c1 failed: rank(C B) = " +
                              std::to_string(rank_of(sys.C * sys.B, tol)) + " but p = " +
                              std::to_string(sys.p()));
    return build_design(sys, sys.B, {}, tol, "design_complete", Condition::c2);
}

UioDesign design_partial(const LtiSystem& sys, const IndexSet& j, const Tolerances& tol) {
    check_shapes(sys, "design_partial");
    check_subset(sys, j, "design_partial");
    const Matrix bj = actuator_columns(sys.B, j);
    const auto card = static_cast<Eigen::Index>(j.size());
    if (rank_of(sys.C * bj, tol) != card || rank_of(bj, tol) != card)
        throw DesignError(Condition::c3, j,
                          "design_partial: condition c3 failed for subset " + set_to_braced(j) +
                              ": rank(C b_J) = " + std::to_string(rank_of(sys.C * bj, tol)) +
                              " but card(J) = " + std::to_string(card));
    return build_design(sys, bj, j, tol, "design_partial", Condition::c4);
}

double design_residual(const LtiSystem& sys, const UioDesign& d) {
    const Eigen::Index n = sys.n();
    const Matrix p = Matrix::Identity(n, n) - d.E * sys.C;
    double r = (d.N * p + d.L * sys.C - p * sys.A).cwiseAbs().maxCoeff();
    if (d.complete()) {
        r = std::max(r, (p * sys.B).cwiseAbs().maxCoeff());
    } else {
        r = std::max(r, ((d.T + d.E * sys.C - Matrix::Identity(n, n)) * sys.B)
                            .cwiseAbs()
                            .maxCoeff());
        r = std::max(r, (p * actuator_columns(sys.B, d.subset)).cwiseAbs().maxCoeff());
    }
    return r;
}

int max_q(const LtiSystem& sys, const Tolerances& tol) {
    check_shapes(sys, "max_q");
    const int p = static_cast<int>(sys.p());
    int widest_feasible = 0;
    for (int size = 1; size <= p - 1; ++size) {
        bool all_ok = true;
        for (const IndexSet& j : subsets_of_size(p, size)) {
            try {
                design_partial(sys, j, tol);
            } catch (const DesignError&) {
                all_ok = false;
                break;
            }
        }
        if (!all_ok) break;
        widest_feasible = size;
    }
    return widest_feasible / 2;
}

std::pair<ObserverState, Vector> observer_step(const UioDesign& d, const ObserverState& os,
                                               const Vector& y, const Vector& u) {
    if (os.z.size() != d.N.rows()) throw DimensionError("observer_step: state dimension mismatch");
    if (y.size() != d.E.cols())
        throw DimensionError("observer_step: measurement dimension mismatch");
    if (u.size() != d.TB.cols()) throw DimensionError("observer_step: input dimension mismatch");
    Vector x_hat = os.z + d.E * y;
    ObserverState next;
    next.z = d.N * os.z + d.L * y;
    if (!d.complete()) next.z += d.TB * u;
    return {std::move(next), std::move(x_hat)};
}

}  // namespace uiobank
