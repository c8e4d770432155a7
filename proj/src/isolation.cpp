#include "uiobank/isolation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uiobank/linmath.hpp"

namespace uiobank {

const char* to_string(IsolationMode mode) {
    return mode == IsolationMode::instantaneous ? "instantaneous" : "sticky";
}

IsolationState make_isolation_state(int p, int burn_in, IsolationMode mode) {
    if (p < 1) throw std::invalid_argument("make_isolation_state: need at least one actuator");
    if (burn_in < 0) throw std::invalid_argument("make_isolation_state: negative burn-in");
    IsolationState iso;
    iso.a_hat = Vector::Zero(p);
    iso.j_bar.resize(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) iso.j_bar[static_cast<std::size_t>(i)] = i + 1;
    iso.burn_in = burn_in;
    iso.mode = mode;
    return iso;
}

Vector reconstruct_attack(const Matrix& a, const Matrix& b_pinv, const Vector& x_hat_k,
                          const Vector& x_hat_prev, const Vector& u_prev) {
    const Eigen::Index n = a.rows();
    const Eigen::Index p = b_pinv.rows();
    if (a.cols() != n) throw DimensionError("reconstruct_attack: A must be square");
    if (b_pinv.cols() != n)
        throw DimensionError("reconstruct_attack: B pseudoinverse must be p x n");
    if (x_hat_k.size() != n || x_hat_prev.size() != n)
        throw DimensionError("reconstruct_attack: estimate dimension mismatch");
    if (u_prev.size() != p) throw DimensionError("reconstruct_attack: input dimension mismatch");
    return b_pinv * (x_hat_k - a * x_hat_prev) - u_prev;
}

Vector reconstruct_attack(const LtiSystem& sys, const Vector& x_hat_k, const Vector& x_hat_prev,
                          const Vector& u_prev, const Tolerances& tol) {
    return reconstruct_attack(sys.A, pinv(sys.B, tol), x_hat_k, x_hat_prev, u_prev);
}

IsolationState isolate(IsolationState iso, const Vector& a_hat, std::int64_t k,
                       const Tolerances& tol) {
    validate(tol);
    const auto p = static_cast<std::size_t>(iso.a_hat.size());
    if (static_cast<std::size_t>(a_hat.size()) != p)
        throw DimensionError("isolate: attack estimate has length " +
                             std::to_string(a_hat.size()) + ", expected " + std::to_string(p));
    if (!a_hat.allFinite())
        throw InvalidMatrixError("isolate: attack estimate has non-finite entries");

    iso.a_hat = a_hat;
    if (k >= iso.burn_in) {
        IndexSet support;
        for (std::size_t i = 0; i < p; ++i)
            if (std::abs(a_hat(static_cast<Eigen::Index>(i))) > tol.support_eps)
                support.push_back(static_cast<int>(i) + 1);
        iso.w_hat = iso.mode == IsolationMode::sticky ? set_union(iso.w_hat, support) : support;
    }
    iso.j_bar = set_complement(iso.w_hat, static_cast<int>(p));
    return iso;
}

}  // namespace uiobank
