#include "uiobank/linmath.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <complex>

namespace uiobank {

namespace {

void require_finite(const Matrix& m, const char* who) {
    if (!m.allFinite()) throw InvalidMatrixError(std::string(who) + ": matrix has non-finite entries");
}

template <typename MatrixType>
Eigen::Index svd_rank(const MatrixType& m, double rel_tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<MatrixType> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || !(s(0) > 0.0)) return 0;
    const double cutoff = rel_tol * s(0);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    return r;
}

Eigen::VectorXcd eigenvalues_of(const Matrix& m, const char* who) {
    if (m.rows() != m.cols()) throw DimensionError(std::string(who) + ": matrix must be square");
    require_finite(m, who);
    if (m.rows() == 0) return Eigen::VectorXcd();
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericError(std::string(who) + ": eigenvalue computation failed");
    return es.eigenvalues();
}

// Unit-weight discrete Riccati gain by fixed-point iteration from P = I.
// Convergence is measured in max-abs and capped; the caller has already
// established stabilizability, which guarantees a stabilizing fixed point.
Matrix dare_gain(const Matrix& a, const Matrix& b, const char* who) {
    const Eigen::Index n = a.rows();
    const Eigen::Index m = b.cols();
    const int max_iter = 10000;
    const double step_tol = 1e-12;

    Matrix p = Matrix::Identity(n, n);
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        Matrix btp = b.transpose() * p;                       // m x n
        Matrix g = Matrix::Identity(m, m) + btp * b;          // R + B'PB
        Matrix k = g.llt().solve(btp * a);                    // (R + B'PB)^-1 B'PA
        Matrix next = a.transpose() * p * a - (btp * a).transpose() * k + Matrix::Identity(n, n);
        next = 0.5 * (next + next.transpose());
        const double step = (next - p).cwiseAbs().maxCoeff();
        p = next;
        if (step <= step_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericError(std::string(who) +
                           ": Riccati fixed-point iteration did not converge within 10000 steps");
    Matrix btp = b.transpose() * p;
    Matrix g = Matrix::Identity(m, m) + btp * b;
    return g.llt().solve(btp * a);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Matrix pinv(const Matrix& m, const Tolerances& tol) {
    require_finite(m, "pinv");
    if (m.rows() == 0 || m.cols() == 0) return Matrix::Zero(m.cols(), m.rows());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cutoff = (s.size() > 0 && s(0) > 0.0) ? tol.rank_tol * s(0) : 0.0;
    Vector inv = Vector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::Index rank_of(const Matrix& m, const Tolerances& tol) {
    require_finite(m, "rank_of");
    return svd_rank(m, tol.rank_tol);
}

double spectral_radius(const Matrix& m) {
    Eigen::VectorXcd eigs = eigenvalues_of(m, "spectral_radius");
    double rho = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) rho = std::max(rho, std::abs(eigs(i)));
    return rho;
}

bool is_schur(const Matrix& m, const Tolerances& tol) {
    Eigen::VectorXcd eigs = eigenvalues_of(m, "is_schur");
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        if (std::abs(eigs(i)) > 1.0 - tol.schur_margin) return false;
    return true;
}

namespace {

// Shared PBH test: stacks `other` below (detectability) or beside
// (stabilizability) A - lambda I for every eigenvalue near or outside the
// unit circle.
bool pbh_test(const Matrix& a, const Matrix& other, bool stack_below, const Tolerances& tol,
              const char* who) {
    if (a.rows() != a.cols()) throw DimensionError(std::string(who) + ": A must be square");
    const Eigen::Index n = a.rows();
    if (stack_below) {
        if (other.cols() != n)
            throw DimensionError(std::string(who) + ": C column count must match the state dimension");
    } else {
        if (other.rows() != n)
            throw DimensionError(std::string(who) + ": B row count must match the state dimension");
    }
    require_finite(a, who);
    require_finite(other, who);

    Eigen::VectorXcd eigs = eigenvalues_of(a, who);
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const std::complex<double> lambda = eigs(i);
        if (std::abs(lambda) < 1.0 - tol.schur_margin) continue;  // stable modes are excused
        Eigen::MatrixXcd shifted = a.cast<std::complex<double>>();
        shifted.diagonal().array() -= lambda;
        Eigen::MatrixXcd pencil;
        if (stack_below) {
            pencil.resize(n + other.rows(), n);
            pencil.topRows(n) = shifted;
            pencil.bottomRows(other.rows()) = other.cast<std::complex<double>>();
        } else {
            pencil.resize(n, n + other.cols());
            pencil.leftCols(n) = shifted;
            pencil.rightCols(other.cols()) = other.cast<std::complex<double>>();
        }
        if (svd_rank(pencil, tol.rank_tol) < n) return false;
    }
    return true;
}

}  // namespace

bool is_detectable(const Matrix& a, const Matrix& c, const Tolerances& tol) {
    return pbh_test(a, c, /*stack_below=*/true, tol, "is_detectable");
}

bool is_stabilizable(const Matrix& a, const Matrix& b, const Tolerances& tol) {
    return pbh_test(a, b, /*stack_below=*/false, tol, "is_stabilizable");
}

Matrix lqr_gain(const Matrix& a, const Matrix& b, const Tolerances& tol) {
    if (a.rows() != a.cols()) throw DimensionError("lqr_gain: A must be square");
    if (b.rows() != a.rows())
        throw DimensionError("lqr_gain: B row count must match the state dimension");
    if (!is_stabilizable(a, b, tol))
        throw SynthesisError("lqr_gain: pair (A, B) is not stabilizable");
    return dare_gain(a, b, "lqr_gain");
}

Matrix observer_gain(const Matrix& f, const Matrix& h, const Tolerances& tol) {
    if (f.rows() != f.cols()) throw DimensionError("observer_gain: F must be square");
    if (h.cols() != f.rows())
        throw DimensionError("observer_gain: H column count must match the state dimension");
    if (!is_detectable(f, h, tol))
        throw SynthesisError("observer_gain: pair (F, H) is not detectable");
    // dual problem: K' stabilizes F' - H' K', so F - K H is Schur
    return dare_gain(f.transpose(), h.transpose(), "observer_gain").transpose();
}

Matrix common_stein_candidate(const std::vector<Matrix>& modes) {
    if (modes.empty())
        throw std::invalid_argument("common_stein_candidate: mode list is empty");
    const Eigen::Index n = modes.front().rows();
    for (const Matrix& m : modes) {
        if (m.rows() != m.cols() || m.rows() != n)
            throw DimensionError("common_stein_candidate: modes must be square and equally sized");
        require_finite(m, "common_stein_candidate");
    }
    // vectorized operator: sum_i kron(Ai', Ai') - m I, acting on vec(P)
    Matrix op = -static_cast<double>(modes.size()) * Matrix::Identity(n * n, n * n);
    for (const Matrix& m : modes) op += kron(m.transpose(), m.transpose());
    Vector rhs = -Eigen::Map<const Vector>(Matrix::Identity(n, n).eval().data(), n * n);
    Eigen::FullPivLU<Matrix> lu(op);
    if (!lu.isInvertible())
        throw CertificateUnavailableError(
            "common_stein_candidate: the summed Stein operator is singular");
    Vector v = lu.solve(rhs);
    Matrix p = Eigen::Map<Matrix>(v.data(), n, n);
    return 0.5 * (p + p.transpose());
}

}  // namespace uiobank
