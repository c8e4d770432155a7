#pragma once

#include "uiobank/types.hpp"

namespace uiobank {

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// rank_tol * sigma_max are treated as zero.
Matrix pinv(const Matrix& m, const Tolerances& tol = {});

/// Numerical rank with the same relative cutoff as pinv.
Eigen::Index rank_of(const Matrix& m, const Tolerances& tol = {});

double spectral_radius(const Matrix& m);

/// True when every eigenvalue modulus is at most 1 - schur_margin.
bool is_schur(const Matrix& m, const Tolerances& tol = {});

/// PBH test: rank [A - lambda I; C] = n for every eigenvalue with
/// |lambda| >= 1 - schur_margin.
bool is_detectable(const Matrix& a, const Matrix& c, const Tolerances& tol = {});

/// PBH test: rank [A - lambda I, B] = n for every eigenvalue with
/// |lambda| >= 1 - schur_margin.
bool is_stabilizable(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

/// Gain K such that F - K*H is Schur, synthesized as the dual of lqr_gain.
/// Throws SynthesisError when (F, H) is not detectable.
Matrix observer_gain(const Matrix& f, const Matrix& h, const Tolerances& tol = {});

/// Unit-weight discrete Riccati gain K such that A - B*K is Schur.
/// Throws SynthesisError when (A, B) is not stabilizable.
Matrix lqr_gain(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

/// Solves sum_i (Ai' P Ai - P) = -I by vectorization and returns the
/// symmetrized candidate. Throws CertificateUnavailableError when the linear
/// operator is singular; the caller must still check P > 0 and the per-mode
/// decrements before trusting the result.
Matrix common_stein_candidate(const std::vector<Matrix>& modes);

}  // namespace uiobank
