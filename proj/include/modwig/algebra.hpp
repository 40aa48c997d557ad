#pragma once

#include <vector>

#include "modwig/errors.hpp"
#include "modwig/types.hpp"

namespace modwig {

/// Element of the coefficient algebra A = M_d(C): a square complex matrix.
using AlgebraElement = Mat;

}  // namespace modwig

namespace modwig::algebra {

/// One rank-one spectral component of a Hermitian PSD matrix.
struct SpectralComponent {
  double eigenvalue = 0.0;
  AlgebraElement projection;  // rank-one orthogonal projection
};

/// Operator norm (largest singular value). This is the C*-norm on A.
double op_norm(const Mat& a);

/// Conjugate transpose.
AlgebraElement adjoint(const AlgebraElement& a);

/// Absolute value |a|: the positive semidefinite square root of a*a.
/// Computed from the Hermitian eigendecomposition of a*a with eigenvalues
/// clamped at zero. Total on all square matrices.
AlgebraElement abs(const AlgebraElement& a);

/// Rank-one spectral decomposition of a Hermitian PSD matrix: returns pairs
/// (lambda_i, e_i) with e_i pairwise orthogonal rank-one projections and
/// sum lambda_i e_i = a, sorted by descending eigenvalue. Eigenvalues below
/// tol * ||a|| are omitted.
///
/// Throws NotHermitian if ||a - a*|| > tol * ||a||, NotPSD if an eigenvalue
/// falls below -tol * ||a||.
std::vector<SpectralComponent> spectral_psd(const AlgebraElement& a,
                                            double tol = kDefaultTol);

/// True iff a is Hermitian, idempotent and of trace 1 within tol, i.e. a
/// minimal (rank-one) projection in A.
bool is_minimal_projection(const AlgebraElement& a, double tol = kDefaultTol);

}  // namespace modwig::algebra
