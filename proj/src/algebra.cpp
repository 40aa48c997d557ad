#include "modwig/algebra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace modwig::algebra {

double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

AlgebraElement adjoint(const AlgebraElement& a) { return a.adjoint(); }

AlgebraElement abs(const AlgebraElement& a) {
  // Via the SVD of a itself: |a| = V S V*. Squaring into a*a first would
  // push singular values below sqrt(machine epsilon) into the noise floor.
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  return svd.matrixV() * svd.singularValues().cast<Complex>().asDiagonal() *
         svd.matrixV().adjoint();
}

std::vector<SpectralComponent> spectral_psd(const AlgebraElement& a,
                                            double tol) {
  if (a.rows() != a.cols()) throw ShapeMismatch("spectral_psd: not square");
  const double scale = op_norm(a);
  if (op_norm(a - a.adjoint()) > tol * (1.0 + scale))
    throw NotHermitian("spectral_psd: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es((a + a.adjoint()) / 2.0);
  std::vector<SpectralComponent> out;
  for (Index i = a.rows() - 1; i >= 0; --i) {  // descending
    const double lambda = es.eigenvalues()(i);
    if (lambda < -tol * (1.0 + scale))
      throw NotPSD("spectral_psd: negative eigenvalue " +
                   std::to_string(lambda));
    if (!(lambda > tol * scale)) continue;
    CVec v = es.eigenvectors().col(i);
    out.push_back({lambda, v * v.adjoint()});
  }
  return out;
}

bool is_minimal_projection(const AlgebraElement& a, double tol) {
  if (a.size() == 0 || a.rows() != a.cols()) return false;
  if (op_norm(a - a.adjoint()) > tol) return false;
  if (op_norm(a * a - a) > tol) return false;
  return std::abs(a.trace() - Complex(1.0, 0.0)) <= tol;
}

}  // namespace modwig::algebra
