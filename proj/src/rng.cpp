#include "modwig/rng.hpp"

#include <cmath>

#include <Eigen/QR>

namespace modwig::rng {

Mat ginibre(Index rows, Index cols, Engine& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double root_half = std::sqrt(0.5);
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      m(i, j) = Complex(gauss(eng), gauss(eng)) * root_half;
  return m;
}

Mat random_unitary(Index n, Engine& eng) {
  Mat g = ginibre(n, n, eng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag == 0.0) ? Complex(1.0, 0.0) : rjj / mag;
  }
  return q;
}

Mat random_hermitian(Index n, Engine& eng) {
  Mat g = ginibre(n, n, eng);
  return (g + g.adjoint()) / 2.0;
}

CVec random_unit_vector(Index d, Engine& eng) {
  CVec v = ginibre(d, 1, eng).col(0);
  double len = v.norm();
  while (len < 1e-12) {
    v = ginibre(d, 1, eng).col(0);
    len = v.norm();
  }
  return v / len;
}

ModuleElement random_module_element(Index d, Index n, Engine& eng) {
  return ModuleElement(ginibre(d, n, eng));
}

}  // namespace modwig::rng
