#pragma once

#include <complex>

#include <Eigen/Dense>

namespace modwig {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Default relative tolerance for all numerical predicates. Dimensions stay
/// at desk scale (d, n <= 8), so double precision keeps conditioning mild.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace modwig
