#include <cmath>

#include "doctest.h"
#include "modwig/algebra.hpp"
#include "modwig/errors.hpp"
#include "modwig/rng.hpp"

using namespace modwig;

namespace {

Mat matrix_unit(Index d, Index p, Index q) {
  Mat e = Mat::Zero(d, d);
  e(p, q) = Complex(1.0, 0.0);
  return e;
}

}  // namespace

TEST_CASE("op_norm matches hand values") {
  CHECK(algebra::op_norm(Mat::Identity(3, 3)) == doctest::Approx(1.0));
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = Complex(3.0, 0.0);
  CHECK(algebra::op_norm(a) == doctest::Approx(3.0));
  Mat b(2, 2);
  b << Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0),
      Complex(1.0, 0.0);
  // singular values of [[1,1],[0,1]] are (sqrt(5)+-1)/2
  CHECK(algebra::op_norm(b) == doctest::Approx((std::sqrt(5.0) + 1.0) / 2.0));
}

TEST_CASE("abs reproduces a worked 2x2 example") {
  // a = [[1, i], [0, 0]]: a* a = [[1, i], [-i, 1]], |a| = a* a / sqrt(2)
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = Complex(1.0, 0.0);
  a(0, 1) = Complex(0.0, 1.0);
  Mat expected(2, 2);
  expected << Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(0.0, -1.0),
      Complex(1.0, 0.0);
  expected /= std::sqrt(2.0);
  CHECK(algebra::op_norm(algebra::abs(a) - expected) < 1e-12);
}

TEST_CASE("abs squares back to a* a") {
  auto eng = rng::make_engine(11);
  for (int t = 0; t < 25; ++t) {
    const Mat a = rng::ginibre(4, 4, eng);
    const Mat r = algebra::abs(a);
    CHECK(algebra::op_norm(r - r.adjoint()) < 1e-10);
    CHECK(algebra::op_norm(r * r - a.adjoint() * a) < 1e-9);
  }
}

TEST_CASE("abs of the obstruction witnesses") {
  const Mat e12 = matrix_unit(2, 0, 1);
  const Mat e21 = matrix_unit(2, 1, 0);
  CHECK(algebra::op_norm(algebra::abs(e12) - matrix_unit(2, 1, 1)) < 1e-12);
  CHECK(algebra::op_norm(algebra::abs(e21) - matrix_unit(2, 0, 0)) < 1e-12);
  CHECK(algebra::op_norm(algebra::abs(e12) - algebra::abs(e21)) ==
        doctest::Approx(1.0));
}

TEST_CASE("spectral_psd recovers a known decomposition") {
  Mat a(2, 2);
  a << Complex(3.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
      Complex(1.0, 0.0);
  const auto parts = algebra::spectral_psd(a);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].eigenvalue == doctest::Approx(3.0));
  CHECK(parts[1].eigenvalue == doctest::Approx(1.0));
  Mat rebuilt = Mat::Zero(2, 2);
  for (const auto& part : parts) rebuilt += part.eigenvalue * part.projection;
  CHECK(algebra::op_norm(rebuilt - a) < 1e-12);
  for (const auto& part : parts) {
    CHECK(algebra::is_minimal_projection(part.projection, 1e-10));
  }
}

TEST_CASE("spectral_psd drops null directions and rejects negatives") {
  Mat rank_one = Mat::Zero(3, 3);
  rank_one(1, 1) = Complex(2.0, 0.0);
  CHECK(algebra::spectral_psd(rank_one).size() == 1);
  CHECK(algebra::spectral_psd(Mat::Zero(3, 3)).empty());
  Mat negative = Mat::Identity(2, 2);
  negative(1, 1) = Complex(-0.5, 0.0);
  CHECK_THROWS_AS(algebra::spectral_psd(negative), NotPSD);
}

TEST_CASE("spectral_psd orders eigenvalues descending with orthogonal ranges") {
  auto eng = rng::make_engine(23);
  const Mat g = rng::ginibre(4, 4, eng);
  const Mat psd = g * g.adjoint();
  const auto parts = algebra::spectral_psd(psd);
  REQUIRE(parts.size() == 4);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    CHECK(parts[i - 1].eigenvalue >= parts[i].eigenvalue);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      CHECK(algebra::op_norm(parts[i].projection * parts[j].projection) <
            1e-9);
    }
  }
}

TEST_CASE("is_minimal_projection accepts rank one and rejects others") {
  auto eng = rng::make_engine(5);
  const CVec v = rng::random_unit_vector(3, eng);
  const Mat p = v * v.adjoint();
  CHECK(algebra::is_minimal_projection(p, 1e-10));
  CHECK_FALSE(algebra::is_minimal_projection(Mat::Identity(3, 3), 1e-10));
  CHECK_FALSE(algebra::is_minimal_projection(2.0 * p, 1e-10));
  Mat nonherm = p;
  nonherm(0, 1) += Complex(0.0, 0.1);
  CHECK_FALSE(algebra::is_minimal_projection(nonherm, 1e-10));
}

TEST_CASE("adjoint is conjugate transpose") {
  Mat a(2, 2);
  a << Complex(1.0, 2.0), Complex(3.0, -4.0), Complex(0.0, 1.0),
      Complex(-2.0, 0.0);
  const Mat b = algebra::adjoint(a);
  CHECK(b(0, 0) == Complex(1.0, -2.0));
  CHECK(b(1, 0) == Complex(3.0, 4.0));
  CHECK(b(0, 1) == Complex(0.0, -1.0));
}
