#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "modwig/algebra.hpp"
#include "modwig/errors.hpp"
#include "modwig/hmodule.hpp"
#include "modwig/opalgebra.hpp"
#include "modwig/rng.hpp"

using namespace modwig;

TEST_CASE("apply and compose respect operator order") {
  auto eng = rng::make_engine(1);
  const ModuleOperator s{rng::ginibre(3, 3, eng), 2};
  const ModuleOperator t{rng::ginibre(3, 3, eng), 2};
  const auto f = rng::random_module_element(2, 3, eng);
  const auto lhs = opalgebra::apply(opalgebra::compose(s, t), f);
  const auto rhs = opalgebra::apply(s, opalgebra::apply(t, f));
  CHECK(hmodule::norms(lhs - rhs).op_norm < 1e-12);
}

TEST_CASE("operators commute with the algebra action") {
  auto eng = rng::make_engine(2);
  const ModuleOperator s{rng::ginibre(4, 4, eng), 3};
  const Mat a = rng::ginibre(3, 3, eng);
  const auto f = rng::random_module_element(3, 4, eng);
  const auto lhs = opalgebra::apply(s, hmodule::module_action(a, f));
  const auto rhs = hmodule::module_action(a, opalgebra::apply(s, f));
  CHECK(hmodule::norms(lhs - rhs).op_norm < 1e-12);
}

TEST_CASE("op_adjoint satisfies the inner product identity") {
  auto eng = rng::make_engine(3);
  for (int trial = 0; trial < 10; ++trial) {
    const ModuleOperator s{rng::ginibre(3, 3, eng), 2};
    const auto f = rng::random_module_element(2, 3, eng);
    const auto g = rng::random_module_element(2, 3, eng);
    const Mat lhs = hmodule::inner(opalgebra::apply(s, f), g);
    const Mat rhs = hmodule::inner(f, opalgebra::apply(opalgebra::op_adjoint(s), g));
    CHECK(algebra::op_norm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("rank_one acts as h -> [h,g] f") {
  auto eng = rng::make_engine(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = rng::random_module_element(2, 4, eng);
    const auto g = rng::random_module_element(2, 4, eng);
    const auto h = rng::random_module_element(2, 4, eng);
    const auto lhs = opalgebra::apply(opalgebra::rank_one(f, g), h);
    const auto rhs = hmodule::module_action(hmodule::inner(h, g), f);
    CHECK(hmodule::norms(lhs - rhs).op_norm < 1e-10);
  }
}

TEST_CASE("rank_one of a vector-slot element is the scalar projection") {
  auto eng = rng::make_engine(5);
  const CVec xi = rng::random_unit_vector(2, eng);
  const CVec v = rng::random_unit_vector(3, eng);
  const ModuleElement f(xi * v.adjoint());
  const Mat p = opalgebra::rank_one(f, f).matrix;
  CHECK(algebra::op_norm(p - v * v.adjoint()) < 1e-12);
  CHECK(algebra::is_minimal_projection(p, 1e-10));
}

TEST_CASE("projection_from_set is an orthogonal projection fixing the basis") {
  auto eng = rng::make_engine(6);
  std::vector<ModuleElement> gens;
  for (int k = 0; k < 2; ++k) gens.push_back(rng::random_module_element(2, 4, eng));
  const auto basis = hmodule::modular_gram_schmidt(gens);
  REQUIRE(basis.size() > 0);
  const auto p = opalgebra::projection_from_set(basis);
  CHECK(algebra::op_norm(p.matrix * p.matrix - p.matrix) < 1e-10);
  CHECK(algebra::op_norm(p.matrix - p.matrix.adjoint()) < 1e-10);
  for (const auto& b : basis.elements) {
    CHECK(hmodule::norms(opalgebra::apply(p, b) - b).op_norm < 1e-9);
  }
  const auto outside = rng::random_module_element(2, 4, eng);
  const auto fixed = opalgebra::apply(p, outside);
  CHECK(hmodule::in_submodule(fixed, basis, 1e-8));
}

TEST_CASE("is_A_isometry detects unitaries and rejects scalings") {
  auto eng = rng::make_engine(7);
  const Mat u = rng::random_unitary(4, eng);
  CHECK(opalgebra::is_A_isometry(ModuleOperator{u, 2}));
  CHECK_FALSE(opalgebra::is_A_isometry(ModuleOperator{2.0 * u, 2}));
  CHECK_FALSE(opalgebra::is_A_isometry(ModuleOperator{Mat::Zero(4, 4), 2}));
}

TEST_CASE("A-isometries preserve the inner product exactly") {
  auto eng = rng::make_engine(8);
  const ModuleOperator u{rng::random_unitary(3, eng), 2};
  const auto f = rng::random_module_element(2, 3, eng);
  const auto g = rng::random_module_element(2, 3, eng);
  const Mat lhs = hmodule::inner(opalgebra::apply(u, f), opalgebra::apply(u, g));
  CHECK(algebra::op_norm(lhs - hmodule::inner(f, g)) < 1e-10);
}

TEST_CASE("rank_one_sum_factors recovers unimodular weights") {
  auto eng = rng::make_engine(9);
  const CVec b = rng::random_unit_vector(4, eng);

  SUBCASE("a single copy gives factor one") {
    const auto factors = opalgebra::rank_one_sum_factors({b}, b);
    REQUIRE(factors.size() == 1);
    CHECK(std::abs(factors[0] - Complex(1.0, 0.0)) < 1e-10);
  }

  SUBCASE("an equal split gives 1/sqrt(2) each") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto factors = opalgebra::rank_one_sum_factors({r * b, r * b}, b);
    REQUIRE(factors.size() == 2);
    CHECK(std::abs(factors[0] - Complex(r, 0.0)) < 1e-10);
    CHECK(std::abs(factors[1] - Complex(r, 0.0)) < 1e-10);
  }

  SUBCASE("phases are recovered") {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex ir(0.0, 1.0 / std::sqrt(2.0));
    const auto factors = opalgebra::rank_one_sum_factors({ir * b, r * b}, b);
    REQUIRE(factors.size() == 2);
    CHECK(std::abs(factors[0] - ir) < 1e-10);
    CHECK(std::abs(factors[1] - Complex(r, 0.0)) < 1e-10);
    double total = 0.0;
    for (const auto& c : factors) total += std::norm(c);
    CHECK(total == doctest::Approx(1.0));
  }

  SUBCASE("a violating sum is rejected") {
    CHECK_THROWS_AS(opalgebra::rank_one_sum_factors({b, b}, b),
                    HypothesisViolated);
  }

  SUBCASE("a zero reference is rejected") {
    CHECK_THROWS_AS(opalgebra::rank_one_sum_factors({b}, CVec::Zero(4)),
                    ZeroVector);
  }
}

TEST_CASE("classify_jordan recognizes the standard examples") {
  CHECK(opalgebra::classify_jordan(OperatorMap::identity(3)) ==
        opalgebra::MapKind::homomorphism);

  const auto transpose = OperatorMap::from_function(
      3, [](const Mat& a) { return Mat(a.transpose()); });
  CHECK(opalgebra::classify_jordan(transpose) ==
        opalgebra::MapKind::antihomomorphism);

  auto eng = rng::make_engine(10);
  const Mat u = rng::random_unitary(3, eng);
  const auto conj = opalgebra::conjugation_map(u);
  CHECK(opalgebra::classify_jordan(conj) == opalgebra::MapKind::homomorphism);
  CHECK(opalgebra::classify_jordan(opalgebra::transpose_conjugation_map(u)) ==
        opalgebra::MapKind::antihomomorphism);

  const auto symm = OperatorMap::from_function(
      3, [](const Mat& a) { return Mat(0.5 * (a + a.transpose())); });
  CHECK(opalgebra::classify_jordan(symm) == opalgebra::MapKind::none);

  const auto doubled = OperatorMap::from_function(
      3, [](const Mat& a) { return Mat(2.0 * a); });
  CHECK(opalgebra::classify_jordan(doubled) == opalgebra::MapKind::none);
}

TEST_CASE("classify_jordan collapses to homomorphism on a commutative algebra") {
  const auto transpose = OperatorMap::from_function(
      1, [](const Mat& a) { return Mat(a.transpose()); });
  CHECK(opalgebra::classify_jordan(transpose) ==
        opalgebra::MapKind::homomorphism);
}

TEST_CASE("extract_conjugation_isometry recovers W up to phase") {
  auto eng = rng::make_engine(11);
  for (Index n : {2, 3, 5}) {
    const Mat w = rng::random_unitary(n, eng);

    const auto homo = opalgebra::extract_conjugation_isometry(
        opalgebra::conjugation_map(w));
    CHECK(homo.kind == opalgebra::MapKind::homomorphism);
    CHECK(homo.residual < 1e-9);
    const Complex overlap = (w.adjoint() * homo.isometry).trace();
    CHECK((homo.isometry - (overlap / std::abs(overlap)) * w).norm() < 1e-9);

    // Brute-force envelope: a 4096-point phase grid resolves the minimum to
    // within ||w|| * pi / 4096.
    double dist_h = 1e9;
    for (int k = 0; k < 4096; ++k) {
      const double angle = 2.0 * M_PI * k / 4096.0;
      dist_h = std::min(dist_h, (homo.isometry - std::polar(1.0, angle) * w)
                                    .norm());
    }
    CHECK(dist_h < w.norm() * M_PI / 4096.0 + 1e-9);

    const auto anti = opalgebra::extract_conjugation_isometry(
        opalgebra::transpose_conjugation_map(w));
    CHECK(anti.kind == opalgebra::MapKind::antihomomorphism);
    CHECK(anti.residual < 1e-9);
  }
}

TEST_CASE("extract_conjugation_isometry gauge fixes the global phase") {
  auto eng = rng::make_engine(12);
  const Mat w = rng::random_unitary(3, eng);
  const auto rec = opalgebra::extract_conjugation_isometry(
      opalgebra::conjugation_map(w));
  // first nonzero entry in row-major order is positive real
  bool seen = false;
  for (Index i = 0; i < rec.isometry.rows() && !seen; ++i) {
    for (Index j = 0; j < rec.isometry.cols() && !seen; ++j) {
      const Complex v = rec.isometry(i, j);
      if (std::abs(v) > 1e-8) {
        CHECK(std::abs(v.imag()) < 1e-9);
        CHECK(v.real() > 0.0);
        seen = true;
      }
    }
  }
  CHECK(seen);
}

TEST_CASE("extract_conjugation_isometry rejects degenerate maps") {
  const auto zero = OperatorMap::from_function(
      2, [](const Mat& a) { return Mat(Mat::Zero(2, 2)); });
  CHECK_THROWS_AS(opalgebra::extract_conjugation_isometry(zero), NoAnchor);

  const auto symm = OperatorMap::from_function(
      3, [](const Mat& a) { return Mat(0.5 * (a + a.transpose())); });
  CHECK_THROWS_AS(opalgebra::extract_conjugation_isometry(symm), NotJordan);
}

TEST_CASE("commutant_dimension equals n squared") {
  CHECK(opalgebra::commutant_dimension(1, 1) == 1);
  CHECK(opalgebra::commutant_dimension(1, 3) == 9);
  CHECK(opalgebra::commutant_dimension(3, 1) == 1);
  CHECK(opalgebra::commutant_dimension(2, 2) == 4);
  CHECK(opalgebra::commutant_dimension(2, 3) == 9);
  CHECK(opalgebra::commutant_dimension(4, 2) == 4);
  CHECK_THROWS_AS(opalgebra::commutant_dimension(8, 8), SizeLimit);
}

TEST_CASE("operator_conjugation_map matches explicit conjugation") {
  auto eng = rng::make_engine(13);
  const ModuleOperator u{rng::random_unitary(3, eng), 2};
  const auto phi = opalgebra::operator_conjugation_map(u);
  const auto f = rng::random_module_element(2, 3, eng);
  const Mat a = rng::ginibre(3, 3, eng);
  // (U S U*) f computed operationally agrees with the matrix-picture map
  const ModuleOperator s{a, 2};
  const ModuleOperator conjugated{phi(a), 2};
  const auto lhs = opalgebra::apply(conjugated, f);
  const auto rhs = opalgebra::apply(
      u, opalgebra::apply(s, opalgebra::apply(opalgebra::op_adjoint(u), f)));
  CHECK(hmodule::norms(lhs - rhs).op_norm < 1e-10);
}
