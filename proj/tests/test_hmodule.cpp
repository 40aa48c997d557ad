#include <cmath>

#include "doctest.h"
#include "modwig/algebra.hpp"
#include "modwig/errors.hpp"
#include "modwig/hmodule.hpp"
#include "modwig/rng.hpp"

using namespace modwig;

TEST_CASE("inner product is the slot matrix pairing") {
  // d = 1 reduces to the usual complex inner product, conjugate in g
  Mat f(1, 2);
  f << Complex(1.0, 0.0), Complex(0.0, 1.0);
  Mat g(1, 2);
  g << Complex(2.0, 0.0), Complex(1.0, 1.0);
  const Mat ip = hmodule::inner(ModuleElement(f), ModuleElement(g));
  REQUIRE(ip.rows() == 1);
  // 1 * conj(2) + i * conj(1 + i) = 2 + i(1 - i) = 3 + i
  CHECK(ip(0, 0).real() == doctest::Approx(3.0));
  CHECK(ip(0, 0).imag() == doctest::Approx(1.0));
}

TEST_CASE("inner satisfies the module axioms") {
  auto eng = rng::make_engine(77);
  for (int t = 0; t < 20; ++t) {
    const auto f = rng::random_module_element(3, 4, eng);
    const auto g = rng::random_module_element(3, 4, eng);
    const Mat a = rng::ginibre(3, 3, eng);

    const Mat left = hmodule::inner(hmodule::module_action(a, f), g);
    CHECK(algebra::op_norm(left - a * hmodule::inner(f, g)) < 1e-10);

    const Mat sym = hmodule::inner(f, g).adjoint() - hmodule::inner(g, f);
    CHECK(algebra::op_norm(sym) < 1e-12);

    const Mat ff = hmodule::inner(f, f);
    CHECK(algebra::op_norm(ff - ff.adjoint()) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(ff);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("norms report operator and trace data of [f,f]") {
  Mat f = Mat::Zero(2, 2);
  f(0, 0) = Complex(3.0, 0.0);
  f(1, 1) = Complex(4.0, 0.0);
  const auto norms = hmodule::norms(ModuleElement(f));
  CHECK(norms.op_norm == doctest::Approx(4.0));
  CHECK(norms.trace_norm == doctest::Approx(5.0));
}

TEST_CASE("spectral_split rebuilds the element from unit components") {
  auto eng = rng::make_engine(101);
  for (int t = 0; t < 20; ++t) {
    const auto f = rng::random_module_element(3, 5, eng);
    const auto parts = hmodule::spectral_split(f);
    REQUIRE(!parts.empty());
    ModuleElement rebuilt = ModuleElement::zero(3, 5);
    for (const auto& part : parts) {
      const Mat unit_gram = hmodule::inner(part.unit, part.unit);
      CHECK(algebra::is_minimal_projection(unit_gram, 1e-8));
      CHECK(algebra::op_norm(unit_gram - part.projection) < 1e-8);
      rebuilt += hmodule::module_action(part.lambda * part.projection,
                                        part.unit);
    }
    CHECK(hmodule::norms(rebuilt - f).op_norm < 1e-9);
  }
}

TEST_CASE("spectral_split of a slot element is itself") {
  auto eng = rng::make_engine(5);
  CVec xi = rng::random_unit_vector(3, eng);
  const auto f = ModuleElement::slot(2.0 * xi, 4, 1);
  const auto parts = hmodule::spectral_split(f);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].lambda == doctest::Approx(2.0));
  CHECK(hmodule::norms(hmodule::module_action(
                           Mat(parts[0].lambda * parts[0].projection),
                           parts[0].unit) -
                       f)
            .op_norm < 1e-10);
}

TEST_CASE("spectral_split of zero is empty") {
  CHECK(hmodule::spectral_split(ModuleElement::zero(2, 3)).empty());
}

TEST_CASE("modular_gram_schmidt produces an orthonormal basis") {
  auto eng = rng::make_engine(303);
  for (int t = 0; t < 10; ++t) {
    std::vector<ModuleElement> gens;
    for (int k = 0; k < 4; ++k) {
      gens.push_back(rng::random_module_element(2, 3, eng));
    }
    const auto basis = hmodule::modular_gram_schmidt(gens);
    CHECK(hmodule::is_modular_orthonormal(basis.elements, 1e-8));
    for (const auto& g : gens) {
      CHECK(hmodule::in_submodule(g, basis, 1e-8));
    }
  }
}

TEST_CASE("modular_gram_schmidt drops dependent generators") {
  auto eng = rng::make_engine(9);
  const auto f = rng::random_module_element(2, 3, eng);
  const Mat a = rng::ginibre(2, 2, eng);
  std::vector<ModuleElement> gens{f, hmodule::module_action(a, f)};
  const auto basis = hmodule::modular_gram_schmidt(gens);
  // a f lies in the submodule generated by f, so one basis direction per
  // spectral component of f suffices
  CHECK(basis.size() <= 2);
  CHECK(hmodule::in_submodule(gens[1], basis, 1e-8));
}

TEST_CASE("expand recovers coefficients against an orthonormal basis") {
  auto eng = rng::make_engine(404);
  std::vector<ModuleElement> gens;
  for (int k = 0; k < 3; ++k) {
    gens.push_back(rng::random_module_element(3, 4, eng));
  }
  const auto basis = hmodule::modular_gram_schmidt(gens);
  ModuleElement target = ModuleElement::zero(3, 4);
  std::vector<Mat> coeffs;
  for (const auto& b : basis.elements) {
    const Mat c = rng::ginibre(3, 3, eng);
    coeffs.push_back(c);
    target += hmodule::module_action(c, b);
  }
  const auto expanded = hmodule::expand(target, basis);
  REQUIRE(expanded.size() == coeffs.size());
  ModuleElement rebuilt = ModuleElement::zero(3, 4);
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    rebuilt += hmodule::module_action(expanded[i], basis.elements[i]);
  }
  CHECK(hmodule::norms(rebuilt - target).op_norm < 1e-9);
}

TEST_CASE("in_submodule rejects directions outside the span") {
  const auto e0 = ModuleElement::slot(CVec::Unit(2, 0), 3, 0);
  const auto e1 = ModuleElement::slot(CVec::Unit(2, 0), 3, 1);
  const auto basis = hmodule::modular_gram_schmidt({e0});
  CHECK(hmodule::in_submodule(e0, basis, 1e-9));
  CHECK_FALSE(hmodule::in_submodule(e1, basis, 1e-9));
  // the A-multiple with the other spin direction stays inside
  Mat a(2, 2);
  a << Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0),
      Complex(0.0, 0.0);
  CHECK(hmodule::in_submodule(hmodule::module_action(a, e0), basis, 1e-9));
}

TEST_CASE("shape mismatches are rejected") {
  const auto f = ModuleElement::zero(2, 3);
  const auto g = ModuleElement::zero(3, 3);
  CHECK_THROWS_AS(hmodule::inner(f, g), ShapeMismatch);
  CHECK_THROWS_AS((void)(f + g), ShapeMismatch);
  CHECK_THROWS_AS(hmodule::module_action(Mat::Identity(3, 3), f),
                  ShapeMismatch);
}
