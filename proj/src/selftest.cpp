#include "modwig/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>
#include <vector>

#include "modwig/algebra.hpp"
#include "modwig/canon.hpp"
#include "modwig/errors.hpp"
#include "modwig/hmodule.hpp"
#include "modwig/opalgebra.hpp"
#include "modwig/rng.hpp"
#include "modwig/wigner.hpp"

namespace modwig::selftest {

namespace {

struct Harness {
  GroupResult group;
  double tol;

  explicit Harness(std::string name, double tol) : tol(tol) {
    group.name = std::move(name);
  }

  void deviation(double dev, const std::string& what, double limit = -1.0) {
    ++group.cases;
    group.worst = std::max(group.worst, dev);
    if (!(dev <= (limit < 0.0 ? tol : limit))) fail(what);
  }

  void expect(bool ok, const std::string& what) {
    ++group.cases;
    if (!ok) fail(what);
  }

  void fail(const std::string& what) {
    ++group.failures;
    if (group.detail.empty()) group.detail = what;
  }
};

double rel(double dev, double scale) { return dev / (1.0 + scale); }

rng::Engine group_engine(const Config& config, const char* name) {
  return rng::make_engine(canon::mix(config.seed ^ canon::fnv1a(name)));
}

GroupResult module_axioms(const Config& config) {
  Harness h("module-axioms", config.tol);
  rng::Engine eng = group_engine(config, "module-axioms");
  for (int t = 0; t < config.trials; ++t) {
    const ModuleElement f = rng::random_module_element(config.d, config.n, eng);
    const ModuleElement g = rng::random_module_element(config.d, config.n, eng);
    const ModuleElement k = rng::random_module_element(config.d, config.n, eng);
    const Mat a = rng::ginibre(config.d, config.d, eng);
    const Mat b = rng::ginibre(config.d, config.d, eng);

    const AlgebraElement ff = hmodule::inner(f, f);
    const double scale = algebra::op_norm(ff);
    h.deviation(rel(algebra::op_norm(ff - ff.adjoint()), scale),
                "[f,f] is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es((ff + ff.adjoint()) / 2.0,
                                          Eigen::EigenvaluesOnly);
    h.deviation(rel(std::max(0.0, -es.eigenvalues()(0)), scale),
                "[f,f] has a negative eigenvalue");

    h.deviation(
        rel(algebra::op_norm(hmodule::inner(hmodule::module_action(a, f), g) -
                             a * hmodule::inner(f, g)),
            algebra::op_norm(a) * hmodule::norms(f).op_norm),
        "[af,g] != a[f,g]");
    h.deviation(rel(algebra::op_norm(hmodule::inner(f, g).adjoint() -
                                     hmodule::inner(g, f)),
                    hmodule::norms(f).op_norm),
                "[f,g]* != [g,f]");
    h.deviation(rel(algebra::op_norm(hmodule::inner(f + g, k) -
                                     hmodule::inner(f, k) -
                                     hmodule::inner(g, k)),
                    hmodule::norms(k).op_norm),
                "[f+g,k] != [f,k]+[g,k]");
    h.deviation(
        rel((hmodule::module_action(Mat(a * b), f) -
             hmodule::module_action(a, hmodule::module_action(b, f)))
                .slots()
                .norm(),
            f.slots().norm()),
        "(ab)f != a(bf)");
  }
  return h.group;
}

GroupResult projection_lemma(const Config& config) {
  Harness h("projection-lemma", config.tol);
  rng::Engine eng = group_engine(config, "projection-lemma");
  for (int t = 0; t < config.trials; ++t) {
    const int count = 1 + static_cast<int>(eng() % config.n);
    std::vector<ModuleElement> gens;
    for (int i = 0; i < count; ++i)
      gens.push_back(rng::random_module_element(config.d, config.n, eng));
    const ModularBasis basis = hmodule::modular_gram_schmidt(gens, config.tol);
    h.expect(hmodule::is_modular_orthonormal(basis.elements, 10.0 * config.tol),
             "Gram-Schmidt output is not modular orthonormal");

    const ModuleOperator p = opalgebra::projection_from_set(basis);
    h.deviation(algebra::op_norm(p.matrix - p.matrix.adjoint()),
                "span projection is not Hermitian");
    h.deviation(algebra::op_norm(Mat(p.matrix * p.matrix) - p.matrix),
                "span projection is not idempotent");

    ModuleElement inside = ModuleElement::zero(config.d, config.n);
    for (const auto& bel : basis.elements)
      inside += hmodule::module_action(rng::ginibre(config.d, config.d, eng),
                                       bel);
    const ModuleElement outside =
        rng::random_module_element(config.d, config.n, eng);
    for (const ModuleElement& probe : {inside, outside}) {
      const bool members = hmodule::in_submodule(probe, basis, 1e-6);
      const double fix =
          (opalgebra::apply(p, probe) - probe).slots().norm();
      const bool fixed = fix <= 1e-6 * (1.0 + probe.slots().norm());
      h.expect(members == fixed,
               "in_submodule disagrees with the range of the projection");
    }
  }
  return h.group;
}

GroupResult expansion_lemma(const Config& config) {
  Harness h("expansion-lemma", config.tol);
  rng::Engine eng = group_engine(config, "expansion-lemma");
  for (int t = 0; t < config.trials; ++t) {
    const int count = 1 + static_cast<int>(eng() % config.n);
    std::vector<ModuleElement> gens;
    for (int i = 0; i < count; ++i)
      gens.push_back(rng::random_module_element(config.d, config.n, eng));
    const ModularBasis basis = hmodule::modular_gram_schmidt(gens, config.tol);

    ModuleElement g = ModuleElement::zero(config.d, config.n);
    for (const auto& bel : basis.elements)
      g += hmodule::module_action(rng::ginibre(config.d, config.d, eng), bel);

    const std::vector<AlgebraElement> coeff = hmodule::expand(g, basis);
    ModuleElement rebuilt = ModuleElement::zero(config.d, config.n);
    AlgebraElement gram = Mat::Zero(config.d, config.d);
    for (Index i = 0; i < basis.size(); ++i) {
      rebuilt += hmodule::module_action(coeff[i], basis.elements[i]);
      gram += coeff[i] * coeff[i].adjoint();
    }
    const double scale = g.slots().norm();
    h.deviation(rel((rebuilt - g).slots().norm(), scale),
                "g != sum [g,f_a] f_a inside the submodule");
    h.deviation(rel(algebra::op_norm(hmodule::inner(g, g) - gram),
                    scale * scale),
                "[g,g] != sum [g,f_a][f_a,g]");
    h.expect(hmodule::in_submodule(g, basis, 1e-6),
             "membership fails for an element built inside the submodule");

    const ModuleElement o = rng::random_module_element(config.d, config.n, eng);
    const ModuleOperator p = opalgebra::projection_from_set(basis);
    const ModuleElement residue = o - opalgebra::apply(p, o);
    if (hmodule::norms(residue).trace_norm > 1e-3)
      h.expect(!hmodule::in_submodule(o, basis, 1e-6),
               "membership holds for an element off the submodule");
  }
  return h.group;
}

GroupResult rank_one_factors(const Config& config) {
  Harness h("rank-one-factors", config.tol);
  rng::Engine eng = group_engine(config, "rank-one-factors");
  for (int t = 0; t < config.trials; ++t) {
    const CVec b = rng::ginibre(config.d, 1, eng).col(0);
    if (b.norm() < 1e-6) continue;
    const int count = 1 + static_cast<int>(eng() % 4);
    CVec lambda = rng::ginibre(count, 1, eng).col(0);
    lambda /= lambda.norm();
    std::vector<CVec> a_list;
    for (int i = 0; i < count; ++i) a_list.push_back(CVec(lambda(i) * b));

    const std::vector<Complex> found =
        opalgebra::rank_one_sum_factors(a_list, b, config.tol);
    double dev = 0.0;
    double total = 0.0;
    for (int i = 0; i < count; ++i) {
      dev = std::max(dev, std::abs(found[i] - lambda(i)));
      total += std::norm(found[i]);
    }
    h.deviation(dev, "recovered factors differ from the constructed ones");
    h.deviation(std::abs(total - 1.0), "sum |lambda|^2 != 1");
  }
  return h.group;
}

GroupResult conjugation_isometry(const Config& config) {
  Harness h("conjugation-isometry", config.tol);
  rng::Engine eng = group_engine(config, "conjugation-isometry");
  for (int t = 0; t < config.trials; ++t) {
    const Mat w0 = rng::random_unitary(config.n, eng);
    try {
      const auto rec = opalgebra::extract_conjugation_isometry(
          opalgebra::conjugation_map(w0), config.tol);
      h.expect(rec.kind == opalgebra::MapKind::homomorphism,
               "conjugation map not classified as a homomorphism");
      h.deviation(wigner::phase_aligned_frobenius_distance(rec.isometry, w0),
                  "recovered W differs from the conjugating unitary", 1e-8);

      const auto rec2 = opalgebra::extract_conjugation_isometry(
          opalgebra::transpose_conjugation_map(w0), config.tol);
      const auto expected = config.n == 1
                                ? opalgebra::MapKind::homomorphism
                                : opalgebra::MapKind::antihomomorphism;
      h.expect(rec2.kind == expected,
               "transpose conjugation map classified incorrectly");
      if (config.n > 1)
        h.deviation(
            wigner::phase_aligned_frobenius_distance(rec2.isometry, w0),
            "recovered W differs in the antimultiplicative branch", 1e-8);
    } catch (const Error& e) {
      h.expect(false, std::string("extraction threw: ") + e.what());
    }
  }
  return h.group;
}

GroupResult commutant(const Config& config) {
  Harness h("commutant", config.tol);
  rng::Engine eng = group_engine(config, "commutant");
  if (config.trials > 0)
    h.expect(opalgebra::commutant_dimension(config.d, config.n) ==
                 config.n * config.n,
             "commutant dimension is not n^2");
  for (int t = 0; t < config.trials; ++t) {
    const CVec xi = rng::random_unit_vector(config.d, eng);
    const CVec w = rng::random_unit_vector(config.n, eng);
    const ModuleElement f(xi * w.transpose());
    const Mat p = opalgebra::rank_one(f, f).matrix;
    const Mat s = rng::ginibre(config.n, config.n, eng);
    const Mat x = p * s * p;
    const Complex c = x.trace();
    h.deviation(rel(algebra::op_norm(x - c * p), algebra::op_norm(s)),
                "f (.) f is not abelian: PSP is not a scalar multiple of P");
  }
  return h.group;
}

GroupResult obstruction(const Config& config) {
  Harness h("obstruction", config.tol);
  if (config.d < 2) {
    h.group.skipped = true;
    return h.group;
  }
  rng::Engine eng = group_engine(config, "obstruction");
  if (config.trials > 0) {
    Mat a = Mat::Zero(config.d, config.d);
    a(0, 1) = 1.0;
    const double dist =
        algebra::op_norm(algebra::abs(a) - algebra::abs(Mat(a.adjoint())));
    h.deviation(std::abs(dist - 1.0),
                "witness distance || |e_12| - |e_21| || differs from 1",
                1e-12);
  }
  for (int t = 0; t < config.trials; ++t) {
    const Mat a = rng::ginibre(config.d, 1, eng) *
                  rng::ginibre(config.d, 1, eng).adjoint();
    h.deviation(
        rel(std::abs(algebra::op_norm(algebra::abs(a)) -
                     algebra::op_norm(algebra::abs(Mat(a.adjoint())))),
            algebra::op_norm(a)),
        "|| |a| || != || |a*| || for rank-one a");
  }
  return h.group;
}

GroupResult preservation(const Config& config) {
  Harness h("preservation", config.tol);
  rng::Engine eng = group_engine(config, "preservation");
  for (int t = 0; t < config.trials; ++t) {
    const ModuleOperator u{rng::random_unitary(config.n, eng), config.d};
    const SymmetryOracle oracle = wigner::synthesize(u, eng());
    std::vector<std::pair<ModuleElement, ModuleElement>> samples;
    for (int i = 0; i < 10; ++i)
      samples.emplace_back(
          rng::random_module_element(config.d, config.n, eng),
          rng::random_module_element(config.d, config.n, eng));
    const auto report = wigner::check_preservation(oracle, samples, 1e-10);
    h.deviation(report.max_deviation,
                "synthetic oracle violates |[Tf,Tf']| = |[f,f']|", 1e-10);
  }
  return h.group;
}

GroupResult decompose_round_trip(const Config& config) {
  Harness h("decompose-round-trip", config.tol);
  if (config.d < 2) {
    h.group.skipped = true;
    return h.group;
  }
  rng::Engine eng = group_engine(config, "decompose-round-trip");
  for (int t = 0; t < config.trials; ++t) {
    const Mat u0 = rng::random_unitary(config.n, eng);
    const SymmetryOracle oracle =
        wigner::synthesize(ModuleOperator{u0, config.d}, eng());
    try {
      DecomposeOptions options;
      options.tol = config.tol;
      options.phase_probes = 20;
      options.seed = eng();
      const WignerDecomposition dec = wigner::decompose(oracle, options);
      h.deviation(dec.max_residual, "round-trip residual too large", 1e-8);
      h.deviation(
          wigner::phase_aligned_frobenius_distance(dec.isometry.matrix, u0),
          "recovered isometry differs from the generator", 1e-8);
      double unit_dev = 0.0;
      for (const auto& sample : dec.phases)
        unit_dev = std::max(unit_dev, std::abs(std::abs(sample.phase) - 1.0));
      h.deviation(unit_dev, "a recovered phase is not unimodular");
    } catch (const Error& e) {
      h.expect(false, std::string("decompose threw: ") + e.what());
    }
  }
  return h.group;
}

GroupResult measure_pipeline(const Config& config) {
  Harness h("measure-pipeline", config.tol);
  if (config.d < 2) {
    h.group.skipped = true;
    return h.group;
  }
  rng::Engine eng = group_engine(config, "measure-pipeline");
  for (int t = 0; t < config.trials; ++t) {
    const Mat u0 = rng::random_unitary(config.n, eng);
    const SymmetryOracle oracle =
        wigner::synthesize(ModuleOperator{u0, config.d}, eng());
    try {
      const OperatorMap phi = wigner::extend_to_linear(oracle, 1e-8);
      h.expect(opalgebra::classify_jordan(phi) ==
                   opalgebra::MapKind::homomorphism,
               "extended map is not a homomorphism");

      double dev = 0.0;
      for (int i = 0; i < 5; ++i) {
        const ModuleElement f =
            rng::random_module_element(config.d, config.n, eng);
        const Mat lhs = phi(opalgebra::rank_one(f, f).matrix);
        const Mat rhs = opalgebra::rank_one(oracle(f), oracle(f)).matrix;
        dev = std::max(dev, rel(algebra::op_norm(lhs - rhs),
                                algebra::op_norm(rhs)));
      }
      h.deviation(dev, "phi(f (.) f) != Tf (.) Tf", 1e-8);

      const auto rec = opalgebra::extract_conjugation_isometry(phi, 1e-6);
      DecomposeOptions options;
      options.phase_probes = 5;
      options.seed = eng();
      const WignerDecomposition dec = wigner::decompose(oracle, options);
      h.deviation(
          wigner::phase_aligned_frobenius_distance(
              wigner::induced_module_operator(rec.isometry, config.d).matrix,
              dec.isometry.matrix),
          "extracted isometry disagrees with the decomposition", 1e-6);

      std::vector<ModuleElement> gens;
      const int count = 1 + static_cast<int>(eng() % config.n);
      for (int i = 0; i < count; ++i)
        gens.push_back(rng::random_module_element(config.d, config.n, eng));
      const ModularBasis basis_a =
          hmodule::modular_gram_schmidt(gens, config.tol);
      std::vector<ModuleElement> mixed;
      for (int i = 0; i < count; ++i) {
        ModuleElement m = ModuleElement::zero(config.d, config.n);
        for (const auto& gen : gens)
          m += hmodule::module_action(rng::ginibre(config.d, config.d, eng),
                                      gen);
        mixed.push_back(std::move(m));
      }
      const ModularBasis basis_b =
          hmodule::modular_gram_schmidt(mixed, config.tol);
      bool same = basis_a.size() == basis_b.size();
      for (const auto& el : basis_b.elements)
        same = same && hmodule::in_submodule(el, basis_a, 1e-6);
      if (same)
        h.expect(wigner::measure_well_defined(oracle, basis_a, basis_b, 1e-8),
                 "projection measure differs across equivalent bases");
    } catch (const Error& e) {
      h.expect(false, std::string("pipeline threw: ") + e.what());
    }
  }
  return h.group;
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& g : groups)
    if (!g.skipped && !g.pass()) return false;
  return true;
}

Report run(const Config& config) {
  if (config.d < 1 || config.n < 1 || config.d > 6 || config.n > 8 ||
      config.d * config.n > 32)
    throw SizeLimit("selftest requires 1 <= d <= 6, 1 <= n <= 8, d*n <= 32");
  if (config.trials < 0) throw SizeLimit("selftest requires trials >= 0");

  Report report;
  report.groups.push_back(module_axioms(config));
  report.groups.push_back(projection_lemma(config));
  report.groups.push_back(expansion_lemma(config));
  report.groups.push_back(rank_one_factors(config));
  report.groups.push_back(conjugation_isometry(config));
  report.groups.push_back(commutant(config));
  report.groups.push_back(obstruction(config));
  report.groups.push_back(preservation(config));
  report.groups.push_back(decompose_round_trip(config));
  report.groups.push_back(measure_pipeline(config));
  return report;
}

void print(const Report& report, std::ostream& out) {
  for (const auto& g : report.groups) {
    char worst[32];
    std::snprintf(worst, sizeof worst, "%.3e", g.worst);
    out << "group=" << g.name << " cases=" << g.cases
        << " failures=" << g.failures << " worst=" << worst << " status="
        << (g.skipped ? "skipped" : (g.pass() ? "pass" : "fail")) << "\n";
    if (!g.skipped && !g.pass() && !g.detail.empty())
      out << "# " << g.name << ": " << g.detail << "\n";
  }
}

}  // namespace modwig::selftest
