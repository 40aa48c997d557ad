#include "modwig/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/QR>

#include "modwig/algebra.hpp"
#include "modwig/canon.hpp"
#include "modwig/hmodule.hpp"
#include "modwig/rng.hpp"

namespace modwig {

SymmetryOracle::SymmetryOracle(Kind kind, Index d, Index n)
    : kind_(kind), d_(d), n_(n) {}

SymmetryOracle SymmetryOracle::synthetic(const ModuleOperator& u,
                                         std::uint64_t seed, Complex factor) {
  if (!opalgebra::is_A_isometry(u))
    throw NotIsometry("synthetic oracle requires an A-isometry");
  if (std::abs(std::abs(factor) - 1.0) > kDefaultTol)
    throw HypothesisViolated("synthetic phase factor must be a unit scalar");
  SymmetryOracle o(Kind::synthetic, u.d, u.n());
  o.base_ = u;
  o.seed_ = seed;
  o.factor_ = factor;
  return o;
}

SymmetryOracle SymmetryOracle::table(
    Index d, Index n,
    std::vector<std::pair<ModuleElement, ModuleElement>> entries) {
  SymmetryOracle o(Kind::table, d, n);
  for (const auto& [in, out] : entries)
    if (in.dim() != d || in.slot_count() != n || out.dim() != d ||
        out.slot_count() != n)
      throw ShapeMismatch("table entry shape differs from the oracle shape");
  o.entries_ = std::move(entries);
  return o;
}

SymmetryOracle SymmetryOracle::function(
    Index d, Index n, std::function<ModuleElement(const ModuleElement&)> fn) {
  SymmetryOracle o(Kind::function, d, n);
  o.fn_ = std::move(fn);
  return o;
}

SymmetryOracle SymmetryOracle::conjugation(Index d, Index n) {
  return function(d, n, [](const ModuleElement& f) {
    return ModuleElement(f.slots().conjugate());
  });
}

ModuleElement SymmetryOracle::operator()(const ModuleElement& f) const {
  if (f.dim() != d_ || f.slot_count() != n_)
    throw ShapeMismatch("oracle query has the wrong shape");
  switch (kind_) {
    case Kind::synthetic: {
      ModuleElement image = opalgebra::apply(base_, f);
      if (f.is_zero(0.0)) return image;  // phi(0) = 1
      Complex phase = factor_;
      if (seed_ != 0) {
        const std::uint64_t h = canon::mix(
            canon::fnv1a(canon::element_key(f)) ^ canon::mix(seed_));
        const double angle = 2.0 * std::numbers::pi *
                             static_cast<double>(h >> 11) / 9007199254740992.0;
        phase *= Complex(std::cos(angle), std::sin(angle));
      }
      image *= phase;
      return image;
    }
    case Kind::table: {
      const std::string key = canon::element_key(f);
      for (const auto& [in, out] : entries_)
        if (canon::element_key(in) == key) return out;
      throw OracleMiss("table oracle has no entry for the queried element");
    }
    case Kind::function:
      return fn_(f);
  }
  throw Error("unreachable oracle kind");
}

}  // namespace modwig

namespace modwig::wigner {

SymmetryOracle synthesize(const ModuleOperator& u, std::uint64_t phase_seed,
                          Complex phase_factor) {
  return SymmetryOracle::synthetic(u, phase_seed, phase_factor);
}

PreservationReport check_preservation(
    const SymmetryOracle& t,
    const std::vector<std::pair<ModuleElement, ModuleElement>>& samples,
    double tol) {
  PreservationReport report;
  if (!samples.empty()) report.worst_pair = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [f, g] = samples[i];
    const ModuleElement tf = t(f);
    const ModuleElement tg = t(g);
    const double dev =
        algebra::op_norm(algebra::abs(hmodule::inner(tf, tg)) -
                         algebra::abs(hmodule::inner(f, g)));
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_pair = static_cast<std::ptrdiff_t>(i);
    }
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

namespace {

// Hypothesis and structural checks on the canonical probe images. Returns
// the recovered column images g_k = T f_k after verifying that they form a
// modular orthonormal family supported on xi.
std::vector<ModuleElement> checked_images(
    const SymmetryOracle& t, const std::vector<ModuleElement>& basis_probe,
    const CVec& xi, double tol) {
  const Index n = t.slot_count();
  std::vector<ModuleElement> g;
  g.reserve(basis_probe.size());
  for (const auto& f : basis_probe) g.push_back(t(f));

  const Mat e = xi * xi.adjoint();
  double worst = 0.0;
  for (Index k = 0; k < n; ++k) {
    const AlgebraElement ek = hmodule::inner(g[k], g[k]);
    worst = std::max(worst, algebra::op_norm(ek - ek.adjoint()));
    worst = std::max(worst, algebra::op_norm(Mat(ek * ek) - ek));
    worst = std::max(worst, std::abs(ek.trace() - Complex(1.0, 0.0)));
    worst = std::max(worst,
                     algebra::op_norm(e * g[k].slots() - g[k].slots()));
    for (Index j = k + 1; j < n; ++j)
      worst = std::max(worst, algebra::op_norm(hmodule::inner(g[k], g[j])));
  }
  if (worst > tol)
    throw HypothesisFailed(
        "images of the canonical basis probes are not a modular orthonormal "
        "family supported on the anchor projection",
        worst);
  return g;
}

}  // namespace

WignerDecomposition decompose(const SymmetryOracle& t,
                              const DecomposeOptions& options) {
  const Index d = t.dim();
  const Index n = t.slot_count();
  const double tol = options.tol;
  if (d < 2)
    throw DimensionOne("decompose requires d > 1; the scalar case admits an "
                       "antiunitary branch outside this engine's scope");
  if (n < 1) throw ShapeMismatch("decompose requires n >= 1");

  const CVec xi = CVec::Unit(d, 0);
  std::vector<ModuleElement> basis_probe;
  basis_probe.reserve(n);
  for (Index k = 0; k < n; ++k)
    basis_probe.push_back(ModuleElement::slot(xi, n, k));
  std::vector<ModuleElement> sum_probe;
  sum_probe.reserve(n - 1);
  for (Index k = 1; k < n; ++k)
    sum_probe.push_back(basis_probe[0] + basis_probe[k]);

  // Preservation gate over all canonical probe pairs before any recovery.
  std::vector<ModuleElement> all_probes = basis_probe;
  all_probes.insert(all_probes.end(), sum_probe.begin(), sum_probe.end());
  std::vector<std::pair<ModuleElement, ModuleElement>> pairs;
  for (std::size_t i = 0; i < all_probes.size(); ++i)
    for (std::size_t j = i; j < all_probes.size(); ++j)
      pairs.emplace_back(all_probes[i], all_probes[j]);
  const PreservationReport gate = check_preservation(t, pairs, tol);
  if (!gate.pass)
    throw HypothesisFailed(
        "|[Tf,Tf']| = |[f,f']| fails on canonical probe pair " +
            std::to_string(gate.worst_pair),
        gate.max_deviation);

  const std::vector<ModuleElement> g = checked_images(t, basis_probe, xi, tol);

  // Gauge U f_1 := T f_1; remaining columns aligned through the sum probes.
  std::vector<ModuleElement> ucol(n);
  ucol[0] = g[0];
  for (Index k = 1; k < n; ++k) {
    const ModuleElement h = t(sum_probe[k - 1]);
    const Complex phi_k = hmodule::inner(h, g[0]).trace();
    const double phi_dev = std::abs(std::abs(phi_k) - 1.0);
    if (phi_dev > tol)
      throw HypothesisFailed("sum probe " + std::to_string(k) +
                                 " has a non-unimodular overlap with T f_1",
                             phi_dev);
    const Complex nu_k = hmodule::inner(h, g[k]).trace() / phi_k;
    const double nu_dev = std::abs(std::abs(nu_k) - 1.0);
    if (nu_dev > tol)
      throw HypothesisFailed("sum probe " + std::to_string(k) +
                                 " yields a non-unimodular column phase",
                             nu_dev);
    ucol[k] = nu_k * g[k];
  }

  Mat m(n, n);
  for (Index k = 0; k < n; ++k) m.row(k) = xi.adjoint() * ucol[k].slots();
  ModuleOperator u{std::move(m), d};
  const double iso_dev = algebra::op_norm(
      u.matrix * u.matrix.adjoint() - Mat::Identity(n, n));
  if (iso_dev > tol)
    throw HypothesisFailed("assembled operator is not an A-isometry", iso_dev);

  WignerDecomposition result;
  result.isometry = u;
  result.gauge_note = "phase(f_1) = 1; U f_1 := T f_1";

  std::vector<ModuleElement> phase_probes = std::move(all_probes);
  if (t.kind() == SymmetryOracle::Kind::table) {
    for (const auto& entry : t.entries()) phase_probes.push_back(entry.first);
  } else {
    rng::Engine eng = rng::make_engine(options.seed);
    for (int i = 0; i < options.phase_probes; ++i)
      phase_probes.push_back(rng::random_module_element(d, n, eng));
  }

  for (const auto& f : phase_probes) {
    if (f.is_zero(0.0)) continue;
    const ModuleElement tf = t(f);
    const ModuleElement uf = opalgebra::apply(u, f);
    const Complex phase =
        hmodule::inner(tf, uf).trace() / hmodule::inner(f, f).trace();
    const ModuleElement r = tf - phase * uf;
    const double residual = hmodule::norms(r).op_norm;
    result.phases.push_back({f, phase, residual});
    result.max_residual = std::max(result.max_residual, residual);
  }
  return result;
}

ModuleOperator build_projection_measure(const SymmetryOracle& t,
                                        const ModularBasis& basis,
                                        double tol) {
  std::vector<ModuleElement> images;
  images.reserve(basis.elements.size());
  for (const auto& f : basis.elements) images.push_back(t(f));

  double worst = 0.0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const AlgebraElement e = hmodule::inner(images[i], images[i]);
    worst = std::max(worst, algebra::op_norm(e - e.adjoint()));
    worst = std::max(worst, algebra::op_norm(Mat(e * e) - e));
    worst = std::max(worst, std::abs(e.trace() - Complex(1.0, 0.0)));
    for (std::size_t j = i + 1; j < images.size(); ++j)
      worst = std::max(worst,
                       algebra::op_norm(hmodule::inner(images[i], images[j])));
  }
  if (worst > tol)
    throw HypothesisFailed(
        "basis images are not modular orthonormal; the measure is undefined",
        worst);

  ModuleOperator p = ModuleOperator::zero(basis.d, basis.n);
  for (const auto& im : images) p.matrix += opalgebra::rank_one(im, im).matrix;
  return p;
}

bool measure_well_defined(const SymmetryOracle& t, const ModularBasis& a,
                          const ModularBasis& b, double tol) {
  const ModuleOperator pa = build_projection_measure(t, a, tol);
  const ModuleOperator pb = build_projection_measure(t, b, tol);
  if (pa.matrix.rows() != pb.matrix.rows())
    throw ShapeMismatch("measure_well_defined: bases live in different "
                        "modules");
  return algebra::op_norm(pa.matrix - pb.matrix) <= tol;
}

OperatorMap extend_to_linear(const SymmetryOracle& t, double tol) {
  const Index d = t.dim();
  const Index n = t.slot_count();
  if (d < 2)
    throw DimensionOne("the linear extension requires d > 1");

  const CVec xi = CVec::Unit(d, 0);
  // f_v has slots xi * v^H, so f_v (.) f_v is the rank-one projection v v*.
  auto measure = [&](const CVec& v) -> Mat {
    const ModuleElement fv(xi * v.adjoint());
    const ModuleElement image = t(fv);
    return opalgebra::rank_one(image, image).matrix;
  };

  std::vector<Mat> inputs;
  std::vector<Mat> outputs;
  auto equation = [&](const Mat& p, const Mat& q) {
    inputs.push_back(p);
    outputs.push_back(q);
  };

  // Tomography family: n^2 rank-one projections determining the map.
  const double r = std::numbers::sqrt2 / 2.0;
  for (Index j = 0; j < n; ++j) {
    const CVec ej = CVec::Unit(n, j);
    equation(ej * ej.adjoint(), measure(ej));
    for (Index k = j + 1; k < n; ++k) {
      const CVec ek = CVec::Unit(n, k);
      const CVec plus = r * (ej + ek);
      const CVec phased = r * (ej + Complex(0.0, 1.0) * ek);
      equation(plus * plus.adjoint(), measure(plus));
      equation(phased * phased.adjoint(), measure(phased));
    }
  }

  // Orthoadditivity cross-checks: rank-two projections measured through
  // rotated bases of their range, plus the identity through the canonical
  // basis. Inconsistent data leaves a residual here.
  for (Index j = 0; j < n; ++j) {
    const CVec ej = CVec::Unit(n, j);
    for (Index k = j + 1; k < n; ++k) {
      const CVec ek = CVec::Unit(n, k);
      const CVec sum = r * (ej + ek);
      const CVec diff = r * (ej - ek);
      equation(ej * ej.adjoint() + ek * ek.adjoint(),
               measure(sum) + measure(diff));
    }
  }
  Mat full = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j) full += measure(CVec::Unit(n, j));
  equation(Mat::Identity(n, n), full);

  const auto count = static_cast<Index>(inputs.size());
  Mat vt(count, n * n);
  Mat wt(count, n * n);
  for (Index i = 0; i < count; ++i) {
    vt.row(i) = inputs[i].reshaped().transpose();
    wt.row(i) = outputs[i].reshaped().transpose();
  }
  // X solves X vec(P_i) = vec(Q_i) for all i, i.e. V^T X^T = W^T.
  Mat xt = vt.completeOrthogonalDecomposition().solve(wt);
  OperatorMap phi{xt.transpose()};

  for (Index i = 0; i < count; ++i) {
    const double residual = algebra::op_norm(phi(inputs[i]) - outputs[i]);
    if (residual > tol * (1.0 + algebra::op_norm(outputs[i])))
      throw InconsistentMeasure(
          "projection measure admits no linear extension within tolerance; "
          "residual " +
          std::to_string(residual));
  }
  return phi;
}

ModuleOperator induced_module_operator(const Mat& w, Index d) {
  if (w.rows() != w.cols())
    throw ShapeMismatch("induced_module_operator: W must be square");
  return ModuleOperator{w.adjoint(), d};
}

double phase_aligned_frobenius_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("phase_aligned_frobenius_distance: shapes differ");
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap)
                                            : Complex(1.0, 0.0);
  return (a - c * b).norm();
}

}  // namespace modwig::wigner
