#include "modwig/opalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include "modwig/algebra.hpp"
#include "modwig/rng.hpp"

namespace modwig {

ModuleOperator ModuleOperator::identity(Index d, Index n) {
  return ModuleOperator{Mat::Identity(n, n), d};
}

ModuleOperator ModuleOperator::zero(Index d, Index n) {
  return ModuleOperator{Mat::Zero(n, n), d};
}

Index OperatorMap::n() const {
  return static_cast<Index>(
      std::llround(std::sqrt(static_cast<double>(action.rows()))));
}

AlgebraElement OperatorMap::operator()(const AlgebraElement& a) const {
  const Index m = n();
  if (a.rows() != m || a.cols() != m)
    throw ShapeMismatch("operator map expects a " + std::to_string(m) + " x " +
                        std::to_string(m) + " input");
  CVec v = a.reshaped();
  CVec w = action * v;
  return w.reshaped(m, m);
}

OperatorMap OperatorMap::identity(Index n) {
  return OperatorMap{Mat::Identity(n * n, n * n)};
}

OperatorMap OperatorMap::from_function(
    Index n, const std::function<Mat(const Mat&)>& fn) {
  Mat action(n * n, n * n);
  Mat unit = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      unit(i, j) = 1.0;
      Mat image = fn(unit);
      unit(i, j) = 0.0;
      if (image.rows() != n || image.cols() != n)
        throw ShapeMismatch("operator map image has the wrong shape");
      action.col(j * n + i) = image.reshaped();
    }
  return OperatorMap{std::move(action)};
}

}  // namespace modwig

namespace modwig::opalgebra {

ModuleElement apply(const ModuleOperator& s, const ModuleElement& f) {
  if (f.dim() != s.d || f.slot_count() != s.n())
    throw ShapeMismatch("apply: operator and element shapes differ");
  return ModuleElement(f.slots() * s.matrix);
}

ModuleOperator compose(const ModuleOperator& s, const ModuleOperator& t) {
  if (s.d != t.d || s.n() != t.n())
    throw ShapeMismatch("compose: operator shapes differ");
  return ModuleOperator{t.matrix * s.matrix, s.d};
}

ModuleOperator op_adjoint(const ModuleOperator& s) {
  return ModuleOperator{s.matrix.adjoint(), s.d};
}

ModuleOperator rank_one(const ModuleElement& f, const ModuleElement& g) {
  if (!f.same_shape(g)) throw ShapeMismatch("rank_one: shapes differ");
  return ModuleOperator{g.slots().adjoint() * f.slots(), f.dim()};
}

ModuleOperator projection_from_set(const ModularBasis& basis) {
  ModuleOperator p = ModuleOperator::zero(basis.d, basis.n);
  for (const auto& b : basis.elements) p.matrix += rank_one(b, b).matrix;
  return p;
}

bool is_A_isometry(const ModuleOperator& s, double tol) {
  const Index m = s.n();
  return algebra::op_norm(s.matrix * s.matrix.adjoint() -
                          Mat::Identity(m, m)) <= tol;
}

std::vector<Complex> rank_one_sum_factors(const std::vector<CVec>& a_list,
                                          const CVec& b, double tol) {
  const double b2 = b.squaredNorm();
  if (b.size() == 0 || b2 == 0.0)
    throw ZeroVector("rank_one_sum_factors: b is zero");
  Mat lhs = Mat::Zero(b.size(), b.size());
  for (const auto& a : a_list) {
    if (a.size() != b.size())
      throw ShapeMismatch("rank_one_sum_factors: vector lengths differ");
    lhs += a * a.adjoint();
  }
  if (algebra::op_norm(lhs - b * b.adjoint()) > tol * b2)
    throw HypothesisViolated(
        "rank_one_sum_factors: sum of rank-one terms is not b (x) b");
  std::vector<Complex> out;
  out.reserve(a_list.size());
  for (const auto& a : a_list) out.push_back(b.dot(a) / b2);
  return out;
}

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::homomorphism: return "homomorphism";
    case MapKind::antihomomorphism: return "antihomomorphism";
    case MapKind::jordan_only: return "jordan_only";
    case MapKind::none: return "none";
  }
  return "none";
}

MapKind classify_jordan(const OperatorMap& phi, int trials, double tol,
                        std::uint64_t seed) {
  const Index m = phi.n();
  rng::Engine eng = rng::make_engine(seed);
  const double scale = 1.0 + algebra::op_norm(phi.action);
  const double bound = tol * scale * scale;
  bool star = true, jordan = true, homo = true, anti = true;
  for (int t = 0; t < trials; ++t) {
    Mat a = rng::ginibre(m, m, eng);
    a /= std::max(algebra::op_norm(a), 1e-300);
    Mat b = rng::ginibre(m, m, eng);
    b /= std::max(algebra::op_norm(b), 1e-300);
    Mat h = rng::random_hermitian(m, eng);
    h /= std::max(algebra::op_norm(h), 1e-300);

    if (star &&
        algebra::op_norm(phi(Mat(a.adjoint())) - phi(a).adjoint()) > bound)
      star = false;
    if (jordan && algebra::op_norm(phi(Mat(h * h)) - phi(h) * phi(h)) > bound)
      jordan = false;
    if (homo || anti) {
      Mat ab = phi(Mat(a * b));
      if (homo && algebra::op_norm(ab - phi(a) * phi(b)) > bound) homo = false;
      if (anti && algebra::op_norm(ab - phi(b) * phi(a)) > bound) anti = false;
    }
  }
  if (star && homo) return MapKind::homomorphism;
  if (star && anti) return MapKind::antihomomorphism;
  if (star && jordan) return MapKind::jordan_only;
  return MapKind::none;
}

IsometryRecovery extract_conjugation_isometry(const OperatorMap& phi,
                                              double tol) {
  const Index m = phi.n();
  const MapKind kind = classify_jordan(phi, 64, tol);
  if (kind != MapKind::homomorphism && kind != MapKind::antihomomorphism)
    throw NotJordan(
        "extract_conjugation_isometry: map is neither multiplicative nor "
        "antimultiplicative at this tolerance");

  // In the anti case phi(A) = W A^T W*, so A -> phi(A^T) is an ordinary
  // conjugation and the homomorphism recipe applies to it.
  auto phi2 = [&](const Mat& a) -> Mat {
    return kind == MapKind::homomorphism ? phi(a) : phi(Mat(a.transpose()));
  };

  const double gate = std::max(tol, 1e-7);
  Index j0 = -1;
  Mat p;
  Mat unit = Mat::Zero(m, m);
  for (Index j = 0; j < m && j0 < 0; ++j) {
    unit(j, j) = 1.0;
    Mat cand = phi2(unit);
    unit(j, j) = 0.0;
    if (algebra::is_minimal_projection(cand, gate)) {
      j0 = j;
      p = std::move(cand);
    }
  }
  if (j0 < 0)
    throw NoAnchor("no diagonal matrix unit maps to a minimal projection");

  CVec z;
  double best = -1.0;
  for (Index j = 0; j < m; ++j) {
    const double c = p(j, j).real();
    if (c > best) {
      best = c;
      z = CVec::Unit(m, j);
    }
  }
  rng::Engine eng = rng::make_engine(0x616e63686f72ULL);
  for (int t = 0; t < 32; ++t) {
    CVec cand = rng::random_unit_vector(m, eng);
    const double c = std::real(cand.dot(p * cand));
    if (c > best) {
      best = c;
      z = cand;
    }
  }
  if (best < 1e-3)
    throw NoAnchor("no vector attains <phi(y (x) y) z, z> near 1");
  z /= std::sqrt(best);

  Mat w(m, m);
  for (Index i = 0; i < m; ++i) {
    unit(i, j0) = 1.0;
    w.col(i) = phi2(unit) * z;
    unit(i, j0) = 0.0;
  }

  for (Index i = 0; i < m * m; ++i) {
    const Complex v = w(i / m, i % m);  // row-major scan
    if (std::abs(v) > 1e-8) {
      w *= std::conj(v) / std::abs(v);
      break;
    }
  }

  double residual = 0.0;
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < m; ++i) {
      unit(i, j) = 1.0;
      Mat expect = kind == MapKind::homomorphism
                       ? Mat(w * unit * w.adjoint())
                       : Mat(w * unit.transpose() * w.adjoint());
      residual = std::max(residual, algebra::op_norm(phi(unit) - expect));
      unit(i, j) = 0.0;
    }
  if (residual > gate)
    throw NoAnchor(
        "recovered isometry does not reproduce the map on matrix units; the "
        "map does not preserve rank-one projections");
  return IsometryRecovery{kind, std::move(w), residual};
}

Index commutant_dimension(Index d, Index n) {
  if (d < 1 || n < 1)
    throw ShapeMismatch("commutant_dimension: d and n must be positive");
  if (d * n > 32) throw SizeLimit("commutant solve is limited to d * n <= 32");
  const Index nn = d * n;   // dimension of the carrier space
  const Index mm = nn * nn; // unknowns in the commuting operator

  using Sparse = Eigen::SparseMatrix<Complex>;
  Sparse id(nn, nn);
  id.setIdentity();
  Mat gram = Mat::Zero(mm, mm);
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Index p = 0; p < d; ++p)
    for (Index q = 0; q < d; ++q) {
      trips.clear();
      for (Index k = 0; k < n; ++k)
        trips.emplace_back(k * d + p, k * d + q, Complex(1.0, 0.0));
      Sparse l(nn, nn);  // L_a for the matrix unit a = E_pq
      l.setFromTriplets(trips.begin(), trips.end());
      // X L - L X vectorizes to (L^T (x) I - I (x) L) vec X
      Sparse lt = l.transpose();
      Sparse ad = Sparse(Eigen::kroneckerProduct(lt, id)) -
                  Sparse(Eigen::kroneckerProduct(id, l));
      Sparse term = ad.adjoint() * ad;
      for (Index k = 0; k < term.outerSize(); ++k)
        for (Sparse::InnerIterator it(term, k); it; ++it)
          gram(it.row(), it.col()) += it.value();
    }

  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  const double top = std::max(1.0, es.eigenvalues()(mm - 1));
  Index dim = 0;
  for (Index i = 0; i < mm; ++i)
    if (es.eigenvalues()(i) < 1e-6 * top) ++dim;
  return dim;
}

OperatorMap conjugation_map(const Mat& w) {
  if (w.rows() != w.cols()) throw ShapeMismatch("conjugation_map: not square");
  return OperatorMap::from_function(
      w.rows(), [&](const Mat& a) { return Mat(w * a * w.adjoint()); });
}

OperatorMap transpose_conjugation_map(const Mat& w) {
  if (w.rows() != w.cols())
    throw ShapeMismatch("transpose_conjugation_map: not square");
  return OperatorMap::from_function(w.rows(), [&](const Mat& a) {
    return Mat(w * a.transpose() * w.adjoint());
  });
}

OperatorMap operator_conjugation_map(const ModuleOperator& u) {
  const Mat m = u.matrix;
  return OperatorMap::from_function(
      u.n(), [&](const Mat& a) { return Mat(m.adjoint() * a * m); });
}

}  // namespace modwig::opalgebra
