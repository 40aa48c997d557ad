#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "modwig/opalgebra.hpp"

namespace modwig {

/// A queryable symmetry transformation f -> Tf. Query results are
/// deterministic: elements are canonicalized to 12 significant digits before
/// any phase hashing or table lookup, so bit-identical serializations yield
/// identical images. Oracles are immutable after construction.
class SymmetryOracle {
 public:
  enum class Kind { synthetic, table, function };

  /// Tf = phi(f) * apply(U, f) with phi(f) = phase_factor * h(f), where h is
  /// a deterministic unit scalar hashed from (canonical key of f, seed), and
  /// h = 1 identically when seed = 0. phi(0) = 1 by convention.
  static SymmetryOracle synthetic(const ModuleOperator& u, std::uint64_t seed,
                                  Complex phase_factor = Complex(1.0, 0.0));

  /// Lookup by canonical key; queries off the table throw OracleMiss.
  static SymmetryOracle table(
      Index d, Index n,
      std::vector<std::pair<ModuleElement, ModuleElement>> entries);

  static SymmetryOracle function(
      Index d, Index n, std::function<ModuleElement(const ModuleElement&)> fn);

  /// Entrywise complex conjugation, the anti-branch witness transformation.
  static SymmetryOracle conjugation(Index d, Index n);

  Kind kind() const { return kind_; }
  Index dim() const { return d_; }
  Index slot_count() const { return n_; }

  ModuleElement operator()(const ModuleElement& f) const;

  /// Table entries in insertion order; empty for other kinds.
  const std::vector<std::pair<ModuleElement, ModuleElement>>& entries() const {
    return entries_;
  }

  /// Synthetic generator data; meaningful only when kind() == synthetic.
  const ModuleOperator& base_isometry() const { return base_; }
  std::uint64_t phase_seed() const { return seed_; }
  Complex phase_factor() const { return factor_; }

 private:
  SymmetryOracle(Kind kind, Index d, Index n);

  Kind kind_;
  Index d_;
  Index n_;
  ModuleOperator base_;
  std::uint64_t seed_ = 0;
  Complex factor_{1.0, 0.0};
  std::vector<std::pair<ModuleElement, ModuleElement>> entries_;
  std::function<ModuleElement(const ModuleElement&)> fn_;
};

struct PreservationReport {
  double max_deviation = 0.0;
  std::ptrdiff_t worst_pair = -1;  // index into the sample list, -1 if empty
  bool pass = true;
};

struct PhaseSample {
  ModuleElement element;
  Complex phase{1.0, 0.0};
  double residual = 0.0;  // ||T f - phase * U f||
};

struct WignerDecomposition {
  ModuleOperator isometry;
  std::vector<PhaseSample> phases;
  double max_residual = 0.0;
  std::string gauge_note;
};

struct DecomposeOptions {
  double tol = kDefaultTol;
  int phase_probes = 100;       // random probes beyond the canonical set
  std::uint64_t seed = 2026;    // seeds the random probes
};

}  // namespace modwig

namespace modwig::wigner {

/// Builds the synthetic oracle Tf = phi(f) * apply(U, f).
/// Throws NotIsometry unless is_A_isometry(u).
SymmetryOracle synthesize(const ModuleOperator& u, std::uint64_t phase_seed,
                          Complex phase_factor = Complex(1.0, 0.0));

/// Max over pairs of || abs(inner(Tf, Tf')) - abs(inner(f, f')) || in the
/// operator norm; pass iff <= tol.
PreservationReport check_preservation(
    const SymmetryOracle& t,
    const std::vector<std::pair<ModuleElement, ModuleElement>>& samples,
    double tol = kDefaultTol);

/// Constructive recovery of (U, phi) with Tf = phi(f) U f.
///
/// Probes the canonical set f_k = xi^k (xi the first standard unit vector)
/// and f_1 + f_k, checks the preservation hypothesis and the structural
/// identities on those probes, fixes the gauge U f_1 := T f_1, aligns the
/// remaining columns through the sum probes, then samples phases on
/// options.phase_probes random elements (table oracles sample their whole
/// domain instead).
///
/// Throws DimensionOne if d = 1, HypothesisFailed (with the worst witness
/// deviation) if any checked identity exceeds tol, OracleMiss if a table
/// oracle lacks a canonical probe.
WignerDecomposition decompose(const SymmetryOracle& t,
                              const DecomposeOptions& options = {});

/// mu(sum_a f_a (.) f_a) = sum_a Tf_a (.) Tf_a, the orthoadditive
/// projection-valued measure. Throws HypothesisFailed if the images are not
/// modular orthonormal.
ModuleOperator build_projection_measure(const SymmetryOracle& t,
                                        const ModularBasis& basis,
                                        double tol = kDefaultTol);

/// True iff the measure agrees on two bases of the same submodule.
bool measure_well_defined(const SymmetryOracle& t, const ModularBasis& a,
                          const ModularBasis& b, double tol = kDefaultTol);

/// Extends the projection measure to a linear map phi on M_n with
/// phi(f (.) f) = Tf (.) Tf, via a least-squares solve over a spanning
/// family of rank-one and submodule projections with a consistency check.
///
/// Throws InconsistentMeasure if the solve residual exceeds tol (the
/// preservation hypothesis fails), DimensionOne if d = 1.
OperatorMap extend_to_linear(const SymmetryOracle& t, double tol = kDefaultTol);

/// Module operator whose conjugation action S -> U S U* realizes
/// A -> W A W* on the matrix picture; its matrix is W*.
ModuleOperator induced_module_operator(const Mat& w, Index d);

/// min over unit scalars c of ||a - c b||_F.
double phase_aligned_frobenius_distance(const Mat& a, const Mat& b);

}  // namespace modwig::wigner
