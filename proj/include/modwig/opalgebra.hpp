#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "modwig/hmodule.hpp"

namespace modwig {

/// A-linear operator on H in its matrix representation: B(H) is isomorphic
/// to M_n(C), and the operator acts on the d x n slot array by right
/// multiplication. The representation map is order-reversing; compose() hides
/// this.
struct ModuleOperator {
  Mat matrix;    // n x n
  Index d = 0;   // slot dimension of the module it acts on

  Index n() const { return matrix.rows(); }

  static ModuleOperator identity(Index d, Index n);
  static ModuleOperator zero(Index d, Index n);
};

/// A linear map M_n(C) -> M_n(C) stored as its n^2 x n^2 action on
/// column-major vectorizations. Linearity is structural; Jordan and star
/// properties are tested, never assumed.
struct OperatorMap {
  Mat action;  // n^2 x n^2

  Index n() const;
  AlgebraElement operator()(const AlgebraElement& a) const;

  static OperatorMap identity(Index n);

  /// Builds the action matrix by applying fn to every matrix unit.
  static OperatorMap from_function(
      Index n, const std::function<Mat(const Mat&)>& fn);
};

}  // namespace modwig

namespace modwig::opalgebra {

/// Applies the operator: slots(f) * S.matrix.
ModuleElement apply(const ModuleOperator& s, const ModuleElement& f);

/// Composition S after T: apply(compose(S,T), f) = apply(S, apply(T, f)).
ModuleOperator compose(const ModuleOperator& s, const ModuleOperator& t);

/// Adjoint: [Sf, g] = [f, S*g].
ModuleOperator op_adjoint(const ModuleOperator& s);

/// The module analogue of a rank-one operator, (f (.) g) h = [h,g] f.
/// Its matrix is G* F.
ModuleOperator rank_one(const ModuleElement& f, const ModuleElement& g);

/// Orthogonal projection onto the submodule of a modular orthonormal basis:
/// P = sum_alpha f_alpha (.) f_alpha.
ModuleOperator projection_from_set(const ModularBasis& basis);

/// True iff S preserves the generalized inner product: M M* = I_n within tol.
bool is_A_isometry(const ModuleOperator& s, double tol = kDefaultTol);

/// Given sum_k a_k (x) a_k = b (x) b (checked within tol * ||b||^2) with
/// b != 0, returns the scalars lambda_k with a_k = lambda_k b. The moduli
/// satisfy sum |lambda_k|^2 = 1.
///
/// Throws HypothesisViolated if the sum identity fails, ZeroVector if b = 0.
std::vector<Complex> rank_one_sum_factors(const std::vector<CVec>& a_list,
                                          const CVec& b,
                                          double tol = kDefaultTol);

enum class MapKind { homomorphism, antihomomorphism, jordan_only, none };

const char* to_string(MapKind kind);

/// Classifies a linear map on M_n(C): star preservation and squares on
/// random Hermitian inputs, then phi(AB) = phi(A)phi(B) versus
/// phi(AB) = phi(B)phi(A) on random pairs. Returns the strongest class that
/// survives all trials. Deterministic for a fixed seed.
MapKind classify_jordan(const OperatorMap& phi, int trials = 64,
                        double tol = kDefaultTol,
                        std::uint64_t seed = 0x6d61706b696e64ULL);

struct IsometryRecovery {
  MapKind kind = MapKind::none;  // homomorphism or antihomomorphism
  Mat isometry;                  // W, n x n, gauge: first nonzero entry > 0
  double residual = 0.0;         // worst matrix-unit reproduction error
};

/// Recovers the conjugation form of a star-(anti)homomorphism that preserves
/// rank-one projections: phi(A) = W A W* in the homomorphism case,
/// phi(A) = W A^T W* in the antihomomorphism case. The anchor pair (y, z)
/// with <phi(y (x) y) z, z> = 1 is searched over matrix-unit vectors first,
/// then 32 seeded random vectors; W x = phi(x (x) y) z.
///
/// Throws NotJordan if neither multiplicativity pattern fits, NoAnchor if no
/// anchor pair exists (the map does not preserve rank-one projections).
IsometryRecovery extract_conjugation_isometry(const OperatorMap& phi,
                                              double tol = kDefaultTol);

/// Dimension of the commutant of { L_a : f -> a f, a in M_d } inside the
/// operators on C^(d n), computed by a dense homogeneous solve over the
/// matrix-unit basis of M_d. Throws SizeLimit if d * n > 32.
Index commutant_dimension(Index d, Index n);

/// The map A -> W A W* on M_n(C).
OperatorMap conjugation_map(const Mat& w);

/// The map A -> W A^T W* on M_n(C).
OperatorMap transpose_conjugation_map(const Mat& w);

/// The map S -> U S U* on B(H) expressed in the matrix picture, where U is
/// the module operator: A -> M* A M with M = u.matrix.
OperatorMap operator_conjugation_map(const ModuleOperator& u);

}  // namespace modwig::opalgebra
