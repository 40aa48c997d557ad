#pragma once

#include <vector>

#include "modwig/algebra.hpp"
#include "modwig/errors.hpp"
#include "modwig/types.hpp"

namespace modwig {

/// Element of the Hilbert A-module H, concretely the n-fold direct sum of
/// H_d: a d x n complex array whose column k is the vector sitting in slot k.
class ModuleElement {
 public:
  ModuleElement() = default;
  explicit ModuleElement(Mat slots) : slots_(std::move(slots)) {}

  static ModuleElement zero(Index d, Index n);

  /// Element with xi in slot k (0-based) and zeros elsewhere.
  static ModuleElement slot(const CVec& xi, Index n, Index k);

  Index dim() const { return slots_.rows(); }
  Index slot_count() const { return slots_.cols(); }
  const Mat& slots() const { return slots_; }

  bool same_shape(const ModuleElement& other) const {
    return dim() == other.dim() && slot_count() == other.slot_count();
  }
  bool is_zero(double tol = 0.0) const;

  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  ModuleElement& operator*=(Complex c);

  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) {
    a += b;
    return a;
  }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) {
    a -= b;
    return a;
  }
  friend ModuleElement operator*(Complex c, ModuleElement f) {
    f *= c;
    return f;
  }
  friend ModuleElement operator-(ModuleElement f) {
    f *= Complex(-1.0, 0.0);
    return f;
  }

 private:
  Mat slots_;  // d x n
};

/// A modular orthonormal family: each element f satisfies [f,f] = rank-one
/// projection, and [f_i, f_j] = 0 for i != j. Carries the module shape so an
/// empty basis still knows where it lives.
struct ModularBasis {
  std::vector<ModuleElement> elements;
  Index d = 0;
  Index n = 0;

  Index size() const { return static_cast<Index>(elements.size()); }
  static ModularBasis empty(Index d, Index n) { return ModularBasis{{}, d, n}; }
};

}  // namespace modwig

namespace modwig::hmodule {

/// Generalized inner product [f,g] = sum_k xi_k zeta_k* = F G*. Values in A.
AlgebraElement inner(const ModuleElement& f, const ModuleElement& g);

/// Left module action: a applied to every slot.
ModuleElement module_action(const AlgebraElement& a, const ModuleElement& f);

struct Norms {
  double op_norm = 0.0;     // ||[f,f]||^(1/2)
  double trace_norm = 0.0;  // (tr [f,f])^(1/2)
};
Norms norms(const ModuleElement& f);

/// One term of the modular spectral decomposition f = sum_i lambda_i f_i.
struct SplitComponent {
  double lambda = 0.0;
  AlgebraElement projection;  // e_i, rank-one; [f_i, f_i] = e_i
  ModuleElement unit;         // f_i = (1/lambda_i) e_i f
};

/// Splits f along the spectral projections of [f,f]. The units form a
/// modular orthonormal family and reconstruct f. Empty iff f = 0 within tol.
std::vector<SplitComponent> spectral_split(const ModuleElement& f,
                                           double tol = kDefaultTol);

/// Modular orthonormal basis of the closed submodule generated by the
/// inputs. Generators are processed in order: the projection onto the basis
/// built so far is subtracted and the residual is split spectrally.
/// Residuals with trace norm below tol * (1 + ||g||) are dropped. An empty
/// generator list yields an empty basis of shape (0, 0).
ModularBasis modular_gram_schmidt(const std::vector<ModuleElement>& generators,
                                  double tol = kDefaultTol);

/// Expansion coefficients c_alpha = [g, f_alpha]. When g lies in the
/// submodule of the basis, sum module_action(c_alpha, f_alpha) reconstructs g.
std::vector<AlgebraElement> expand(const ModuleElement& g,
                                   const ModularBasis& basis);

/// Membership test: k belongs to the submodule iff
/// [k,k] = sum_alpha [k,f_alpha][f_alpha,k] within tol.
bool in_submodule(const ModuleElement& k, const ModularBasis& basis,
                  double tol = kDefaultTol);

/// Checks the ModularBasis invariants (used by callers that received a basis
/// from outside).
bool is_modular_orthonormal(const std::vector<ModuleElement>& elements,
                            double tol = kDefaultTol);

}  // namespace modwig::hmodule
