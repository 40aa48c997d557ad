#include "modwig/hmodule.hpp"

#include <cmath>
#include <utility>

#include "modwig/algebra.hpp"

namespace modwig {

ModuleElement ModuleElement::zero(Index d, Index n) {
  return ModuleElement(Mat::Zero(d, n));
}

ModuleElement ModuleElement::slot(const CVec& xi, Index n, Index k) {
  if (k < 0 || k >= n) throw ShapeMismatch("slot index out of range");
  Mat s = Mat::Zero(xi.size(), n);
  s.col(k) = xi;
  return ModuleElement(std::move(s));
}

bool ModuleElement::is_zero(double tol) const {
  return slots_.size() == 0 || slots_.cwiseAbs().maxCoeff() <= tol;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  if (!same_shape(other)) throw ShapeMismatch("module element shapes differ");
  slots_ += other.slots_;
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  if (!same_shape(other)) throw ShapeMismatch("module element shapes differ");
  slots_ -= other.slots_;
  return *this;
}

ModuleElement& ModuleElement::operator*=(Complex c) {
  slots_ *= c;
  return *this;
}

}  // namespace modwig

namespace modwig::hmodule {

AlgebraElement inner(const ModuleElement& f, const ModuleElement& g) {
  if (!f.same_shape(g)) throw ShapeMismatch("inner: shapes differ");
  return f.slots() * g.slots().adjoint();
}

ModuleElement module_action(const AlgebraElement& a, const ModuleElement& f) {
  if (a.rows() != f.dim() || a.cols() != f.dim())
    throw ShapeMismatch("module_action: algebra size does not match d");
  return ModuleElement(a * f.slots());
}

Norms norms(const ModuleElement& f) {
  AlgebraElement g = inner(f, f);
  return Norms{std::sqrt(algebra::op_norm(g)),
               std::sqrt(std::max(0.0, g.trace().real()))};
}

std::vector<SplitComponent> spectral_split(const ModuleElement& f,
                                           double tol) {
  std::vector<SplitComponent> out;
  if (f.slots().size() == 0 || f.slots().norm() <= tol) return out;
  for (const auto& c : algebra::spectral_psd(inner(f, f), tol)) {
    const double lambda = std::sqrt(c.eigenvalue);
    ModuleElement unit = module_action(c.projection, f);
    unit *= Complex(1.0 / lambda, 0.0);
    out.push_back({lambda, c.projection, std::move(unit)});
  }
  return out;
}

ModularBasis modular_gram_schmidt(const std::vector<ModuleElement>& generators,
                                  double tol) {
  if (generators.empty()) return ModularBasis::empty(0, 0);
  const Index d = generators.front().dim();
  const Index n = generators.front().slot_count();
  ModularBasis basis{{}, d, n};
  for (const auto& g : generators) {
    if (g.dim() != d || g.slot_count() != n)
      throw ShapeMismatch("modular_gram_schmidt: mixed shapes");
    ModuleElement r = g;
    for (const auto& b : basis.elements) r -= module_action(inner(g, b), b);
    if (norms(r).trace_norm <= tol * (1.0 + norms(g).trace_norm)) continue;
    for (auto& c : spectral_split(r, tol))
      basis.elements.push_back(std::move(c.unit));
  }
  return basis;
}

std::vector<AlgebraElement> expand(const ModuleElement& g,
                                   const ModularBasis& basis) {
  std::vector<AlgebraElement> out;
  out.reserve(basis.elements.size());
  for (const auto& b : basis.elements) out.push_back(inner(g, b));
  return out;
}

bool in_submodule(const ModuleElement& k, const ModularBasis& basis,
                  double tol) {
  AlgebraElement lhs = inner(k, k);
  AlgebraElement rhs = Mat::Zero(k.dim(), k.dim());
  for (const auto& b : basis.elements) rhs += inner(k, b) * inner(b, k);
  return algebra::op_norm(lhs - rhs) <= tol * (1.0 + algebra::op_norm(lhs));
}

bool is_modular_orthonormal(const std::vector<ModuleElement>& elements,
                            double tol) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!algebra::is_minimal_projection(inner(elements[i], elements[i]), tol))
      return false;
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (algebra::op_norm(inner(elements[i], elements[j])) > tol)
        return false;
  }
  return true;
}

}  // namespace modwig::hmodule
