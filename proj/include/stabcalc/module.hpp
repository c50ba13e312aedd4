#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabcalc/algebra.hpp"
#include "stabcalc/linalg.hpp"

namespace stabcalc {

class ModuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite-dimensional module over an Algebra, given by one action matrix
/// per algebra basis element: for left modules action(i) is m ↦ e_i m, for
/// right modules it is m ↦ m e_i. Copies share the immutable payload.
class Module {
 public:
  Module() = default;

  /// Checks linearity/associativity/unit of the action exactly.
  static Module create(AlgebraPtr algebra, Side side, std::vector<QMatrix> action);
  /// Trusted construction for modules produced by exact constructions.
  static Module unchecked(AlgebraPtr algebra, Side side, std::vector<QMatrix> action);
  static Module zero(AlgebraPtr algebra, Side side);

  bool valid() const { return static_cast<bool>(impl_); }
  const AlgebraPtr& algebra() const;
  Side side() const;
  std::size_t dim() const;
  const QMatrix& action(std::size_t i) const;
  const std::vector<QMatrix>& actions() const;
  /// Σ a_i · action(i) for an algebra element a given in coordinates.
  QMatrix act(const QMatrix& element) const;

  /// Content key: side, algebra id, and action matrices.
  const std::string& fingerprint() const;

  /// Module generators chosen greedily from the standard basis, the free
  /// cover Λ^g → M they define, its kernel, and a linear section.
  struct Presentation {
    QMatrix generators;  // dim × g
    QMatrix cover;       // dim × (g·d)
    QMatrix relations;   // (g·d) × κ, basis of Ker cover
    QMatrix section;     // (g·d) × dim, cover · section = I
  };
  const Presentation& presentation() const;

  bool same_ring_and_side(const Module& other) const {
    return algebra()->id() == other.algebra()->id() && side() == other.side();
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Λ-linear map; matrix is codomain.dim × domain.dim.
class ModuleMap {
 public:
  ModuleMap() = default;
  /// Verifies that the matrix intertwines the actions.
  static ModuleMap create(Module domain, Module codomain, QMatrix matrix);
  static ModuleMap unchecked(Module domain, Module codomain, QMatrix matrix);
  static ModuleMap identity(const Module& m);
  static ModuleMap zero(const Module& domain, const Module& codomain);

  const Module& domain() const { return dom_; }
  const Module& codomain() const { return cod_; }
  const QMatrix& matrix() const { return mat_; }

  bool is_injective() const;
  bool is_surjective() const;

 private:
  Module dom_, cod_;
  QMatrix mat_;
};

/// g ∘ f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale(const Rational& s, const ModuleMap& a);

bool intertwines(const Module& dom, const Module& cod, const QMatrix& matrix);

}  // namespace stabcalc
