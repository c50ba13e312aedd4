#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabcalc/matrix.hpp"

namespace stabcalc {

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

/// Raised when structure constants fail associativity or the unit law.
/// witness holds the offending basis indices (a triple, or a single index
/// for unit failures).
class AlgebraError : public std::invalid_argument {
 public:
  AlgebraError(const std::string& msg, std::vector<std::size_t> witness)
      : std::invalid_argument(msg), witness_(std::move(witness)) {}
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite-dimensional associative unital Q-algebra given by structure
/// constants: e_i e_j = sum_k c(i, j, k) e_k.
class Algebra {
 public:
  /// constants are indexed i*d*d + j*d + k. Throws AlgebraError.
  static AlgebraPtr create(std::string name, std::size_t dim, std::vector<Rational> constants,
                           std::vector<Rational> unit);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  std::size_t id() const { return id_; }
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  /// Constants of the algebra acting on modules of the given side: Λ for
  /// left modules, Λ^op for right modules.
  const Rational& acting_constant(Side s, std::size_t i, std::size_t j, std::size_t k) const {
    return s == Side::Left ? constant(i, j, k) : constant(j, i, k);
  }
  const QMatrix& unit() const { return unit_; }

  /// Product of two elements in coordinates (d × 1 columns).
  QMatrix multiply(const QMatrix& a, const QMatrix& b) const;

  /// Action of e_i on the regular module of the given side
  /// (left: x ↦ e_i x, right: x ↦ x e_i).
  const QMatrix& regular_action(Side s, std::size_t i) const {
    return s == Side::Left ? left_regular_[i] : right_regular_[i];
  }
  /// Σ a_i · regular_action(s, i).
  QMatrix regular_action_of(Side s, const QMatrix& element) const;

  /// Basis indices generating Λ as a unital algebra (greedy, index order).
  const std::vector<std::size_t>& generators() const { return generators_; }

  /// Jacobson radical as a canonical column basis (d × r).
  const QMatrix& radical() const { return radical_; }

  /// Complete set of orthogonal primitive idempotents summing to 1.
  const std::vector<QMatrix>& primitive_idempotents() const { return idempotents_; }

 private:
  Algebra() = default;
  void compute_generators();
  void compute_radical();
  void compute_idempotents();

  std::string name_;
  std::size_t dim_ = 0;
  std::size_t id_ = 0;
  std::vector<Rational> c_;
  QMatrix unit_;
  std::vector<QMatrix> left_regular_;
  std::vector<QMatrix> right_regular_;
  std::vector<std::size_t> generators_;
  QMatrix radical_;
  std::vector<QMatrix> idempotents_;
};

/// Validates raw structure constants given as a cube c[i][j][k].
AlgebraPtr validate_algebra(std::string name,
                            const std::vector<std::vector<std::vector<Rational>>>& cube,
                            const std::vector<Rational>& unit);

// Presets.
AlgebraPtr truncated_polynomial(std::size_t n);  // Q[x]/(x^n), basis 1, x, ..., x^{n-1}
AlgebraPtr upper_triangular_2();                 // basis e11, e12, e22
AlgebraPtr ground_field();                       // Q
AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace stabcalc
