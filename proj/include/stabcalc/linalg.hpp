#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabcalc/matrix.hpp"

namespace stabcalc {

/// Result of reducing A (and optionally solving A x = b).
struct RrefSolve {
  QMatrix rref;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  QMatrix kernel_basis;             // cols × (cols - rank), columns span Ker A
  std::optional<QMatrix> solution;  // particular solution, free variables set to zero
};

/// Pivoting always takes the first eligible row in index order, so the output
/// depends only on the input.
RrefSolve rref_solve(const QMatrix& a, const std::optional<QMatrix>& b = std::nullopt);

QMatrix rref(const QMatrix& a);
std::size_t rank(const QMatrix& a);

/// Basis of Ker A. It depends only on the row space of A.
QMatrix kernel(const QMatrix& a);

/// Canonical basis of the column space: the reduced column echelon form, so
/// two spanning sets of the same subspace give the identical matrix.
QMatrix image_basis(const QMatrix& a);

/// Particular solution of A X = B (multi-column B), or nullopt.
std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b);

QMatrix inverse(const QMatrix& a);

bool in_span(const QMatrix& basis, const QMatrix& v);
bool same_span(const QMatrix& u, const QMatrix& v);
QMatrix intersect_spans(const QMatrix& u, const QMatrix& v);

/// Coordinates with respect to a fixed full-column-rank basis.
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(QMatrix basis);

  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }

  /// Throws std::domain_error when some column of v is outside the span.
  QMatrix operator()(const QMatrix& v) const;
  bool contains(const QMatrix& v) const;

 private:
  QMatrix basis_;
  std::vector<std::size_t> rows_;
  QMatrix inv_;
};

/// A subquotient S / T of Q^m, T ⊆ S, with deterministic quotient coordinates:
/// the complement of T inside S is spanned by the earliest S-coordinate
/// vectors not already in T.
class Subquotient {
 public:
  Subquotient() = default;
  /// sub: m × s full column rank; rel: m × t with columns inside span(sub).
  Subquotient(QMatrix sub, const QMatrix& rel);
  /// Q^m / span(rel).
  static Subquotient quotient(std::size_t m, const QMatrix& rel);
  /// span(sub) with nothing divided out.
  static Subquotient subspace(QMatrix sub);

  std::size_t dim() const { return reps_.cols(); }
  std::size_t ambient() const { return sub_.ambient(); }
  /// m × dim matrix of chosen representatives of the quotient basis.
  const QMatrix& reps() const { return reps_; }
  const Coordinates& sub() const { return sub_; }
  /// Quotient coordinates of ambient vectors lying in S.
  QMatrix coords(const QMatrix& v) const;
  /// Whether ambient vectors lie in T.
  bool is_relation(const QMatrix& v) const;

 private:
  Coordinates sub_;
  QMatrix proj_;  // dim × s
  QMatrix reps_;
  QMatrix rel_in_sub_;
};

/// Matrix of the linear map induced by an ambient map between subquotients.
QMatrix induced_map(const Subquotient& from, const Subquotient& to, const QMatrix& ambient_map);

/// A finite-dimensional space value together with a witness basis inside
/// some named ambient construction.
struct QSpace {
  std::size_t dimension = 0;
  QMatrix basis_witness;
  std::string ambient_tag;
};

}  // namespace stabcalc
