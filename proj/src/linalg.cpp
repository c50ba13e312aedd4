#include "stabcalc/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace stabcalc {

QMatrix to_rational(const ZMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

namespace {

// In-place Gauss-Jordan; pivots are searched only in the first pivot_cols columns.
std::vector<std::size_t> reduce(QMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  Rational factor;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    if (m(r, c) != 1) {
      Rational inv = 1 / m(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(m(r, j)) != 0) m(r, j) *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = c + 1; j < cols; ++j)
      if (sgn(m(r, j)) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      factor = m(i, c);
      m(i, c) = 0;
      for (std::size_t j : nz) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

QMatrix kernel_from_rref(const QMatrix& red, const std::vector<std::size_t>& pivots, std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  QMatrix k(n, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k(pivots[r], f) = -red(r, free_cols[f]);
  }
  return k;
}

}  // namespace

RrefSolve rref_solve(const QMatrix& a, const std::optional<QMatrix>& b) {
  if (b && b->rows() != a.rows())
    throw DimensionError("rref_solve: right-hand side has " + std::to_string(b->rows()) +
                         " rows, matrix has " + std::to_string(a.rows()));
  const std::size_t n = a.cols();
  QMatrix aug = b ? QMatrix::hstack({a, *b}) : a;
  RrefSolve out;
  out.pivots = reduce(aug, n);
  out.rank = out.pivots.size();
  out.rref = b ? aug.block(0, 0, aug.rows(), n) : aug;
  out.kernel_basis = kernel_from_rref(out.rref, out.pivots, n);
  if (b) {
    const std::size_t k = b->cols();
    bool consistent = true;
    for (std::size_t r = out.rank; r < aug.rows() && consistent; ++r)
      for (std::size_t j = 0; j < k; ++j)
        if (sgn(aug(r, n + j)) != 0) {
          consistent = false;
          break;
        }
    if (consistent) {
      QMatrix x(n, k);
      for (std::size_t r = 0; r < out.rank; ++r)
        for (std::size_t j = 0; j < k; ++j) x(out.pivots[r], j) = aug(r, n + j);
      out.solution = std::move(x);
    }
  }
  return out;
}

QMatrix rref(const QMatrix& a) {
  QMatrix m = a;
  reduce(m, m.cols());
  return m;
}

std::size_t rank(const QMatrix& a) {
  if (a.empty()) return 0;
  // Reduce the shorter orientation.
  QMatrix m = a.rows() <= a.cols() ? a : a.transpose();
  return reduce(m, m.cols()).size();
}

QMatrix kernel(const QMatrix& a) {
  QMatrix m = a;
  auto piv = reduce(m, m.cols());
  return kernel_from_rref(m, piv, a.cols());
}

QMatrix image_basis(const QMatrix& a) {
  QMatrix t = a.transpose();
  auto piv = reduce(t, t.cols());
  return t.block(0, 0, piv.size(), t.cols()).transpose();
}

std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  return rref_solve(a, b).solution;
}

QMatrix inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  QMatrix aug = QMatrix::hstack({a, QMatrix::identity(n)});
  auto piv = reduce(aug, n);
  if (piv.size() != n) throw std::domain_error("inverse of singular matrix");
  return aug.block(0, n, n, n);
}

bool in_span(const QMatrix& basis, const QMatrix& v) {
  if (v.cols() == 0) return true;
  if (basis.cols() == 0) return v.is_zero();
  return solve(basis, v).has_value();
}

bool same_span(const QMatrix& u, const QMatrix& v) {
  if (u.rows() != v.rows()) return false;
  return image_basis(u) == image_basis(v);
}

QMatrix intersect_spans(const QMatrix& u, const QMatrix& v) {
  // x ∈ U ∩ V iff x = U a = V b, i.e. [U | -V](a; b) = 0.
  if (u.cols() == 0 || v.cols() == 0) return QMatrix(u.rows(), 0);
  QMatrix k = kernel(QMatrix::hstack({u, -v}));
  return image_basis(u * k.block(0, 0, u.cols(), k.cols()));
}

Coordinates::Coordinates(QMatrix basis) : basis_(std::move(basis)) {
  const std::size_t k = basis_.cols();
  if (k == 0) return;
  QMatrix t = basis_.transpose();
  rows_ = reduce(t, t.cols());
  if (rows_.size() != k) throw std::domain_error("Coordinates: basis is not linearly independent");
  inv_ = inverse(basis_.select_rows(rows_));
}

QMatrix Coordinates::operator()(const QMatrix& v) const {
  if (v.rows() != basis_.rows()) throw DimensionError("Coordinates: ambient mismatch");
  if (dim() == 0) {
    if (!v.is_zero()) throw std::domain_error("Coordinates: vector outside zero subspace");
    return QMatrix(0, v.cols());
  }
  QMatrix c = inv_ * v.select_rows(rows_);
  if (!(basis_ * c == v)) throw std::domain_error("Coordinates: vector outside span");
  return c;
}

bool Coordinates::contains(const QMatrix& v) const {
  if (dim() == 0) return v.is_zero();
  QMatrix c = inv_ * v.select_rows(rows_);
  return basis_ * c == v;
}

Subquotient::Subquotient(QMatrix sub, const QMatrix& rel) : sub_(std::move(sub)) {
  const std::size_t s = sub_.dim();
  rel_in_sub_ = rel.cols() ? sub_(rel) : QMatrix(s, 0);
  const std::size_t t = rel_in_sub_.cols();
  // Reduce [rel | I_s]: pivots inside the identity block mark the complement.
  QMatrix aug = QMatrix::hstack({rel_in_sub_, QMatrix::identity(s)}, s);
  QMatrix red = aug;
  auto piv = reduce(red, red.cols());
  std::vector<std::size_t> rel_piv, comp;
  for (auto p : piv) (p < t ? rel_piv : comp).push_back(p);
  for (auto& c : comp) c -= t;
  QMatrix change = QMatrix::hstack({rel_in_sub_.select_cols(rel_piv),
                                    QMatrix::identity(s).select_cols(comp)},
                                   s);
  QMatrix inv = inverse(change);
  proj_ = inv.block(rel_piv.size(), 0, comp.size(), s);
  reps_ = sub_.basis().cols() ? sub_.basis() * QMatrix::identity(s).select_cols(comp)
                              : QMatrix(sub_.basis().rows(), 0);
}

Subquotient Subquotient::quotient(std::size_t m, const QMatrix& rel) {
  return Subquotient(QMatrix::identity(m), rel.cols() ? rel : QMatrix(m, 0));
}

Subquotient Subquotient::subspace(QMatrix sub) {
  const std::size_t m = sub.rows();
  return Subquotient(std::move(sub), QMatrix(m, 0));
}

QMatrix Subquotient::coords(const QMatrix& v) const {
  QMatrix c = sub_(v);
  if (proj_.rows() == 0) return QMatrix(0, v.cols());
  return proj_ * c;
}

bool Subquotient::is_relation(const QMatrix& v) const {
  if (!sub_.contains(v)) return false;
  QMatrix c = sub_(v);
  return in_span(rel_in_sub_, c);
}

QMatrix induced_map(const Subquotient& from, const Subquotient& to, const QMatrix& ambient_map) {
  if (from.dim() == 0) return QMatrix(to.dim(), 0);
  return to.coords(ambient_map * from.reps());
}

}  // namespace stabcalc
