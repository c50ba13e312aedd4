#include "stabcalc/snf.hpp"

#include <optional>
#include <utility>

namespace stabcalc {

namespace {

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row dst += k * row src
void add_row(ZMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sgn(m(src, j)) != 0) m(dst, j) += k * m(src, j);
}
void add_col(ZMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(m(i, src)) != 0) m(i, dst) += k * m(i, src);
}

std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const ZMatrix& s, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (sgn(s(i, j)) == 0) continue;
      Integer a = abs(s(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    }
  return best;
}

}  // namespace

SnfResult snf(const ZMatrix& a, bool include_units) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ZMatrix s = a;
  ZMatrix u = ZMatrix::identity(m);
  ZMatrix v = ZMatrix::identity(n);
  std::size_t t = 0;
  while (t < m && t < n) {
    auto pick = smallest_entry(s, t);
    if (!pick) break;
    swap_rows(s, t, pick->first);
    swap_rows(u, t, pick->first);
    swap_cols(s, t, pick->second);
    swap_cols(v, t, pick->second);

    bool residue = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (sgn(s(i, t)) == 0) continue;
      Integer q = s(i, t) / s(t, t);
      add_row(s, i, t, -q);
      add_row(u, i, t, -q);
      if (sgn(s(i, t)) != 0) residue = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (sgn(s(t, j)) == 0) continue;
      Integer q = s(t, j) / s(t, t);
      add_col(s, j, t, -q);
      add_col(v, j, t, -q);
      if (sgn(s(t, j)) != 0) residue = true;
    }
    if (residue) continue;  // a smaller entry now exists; re-pick

    bool fixed = false;
    for (std::size_t i = t + 1; i < m && !fixed; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (sgn(s(i, j)) != 0 && !mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
          add_row(s, t, i, 1);
          add_row(u, t, i, 1);
          fixed = true;
          break;
        }
    if (fixed) continue;

    if (sgn(s(t, t)) < 0) {
      for (std::size_t j = 0; j < n; ++j) s(t, j) = -s(t, j);
      for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
    }
    ++t;
  }

  SnfResult out{std::move(s), std::move(u), std::move(v), {}};
  for (std::size_t i = 0; i < m && i < n; ++i) {
    if (sgn(out.S(i, i)) == 0) break;
    if (include_units || out.S(i, i) != 1) out.invariant_factors.push_back(out.S(i, i));
  }
  return out;
}

Integer determinant(const ZMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  ZMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace stabcalc
