#include <random>

#include "doctest.h"
#include "stabcalc/linalg.hpp"
#include "stabcalc/polynomial.hpp"
#include "stabcalc/snf.hpp"

using namespace stabcalc;

namespace {

// Leibniz expansion; only for tiny matrices.
Integer naive_det(const ZMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Integer total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Integer p = sign;
    for (std::size_t i = 0; i < n; ++i) p *= a(i, perm[i]);
    total += p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// k-th determinantal divisor: gcd of all k×k minors.
Integer determinantal_divisor(const ZMatrix& a, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(a.rows(), k, 0, cur, rs);
  subsets(a.cols(), k, 0, cur, cs);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      Integer m = naive_det(a.select_rows(r).select_cols(c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    }
  return g;
}

ZMatrix random_z(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  ZMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

QMatrix random_q(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> d(-3, 3);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Rational(d(rng), (d(rng) % 2 == 0) ? 1 : 2);
      m(i, j).canonicalize();
    }
  return m;
}

}  // namespace

TEST_CASE("rref_solve on identity") {
  auto r = rref_solve(QMatrix::identity(2), QMatrix{{1}, {2}});
  CHECK(r.rank == 2);
  CHECK(r.kernel_basis.cols() == 0);
  REQUIRE(r.solution);
  CHECK(*r.solution == QMatrix{{1}, {2}});
}

TEST_CASE("rank one kernel") {
  auto r = rref_solve(QMatrix{{1, 2}, {2, 4}});
  CHECK(r.rank == 1);
  CHECK(r.kernel_basis == QMatrix{{-2}, {1}});
}

TEST_CASE("inconsistent system has no solution") {
  auto r = rref_solve(QMatrix{{1}, {0}}, QMatrix{{0}, {1}});
  CHECK_FALSE(r.solution);
}

TEST_CASE("dimension mismatch throws") { CHECK_THROWS_AS(rref_solve(QMatrix(2, 2), QMatrix(3, 1)), DimensionError); }

TEST_CASE("degenerate shapes") {
  CHECK(rank(QMatrix(0, 3)) == 0);
  CHECK(kernel(QMatrix(0, 3)) == QMatrix::identity(3));
  CHECK(kernel(QMatrix(3, 0)).cols() == 0);
  CHECK(image_basis(QMatrix(3, 0)).cols() == 0);
}

TEST_CASE("random rref properties") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    QMatrix a = random_q(rng, r, c);
    QMatrix e = rref(a);
    CHECK(rref(e) == e);
    QMatrix k = kernel(a);
    CHECK(k.cols() + rank(a) == c);
    CHECK((a * k).is_zero());
    // canonical image basis only depends on the span
    QMatrix b = random_q(rng, c, c);
    if (rank(b) == c) CHECK(image_basis(a) == image_basis(a * b));
    QMatrix x = random_q(rng, c, 2);
    auto s = solve(a, a * x);
    REQUIRE(s);
    CHECK(a * *s == a * x);
  }
}

TEST_CASE("coordinates and subquotients") {
  QMatrix basis{{1, 0}, {1, 1}, {0, 2}};
  Coordinates co(basis);
  QMatrix v = basis * QMatrix{{3}, {-1}};
  CHECK(co(v) == QMatrix{{3}, {-1}});
  CHECK_THROWS(co(QMatrix{{1}, {0}, {0}}));
  Subquotient q = Subquotient::quotient(3, QMatrix{{1}, {1}, {0}});
  CHECK(q.dim() == 2);
  CHECK(q.coords(QMatrix{{1}, {1}, {0}}).is_zero());
  CHECK(q.is_relation(QMatrix{{2}, {2}, {0}}));
}

TEST_CASE("intersection of spans") {
  QMatrix u{{1, 0}, {0, 1}, {0, 0}};
  QMatrix v{{0, 0}, {1, 0}, {0, 1}};
  CHECK(same_span(intersect_spans(u, v), QMatrix{{0}, {1}, {0}}));
}

TEST_CASE("snf examples") {
  CHECK(snf(ZMatrix{{2, 0}, {0, 6}}).invariant_factors == std::vector<Integer>{2, 6});
  CHECK(snf(ZMatrix{{2, 4}, {6, 8}}).invariant_factors == std::vector<Integer>{2, 4});
  auto z = snf(ZMatrix(2, 3));
  CHECK(z.S.is_zero());
  CHECK(z.invariant_factors.empty());
  CHECK(snf(ZMatrix{{1, 0}, {0, 3}}, false).invariant_factors == std::vector<Integer>{3});
}

TEST_CASE("snf against determinantal divisors") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    ZMatrix a = random_z(rng, r, c, 9);
    auto res = snf(a);
    CHECK(res.U * a * res.V == res.S);
    CHECK(abs(determinant(res.U)) == 1);
    CHECK(abs(determinant(res.V)) == 1);
    CHECK(res.invariant_factors.size() == rank(to_rational(a)));
    Integer prod = 1;
    for (std::size_t k = 0; k < res.invariant_factors.size(); ++k) {
      if (k) CHECK(res.invariant_factors[k] % res.invariant_factors[k - 1] == 0);
      prod *= res.invariant_factors[k];
      CHECK(prod == determinantal_divisor(a, k + 1));
    }
  }
}

TEST_CASE("bareiss determinant matches expansion") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + rng() % 5;
    ZMatrix a = random_z(rng, n, n, 20);
    CHECK(determinant(a) == naive_det(a));
  }
}

TEST_CASE("polynomial helpers") {
  using poly::Poly;
  Poly p{-2, 1, 1};  // (x + 2)(x - 1)
  auto roots = poly::rational_roots(p);
  REQUIRE(roots);
  CHECK(*roots == std::vector<Rational>{-2, 1});
  auto g = poly::ext_gcd(Poly{-1, 1}, Poly{1, 1});
  CHECK(g.g == Poly{1});
  CHECK(poly::sub(poly::mul(g.s, Poly{-1, 1}), poly::mul(poly::mul(g.t, Poly{1, 1}), Poly{-1})) == Poly{1});
}
