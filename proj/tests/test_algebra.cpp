#include "doctest.h"
#include "stabcalc/algebra.hpp"
#include "stabcalc/linalg.hpp"

using namespace stabcalc;

namespace {

bool orthogonal_complete(const Algebra& a) {
  const auto& es = a.primitive_idempotents();
  QMatrix sum(a.dim(), 1);
  for (std::size_t i = 0; i < es.size(); ++i) {
    sum += es[i];
    for (std::size_t j = 0; j < es.size(); ++j) {
      QMatrix p = a.multiply(es[i], es[j]);
      if (i == j ? !(p == es[i]) : !p.is_zero()) return false;
    }
  }
  return sum == a.unit();
}

}  // namespace

TEST_CASE("truncated polynomial is valid") {
  auto a = truncated_polynomial(2);
  CHECK(a->dim() == 2);
  CHECK(a->radical() == QMatrix{{0}, {1}});
  CHECK(a->primitive_idempotents().size() == 1);
  CHECK(a->generators() == std::vector<std::size_t>{1});
}

TEST_CASE("ground field") {
  auto q = ground_field();
  CHECK(q->dim() == 1);
  CHECK(q->radical().cols() == 0);
  CHECK(q->generators().empty());
}

TEST_CASE("nonassociative table is rejected with a witness") {
  // e0 unit, e1 e1 = e2, e2 e1 = e1, e1 e2 = 0: (e1 e1) e1 = e1 but e1 (e1 e1) = 0.
  std::vector<std::vector<std::vector<Rational>>> c(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  for (int i = 0; i < 3; ++i) {
    c[0][i][i] = 1;
    c[i][0][i] = 1;
  }
  c[1][1][2] = 1;
  c[2][1][1] = 1;
  try {
    validate_algebra("bad", c, {1, 0, 0});
    FAIL("expected AlgebraError");
  } catch (const AlgebraError& e) {
    REQUIRE(e.witness().size() == 3);
    // independent triple check on the witness
    auto w = e.witness();
    auto mul = [&](std::vector<Rational> x, std::vector<Rational> y) {
      std::vector<Rational> z(3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) z[k] += x[i] * y[j] * c[i][j][k];
      return z;
    };
    auto basis = [](std::size_t i) {
      std::vector<Rational> v(3);
      v[i] = 1;
      return v;
    };
    CHECK(mul(mul(basis(w[0]), basis(w[1])), basis(w[2])) != mul(basis(w[0]), mul(basis(w[1]), basis(w[2]))));
  }
}

TEST_CASE("bad unit is rejected") {
  CHECK_THROWS_AS(Algebra::create("z", 1, {1}, {2}), AlgebraError);
  CHECK_THROWS_AS(Algebra::create("z", 2, {1}, {1, 0}), AlgebraError);
}

TEST_CASE("upper triangular idempotents and radical") {
  auto a = upper_triangular_2();
  CHECK(a->radical() == QMatrix{{0}, {1}, {0}});
  CHECK(a->primitive_idempotents().size() == 2);
  CHECK(orthogonal_complete(*a));
}

TEST_CASE("product algebra splits") {
  auto a = product_algebra(truncated_polynomial(2), upper_triangular_2());
  CHECK(a->dim() == 5);
  CHECK(a->radical().cols() == 2);
  CHECK(a->primitive_idempotents().size() == 3);
  CHECK(orthogonal_complete(*a));
}

TEST_CASE("matrix algebra M2(Q) finds non-basis idempotents") {
  // basis e11 e12 e21 e22, but presented in a twisted basis so that no basis
  // element is itself idempotent: f0 = e11 + e22, f1 = e12, f2 = e21, f3 = e11 + e12.
  std::vector<QMatrix> m = {QMatrix{{1, 0}, {0, 1}}, QMatrix{{0, 1}, {0, 0}}, QMatrix{{0, 0}, {1, 0}},
                            QMatrix{{1, 1}, {0, 0}}};
  QMatrix flat(4, 4);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) flat(r * 2 + c, k) = m[k](r, c);
  std::vector<Rational> consts(64);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      QMatrix p = m[i] * m[j];
      QMatrix v(4, 1);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) v(r * 2 + c, 0) = p(r, c);
      QMatrix x = *solve(flat, v);
      for (std::size_t k = 0; k < 4; ++k) consts[(i * 4 + j) * 4 + k] = x(k, 0);
    }
  auto a = Algebra::create("M2", 4, consts, {1, 0, 0, 0});
  CHECK(a->radical().cols() == 0);
  CHECK(a->primitive_idempotents().size() == 2);
  CHECK(orthogonal_complete(*a));
}
