#include "stabcalc/algebra.hpp"

#include <atomic>
#include <optional>

#include "stabcalc/linalg.hpp"
#include "stabcalc/polynomial.hpp"

namespace stabcalc {

namespace {

std::atomic<std::size_t> next_algebra_id{1};

QMatrix basis_vector(std::size_t d, std::size_t i) { return QMatrix::unit_column(d, i); }

}  // namespace

AlgebraPtr Algebra::create(std::string name, std::size_t dim, std::vector<Rational> constants,
                           std::vector<Rational> unit) {
  if (dim == 0) throw AlgebraError("algebra dimension must be positive", {});
  if (constants.size() != dim * dim * dim)
    throw AlgebraError("structure constants must form a " + std::to_string(dim) + "^3 cube", {});
  if (unit.size() != dim) throw AlgebraError("unit has wrong length", {});

  std::shared_ptr<Algebra> a(new Algebra());
  a->name_ = std::move(name);
  a->dim_ = dim;
  a->c_ = std::move(constants);
  for (auto& x : a->c_) x.canonicalize();
  a->unit_ = QMatrix(dim, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    unit[i].canonicalize();
    a->unit_(i, 0) = unit[i];
  }

  const std::size_t d = dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t m = 0; m < d; ++m) {
          Rational lhs = 0, rhs = 0;
          for (std::size_t k = 0; k < d; ++k) {
            lhs += a->constant(i, j, k) * a->constant(k, l, m);
            rhs += a->constant(j, l, k) * a->constant(i, k, m);
          }
          if (lhs != rhs)
            throw AlgebraError("associativity fails for basis triple (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ", " + std::to_string(l) + ")",
                               {i, j, l});
        }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      Rational left = 0, right = 0;
      for (std::size_t u = 0; u < d; ++u) {
        left += a->unit_(u, 0) * a->constant(u, i, k);
        right += a->unit_(u, 0) * a->constant(i, u, k);
      }
      Rational expect = (i == k) ? 1 : 0;
      if (left != expect || right != expect)
        throw AlgebraError("unit does not act as identity on basis element " + std::to_string(i), {i});
    }

  a->id_ = next_algebra_id++;
  a->left_regular_.reserve(d);
  a->right_regular_.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    QMatrix l(d, d), r(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        l(k, j) = a->constant(i, j, k);
        r(k, j) = a->constant(j, i, k);
      }
    a->left_regular_.push_back(std::move(l));
    a->right_regular_.push_back(std::move(r));
  }
  a->compute_generators();
  a->compute_radical();
  a->compute_idempotents();
  return a;
}

QMatrix Algebra::regular_action_of(Side s, const QMatrix& element) const {
  QMatrix out(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (sgn(element(i, 0)) != 0) out += element(i, 0) * regular_action(s, i);
  return out;
}

QMatrix Algebra::multiply(const QMatrix& a, const QMatrix& b) const {
  return regular_action_of(Side::Left, a) * b;
}

void Algebra::compute_generators() {
  QMatrix span = image_basis(unit_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (in_span(span, basis_vector(dim_, i))) continue;
    generators_.push_back(i);
    // Close span{1} under right multiplication by the chosen generators.
    QMatrix cur = image_basis(unit_);
    while (true) {
      std::vector<QMatrix> parts{cur};
      for (auto g : generators_) parts.push_back(right_regular_[g] * cur);
      QMatrix next = image_basis(QMatrix::hstack(parts));
      if (next.cols() == cur.cols()) break;
      cur = std::move(next);
    }
    span = std::move(cur);
    if (span.cols() == dim_) break;
  }
}

void Algebra::compute_radical() {
  // Characteristic zero: rad Λ = {a : tr(L_{ab}) = 0 for all b}.
  std::vector<Rational> tr(dim_);
  for (std::size_t k = 0; k < dim_; ++k)
    for (std::size_t j = 0; j < dim_; ++j) tr[k] += constant(k, j, j);
  QMatrix form(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) form(i, j) += constant(i, j, k) * tr[k];
  QMatrix ker = kernel(form.transpose());
  radical_ = image_basis(ker.cols() ? ker : QMatrix(dim_, 0));
  for (std::size_t c = 0; c < radical_.cols(); ++c) {
    QMatrix l = regular_action_of(Side::Left, radical_.col(c));
    QMatrix p = QMatrix::identity(dim_);
    for (std::size_t t = 0; t < dim_; ++t) p = p * l;
    if (!p.is_zero()) throw AlgebraError("trace-form radical element is not nilpotent", {c});
  }
}

namespace {

QMatrix eval_poly(const Algebra& a, const poly::Poly& p, const QMatrix& b, const QMatrix& e) {
  QMatrix acc(a.dim(), 1);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = a.multiply(acc, b) + (*it) * e;
  return acc;
}

// Minimal polynomial of b inside the corner algebra with identity e.
poly::Poly minimal_polynomial(const Algebra& a, const QMatrix& b, const QMatrix& e) {
  std::vector<QMatrix> powers{e};
  while (true) {
    QMatrix next = a.multiply(powers.back(), b);
    QMatrix basis = QMatrix::hstack(powers);
    auto sol = solve(basis, next);
    if (sol) {
      poly::Poly mu(powers.size() + 1);
      for (std::size_t i = 0; i < powers.size(); ++i) mu[i] = -(*sol)(i, 0);
      mu.back() = 1;
      return mu;
    }
    powers.push_back(std::move(next));
  }
}

// Tries to split e using the element b; returns a nontrivial idempotent f
// with f = f e = e f when the minimal polynomial has a rational root whose
// primary factor is proper.
std::optional<QMatrix> split_with(const Algebra& a, const QMatrix& b, const QMatrix& e) {
  poly::Poly mu = minimal_polynomial(a, b, e);
  auto roots = poly::rational_roots(mu);
  if (!roots) return std::nullopt;
  for (const auto& lambda : *roots) {
    poly::Poly lin{-lambda, 1};
    poly::Poly h{1}, g = mu;
    while (true) {
      auto [q, r] = poly::divmod(g, lin);
      if (!r.empty()) break;
      g = q;
      h = poly::mul(h, lin);
    }
    if (poly::degree(g) < 1) continue;
    auto eg = poly::ext_gcd(g, h);  // s g + t h = 1
    poly::Poly sg = poly::divmod(poly::mul(eg.s, g), mu).second;
    QMatrix f = eval_poly(a, sg, b, e);
    if (f.is_zero() || f == e) continue;
    if (!(a.multiply(f, f) == f)) continue;
    return f;
  }
  return std::nullopt;
}

}  // namespace

void Algebra::compute_idempotents() {
  std::vector<QMatrix> done;
  // Depth-first so that the split order is reproducible: f is refined before e - f.
  std::vector<QMatrix> work{unit_};
  while (!work.empty()) {
    QMatrix e = std::move(work.back());
    work.pop_back();
    QMatrix corner = image_basis(regular_action_of(Side::Left, e) * regular_action_of(Side::Right, e));
    std::vector<QMatrix> candidates;
    for (std::size_t c = 0; c < corner.cols(); ++c) candidates.push_back(corner.col(c));
    for (std::size_t i = 0; i < corner.cols(); ++i)
      for (std::size_t j = i + 1; j < corner.cols(); ++j)
        candidates.push_back(corner.col(i) + Rational(2) * corner.col(j));
    std::optional<QMatrix> f;
    for (const auto& b : candidates) {
      f = split_with(*this, b, e);
      if (f) break;
    }
    if (!f) {
      done.push_back(std::move(e));
      continue;
    }
    QMatrix rest = e - *f;
    work.push_back(std::move(rest));
    work.push_back(std::move(*f));
  }
  idempotents_ = std::move(done);
}

AlgebraPtr validate_algebra(std::string name,
                            const std::vector<std::vector<std::vector<Rational>>>& cube,
                            const std::vector<Rational>& unit) {
  const std::size_t d = cube.size();
  std::vector<Rational> flat;
  flat.reserve(d * d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (cube[i].size() != d) throw AlgebraError("structure-constant cube is not square", {i});
    for (std::size_t j = 0; j < d; ++j) {
      if (cube[i][j].size() != d) throw AlgebraError("structure-constant cube is not square", {i, j});
      for (std::size_t k = 0; k < d; ++k) flat.push_back(cube[i][j][k]);
    }
  }
  if (unit.size() != d) throw AlgebraError("unit length " + std::to_string(unit.size()) +
                                               " does not match dimension " + std::to_string(d),
                                           {});
  return Algebra::create(std::move(name), d, std::move(flat), unit);
}

AlgebraPtr truncated_polynomial(std::size_t n) {
  if (n == 0) throw AlgebraError("truncated_polynomial needs n >= 1", {});
  std::vector<Rational> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[(i * n + j) * n + i + j] = 1;
  std::vector<Rational> unit(n);
  unit[0] = 1;
  return Algebra::create("Q[x]/(x^" + std::to_string(n) + ")", n, std::move(c), std::move(unit));
}

AlgebraPtr upper_triangular_2() {
  // e11 = 0, e12 = 1, e22 = 2
  const std::size_t d = 3;
  std::vector<Rational> c(d * d * d);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) { c[(i * d + j) * d + k] = 1; };
  set(0, 0, 0);
  set(0, 1, 1);
  set(1, 2, 1);
  set(2, 2, 2);
  return Algebra::create("UT2", d, std::move(c), {1, 0, 1});
}

AlgebraPtr ground_field() { return Algebra::create("Q", 1, {1}, {1}); }

AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  const std::size_t da = a->dim(), db = b->dim(), d = da + db;
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < da; ++k) c[(i * d + j) * d + k] = a->constant(i, j, k);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < db; ++k)
        c[((da + i) * d + da + j) * d + da + k] = b->constant(i, j, k);
  std::vector<Rational> unit(d);
  for (std::size_t i = 0; i < da; ++i) unit[i] = a->unit()(i, 0);
  for (std::size_t i = 0; i < db; ++i) unit[da + i] = b->unit()(i, 0);
  return Algebra::create(a->name() + " x " + b->name(), d, std::move(c), std::move(unit));
}

}  // namespace stabcalc
