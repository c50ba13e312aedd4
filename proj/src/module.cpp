#include "stabcalc/module.hpp"

#include <mutex>
#include <sstream>

namespace stabcalc {

struct Module::Impl {
  AlgebraPtr algebra;
  Side side = Side::Left;
  std::size_t dim = 0;
  std::vector<QMatrix> action;

  mutable std::once_flag fp_once;
  mutable std::string fp;
  mutable std::once_flag pres_once;
  mutable Presentation pres;
};

const AlgebraPtr& Module::algebra() const { return impl_->algebra; }
Side Module::side() const { return impl_->side; }
std::size_t Module::dim() const { return impl_->dim; }
const QMatrix& Module::action(std::size_t i) const { return impl_->action[i]; }
const std::vector<QMatrix>& Module::actions() const { return impl_->action; }

Module Module::unchecked(AlgebraPtr algebra, Side side, std::vector<QMatrix> action) {
  auto impl = std::make_shared<Impl>();
  impl->dim = action.empty() ? 0 : action.front().rows();
  impl->algebra = std::move(algebra);
  impl->side = side;
  impl->action = std::move(action);
  Module m;
  m.impl_ = std::move(impl);
  return m;
}

Module Module::create(AlgebraPtr algebra, Side side, std::vector<QMatrix> action) {
  if (!algebra) throw ModuleError("module without algebra");
  const std::size_t d = algebra->dim();
  if (action.size() != d)
    throw ModuleError("module needs " + std::to_string(d) + " action matrices, got " +
                      std::to_string(action.size()));
  const std::size_t n = action.front().rows();
  for (const auto& a : action)
    if (a.rows() != n || a.cols() != n) throw ModuleError("action matrices must be square of equal size");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      QMatrix rhs(n, n);
      for (std::size_t k = 0; k < d; ++k) {
        const Rational& c = algebra->acting_constant(side, i, j, k);
        if (sgn(c) != 0) rhs += c * action[k];
      }
      if (!(action[i] * action[j] == rhs))
        throw ModuleError("action does not respect multiplication at basis pair (" + std::to_string(i) +
                          ", " + std::to_string(j) + ")");
    }
  QMatrix unit(n, n);
  for (std::size_t i = 0; i < d; ++i)
    if (sgn(algebra->unit()(i, 0)) != 0) unit += algebra->unit()(i, 0) * action[i];
  if (!(unit == QMatrix::identity(n))) throw ModuleError("unit does not act as the identity");
  return unchecked(std::move(algebra), side, std::move(action));
}

Module Module::zero(AlgebraPtr algebra, Side side) {
  std::vector<QMatrix> action(algebra->dim(), QMatrix(0, 0));
  return unchecked(std::move(algebra), side, std::move(action));
}

QMatrix Module::act(const QMatrix& element) const {
  QMatrix out(dim(), dim());
  for (std::size_t i = 0; i < element.rows(); ++i)
    if (sgn(element(i, 0)) != 0) out += element(i, 0) * action(i);
  return out;
}

const std::string& Module::fingerprint() const {
  std::call_once(impl_->fp_once, [this] {
    std::ostringstream os;
    os << to_string(side()) << '|' << algebra()->id() << '|' << dim();
    for (const auto& a : actions()) os << '|' << a.str();
    impl_->fp = os.str();
  });
  return impl_->fp;
}

const Module::Presentation& Module::presentation() const {
  std::call_once(impl_->pres_once, [this] {
    const std::size_t n = dim();
    const std::size_t d = algebra()->dim();
    // Unit vectors spanning a complement of rad(A)·M generate M (Nakayama).
    const QMatrix& rad = algebra()->radical();
    std::vector<QMatrix> parts;
    for (std::size_t j = 0; j < rad.cols(); ++j) parts.push_back(act(rad.col(j)));
    const std::size_t rcols = parts.size() * n;
    parts.push_back(QMatrix::identity(n));
    std::vector<QMatrix> gens;
    for (auto c : rref_solve(QMatrix::hstack(parts, n)).pivots)
      if (c >= rcols) gens.push_back(QMatrix::unit_column(n, c - rcols));
    Presentation p;
    p.generators = QMatrix::hstack(gens, n);
    const std::size_t g = gens.size();
    p.cover = QMatrix(n, g * d);
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t i = 0; i < d; ++i) p.cover.set_block(0, j * d + i, action(i) * gens[j]);
    p.relations = kernel(p.cover);
    auto sec = solve(p.cover, QMatrix::identity(n));
    if (!sec) throw std::logic_error("presentation: cover is not surjective");
    p.section = std::move(*sec);
    impl_->pres = std::move(p);
  });
  return impl_->pres;
}

bool intertwines(const Module& dom, const Module& cod, const QMatrix& matrix) {
  if (matrix.rows() != cod.dim() || matrix.cols() != dom.dim()) return false;
  for (auto g : dom.algebra()->generators())
    if (!(matrix * dom.action(g) == cod.action(g) * matrix)) return false;
  return true;
}

ModuleMap ModuleMap::unchecked(Module domain, Module codomain, QMatrix matrix) {
  ModuleMap f;
  f.dom_ = std::move(domain);
  f.cod_ = std::move(codomain);
  f.mat_ = std::move(matrix);
  return f;
}

ModuleMap ModuleMap::create(Module domain, Module codomain, QMatrix matrix) {
  if (!domain.same_ring_and_side(codomain))
    throw ModuleError("module map between modules over different rings or sides");
  if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim())
    throw ModuleError("module map matrix has shape " + matrix.shape() + ", expected " +
                      std::to_string(codomain.dim()) + "x" + std::to_string(domain.dim()));
  if (!intertwines(domain, codomain, matrix)) throw ModuleError("matrix does not intertwine the actions");
  return unchecked(std::move(domain), std::move(codomain), std::move(matrix));
}

ModuleMap ModuleMap::identity(const Module& m) { return unchecked(m, m, QMatrix::identity(m.dim())); }

ModuleMap ModuleMap::zero(const Module& domain, const Module& codomain) {
  return unchecked(domain, codomain, QMatrix(codomain.dim(), domain.dim()));
}

bool ModuleMap::is_injective() const { return rank(mat_) == dom_.dim(); }
bool ModuleMap::is_surjective() const { return rank(mat_) == cod_.dim(); }

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.codomain().dim() != g.domain().dim() || !f.codomain().same_ring_and_side(g.domain()))
    throw ModuleError("compose: maps are not composable");
  return ModuleMap::unchecked(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  return ModuleMap::unchecked(a.domain(), a.codomain(), a.matrix() + b.matrix());
}

ModuleMap scale(const Rational& s, const ModuleMap& a) {
  return ModuleMap::unchecked(a.domain(), a.codomain(), s * a.matrix());
}

}  // namespace stabcalc
