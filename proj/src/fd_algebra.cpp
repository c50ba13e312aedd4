#include "stabcalc/fd_algebra.hpp"

#include <mutex>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace stabcalc {

namespace {

QMatrix closure(const Module& m, const QMatrix& vectors) {
  QMatrix cur = image_basis(vectors.cols() ? vectors : QMatrix(m.dim(), 0));
  while (true) {
    std::vector<QMatrix> parts{cur};
    for (auto g : m.algebra()->generators()) parts.push_back(m.action(g) * cur);
    QMatrix next = image_basis(QMatrix::hstack(parts, m.dim()));
    if (next.cols() == cur.cols()) return next;
    cur = std::move(next);
  }
}

QMatrix flatten(const QMatrix& a) {
  QMatrix v(a.rows() * a.cols(), 1);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) v(r * a.cols() + c, 0) = a(r, c);
  return v;
}

Module restrict_to(const Module& m, const QMatrix& basis) {
  if (basis.cols() == 0) return Module::zero(m.algebra(), m.side());
  Coordinates co(basis);
  std::vector<QMatrix> act;
  act.reserve(m.actions().size());
  for (const auto& a : m.actions()) act.push_back(co(a * basis));
  return Module::unchecked(m.algebra(), m.side(), std::move(act));
}

}  // namespace

HomSpace::HomSpace(Module m, Module n) : m_(std::move(m)), n_(std::move(n)) {
  const std::size_t nn = n_.dim();
  const std::size_t d = m_.algebra()->dim();
  const auto& pres = m_.presentation();
  const std::size_t g = pres.generators.cols();
  const std::size_t kappa = pres.relations.cols();

  // A tuple (t_1..t_g) in N^g defines Λ^g → N; it factors through M iff the
  // relations vanish on it.
  QMatrix psi(kappa * nn, g * nn);
  for (std::size_t c = 0; c < kappa; ++c)
    for (std::size_t j = 0; j < g; ++j) {
      QMatrix rel = pres.relations.block(j * d, c, d, 1);
      if (!rel.is_zero()) psi.set_block(c * nn, j * nn, n_.act(rel));
    }
  QMatrix ker = kernel(psi);
  tuple_coords_ = Coordinates(ker);
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    QMatrix phi(nn, g * d);
    for (std::size_t j = 0; j < g; ++j) {
      QMatrix t = ker.block(j * nn, k, nn, 1);
      for (std::size_t i = 0; i < d; ++i) phi.set_block(0, j * d + i, n_.action(i) * t);
    }
    basis_.push_back(ModuleMap::unchecked(m_, n_, phi * pres.section));
  }
}

ModuleMap HomSpace::element(const QMatrix& coeffs) const {
  QMatrix out(n_.dim(), m_.dim());
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (sgn(coeffs(k, 0)) != 0) out += coeffs(k, 0) * basis_[k].matrix();
  return ModuleMap::unchecked(m_, n_, std::move(out));
}

QMatrix HomSpace::coords(const QMatrix& matrix) const {
  const auto& gens = m_.presentation().generators;
  std::vector<QMatrix> parts;
  for (std::size_t j = 0; j < gens.cols(); ++j) parts.push_back(matrix * gens.col(j));
  if (basis_.empty()) return QMatrix(0, 1);
  return tuple_coords_(QMatrix::vstack(parts, 1));
}

QMatrix HomSpace::flattened() const {
  std::vector<QMatrix> cols;
  for (const auto& b : basis_) cols.push_back(flatten(b.matrix()));
  return QMatrix::hstack(cols, n_.dim() * m_.dim());
}

std::vector<ModuleMap> hom_space(const Module& m, const Module& n) { return HomSpace(m, n).basis(); }

Submodule submodule(const Module& m, const QMatrix& vectors) {
  QMatrix basis = closure(m, vectors);
  Module sub = restrict_to(m, basis);
  return {sub, ModuleMap::unchecked(sub, m, basis)};
}

QuotientModule quotient(const Module& m, const QMatrix& sub_vectors) {
  QMatrix u = closure(m, sub_vectors);
  Subquotient q = Subquotient::quotient(m.dim(), u);
  Module out;
  if (q.dim() == 0) {
    out = Module::zero(m.algebra(), m.side());
  } else {
    std::vector<QMatrix> act;
    for (const auto& a : m.actions()) act.push_back(induced_map(q, q, a));
    out = Module::unchecked(m.algebra(), m.side(), std::move(act));
  }
  QMatrix proj = q.coords(QMatrix::identity(m.dim()));
  return {out, ModuleMap::unchecked(m, out, std::move(proj)), std::move(q)};
}

DirectSum direct_sum(const std::vector<Module>& parts, const AlgebraPtr& algebra, Side side) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  Module sum;
  if (total == 0) {
    sum = Module::zero(algebra, side);
  } else {
    std::vector<QMatrix> act;
    for (std::size_t i = 0; i < algebra->dim(); ++i) {
      QMatrix a(total, total);
      std::size_t off = 0;
      for (const auto& p : parts) {
        if (p.dim()) a.set_block(off, off, p.action(i));
        off += p.dim();
      }
      act.push_back(std::move(a));
    }
    sum = Module::unchecked(algebra, side, std::move(act));
  }
  DirectSum out{sum, {}, {}};
  std::size_t off = 0;
  for (const auto& p : parts) {
    QMatrix inj(total, p.dim()), pr(p.dim(), total);
    for (std::size_t k = 0; k < p.dim(); ++k) {
      inj(off + k, k) = 1;
      pr(k, off + k) = 1;
    }
    out.injections.push_back(ModuleMap::unchecked(p, sum, std::move(inj)));
    out.projections.push_back(ModuleMap::unchecked(sum, p, std::move(pr)));
    off += p.dim();
  }
  return out;
}

DirectSum direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw ModuleError("direct_sum of no modules needs an algebra and side");
  return direct_sum(parts, parts.front().algebra(), parts.front().side());
}

MapFactorization map_factorization(const ModuleMap& f) {
  const Module& dom = f.domain();
  const Module& cod = f.codomain();
  QMatrix k = kernel(f.matrix());
  Module kmod = restrict_to(dom, k);
  QMatrix b = image_basis(f.matrix());
  Module img = restrict_to(cod, b);
  QMatrix epi = b.cols() ? Coordinates(b)(f.matrix()) : QMatrix(0, dom.dim());
  return {Submodule{kmod, ModuleMap::unchecked(kmod, dom, k)}, img, ModuleMap::unchecked(dom, img, epi),
          ModuleMap::unchecked(img, cod, b), quotient(cod, b)};
}

Module dual_module(const Module& m) {
  if (m.dim() == 0) return Module::zero(m.algebra(), opposite(m.side()));
  std::vector<QMatrix> act;
  for (const auto& a : m.actions()) act.push_back(a.transpose());
  return Module::unchecked(m.algebra(), opposite(m.side()), std::move(act));
}

ModuleMap dual_map(const ModuleMap& f) {
  return ModuleMap::unchecked(dual_module(f.codomain()), dual_module(f.domain()), f.matrix().transpose());
}

RadicalSocle radical_socle(const Module& m) {
  const QMatrix& j = m.algebra()->radical();
  std::vector<QMatrix> imgs, stacked;
  for (std::size_t c = 0; c < j.cols(); ++c) {
    QMatrix a = m.act(j.col(c));
    imgs.push_back(a);
    stacked.push_back(a);
  }
  QMatrix rad = QMatrix::hstack(imgs, m.dim());
  QMatrix soc = stacked.empty() ? QMatrix::identity(m.dim()) : kernel(QMatrix::vstack(stacked, m.dim()));
  return {submodule(m, rad), submodule(m, soc)};
}

QuotientModule top(const Module& m) { return quotient(m, radical_socle(m).radical.inclusion.matrix()); }

Module regular_module(const AlgebraPtr& a, Side s) {
  std::vector<QMatrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(a->regular_action(s, i));
  return Module::unchecked(a, s, std::move(act));
}

Submodule idempotent_projective(const AlgebraPtr& a, Side s, const QMatrix& e) {
  return submodule(regular_module(a, s), e);
}

std::vector<Module> indecomposable_projectives(const AlgebraPtr& a, Side s) {
  std::vector<Module> out;
  for (const auto& e : a->primitive_idempotents()) out.push_back(idempotent_projective(a, s, e).module);
  return out;
}

std::vector<Module> indecomposable_injectives(const AlgebraPtr& a, Side s) {
  std::vector<Module> out;
  for (const auto& p : indecomposable_projectives(a, opposite(s))) out.push_back(dual_module(p));
  return out;
}

std::vector<Module> simple_modules(const AlgebraPtr& a, Side s) {
  std::vector<Module> out;
  for (const auto& p : indecomposable_projectives(a, s)) {
    Module t = top(p).module;
    bool seen = false;
    for (const auto& o : out)
      if (is_isomorphic(o, t)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(t));
  }
  return out;
}

namespace {

ProjectiveCover free_cover(const Module& m) {
  const auto& pres = m.presentation();
  std::vector<Module> copies(pres.generators.cols(), regular_module(m.algebra(), m.side()));
  DirectSum f = direct_sum(copies, m.algebra(), m.side());
  return {f.module, ModuleMap::unchecked(f.module, m, pres.cover)};
}

ProjectiveCover minimal_cover(const Module& m) {
  const AlgebraPtr& a = m.algebra();
  QuotientModule t = top(m);
  QMatrix covered(t.module.dim(), 0);
  std::vector<Module> summands;
  std::vector<QMatrix> blocks;
  for (const auto& e : a->primitive_idempotents()) {
    if (covered.cols() == t.module.dim()) break;
    QMatrix em = image_basis(m.act(e));
    for (std::size_t c = 0; c < em.cols() && covered.cols() < t.module.dim(); ++c) {
      QMatrix v = em.col(c);
      QMatrix qv = t.projection.matrix() * v;
      if (qv.is_zero() || (covered.cols() && in_span(covered, qv))) continue;
      Submodule pe = idempotent_projective(a, m.side(), e);
      const QMatrix& inc = pe.inclusion.matrix();
      QMatrix blk(m.dim(), inc.cols());
      for (std::size_t k = 0; k < inc.cols(); ++k) blk.set_block(0, k, m.act(inc.col(k)) * v);
      summands.push_back(pe.module);
      blocks.push_back(std::move(blk));
      covered = closure(t.module, QMatrix::hstack({covered, qv}));
    }
  }
  DirectSum p = direct_sum(summands, a, m.side());
  return {p.module, ModuleMap::unchecked(p.module, m, QMatrix::hstack(blocks, m.dim()))};
}

template <class V>
class FingerprintCache {
 public:
  template <class F>
  V get(const std::string& key, F&& make) {
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V v = make();
    std::unique_lock lock(mu_);
    return map_.emplace(key, std::move(v)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<std::string, V> map_;
};

FingerprintCache<ProjectiveCover>& cover_cache() {
  static FingerprintCache<ProjectiveCover> c;
  return c;
}

}  // namespace

ProjectiveCover projective_cover(const Module& m, Mode mode) {
  std::string key = std::string(to_string(mode)) + '#' + m.fingerprint();
  ProjectiveCover pc = cover_cache().get(key, [&] { return mode == Mode::Free ? free_cover(m) : minimal_cover(m); });
  // The cached value may have been built from an equal module object.
  return {pc.projective, ModuleMap::unchecked(pc.projective, m, pc.cover.matrix())};
}

InjectiveEnvelope injective_envelope(const Module& m, Mode mode) {
  ProjectiveCover pc = projective_cover(dual_module(m), mode);
  Module inj = dual_module(pc.projective);
  return {inj, ModuleMap::unchecked(m, inj, pc.cover.matrix().transpose())};
}

bool is_projective(const Module& m) {
  if (m.dim() == 0) return true;
  // M is projective iff some (equivalently every) epi from a projective onto
  // M splits; the minimal cover gives the smallest system.
  ProjectiveCover c = projective_cover(m, Mode::Minimal);
  if (c.projective.dim() < m.dim()) throw std::logic_error("projective cover is not onto");
  HomSpace h(m, c.projective);
  return solve_hom(h, c.cover.matrix(), QMatrix::identity(m.dim()), QMatrix::identity(m.dim())).has_value();
}

bool is_injective(const Module& m) { return is_projective(dual_module(m)); }

StarModule star(const Module& m) {
  const AlgebraPtr& a = m.algebra();
  HomSpace h(m, regular_module(a, m.side()));
  const Side os = opposite(m.side());
  Module out;
  if (h.dim() == 0) {
    out = Module::zero(a, os);
  } else {
    std::vector<QMatrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i) {
      // (φ·λ)(x) = φ(x)λ for left M; the regular action of the opposite side
      // is exactly this multiplication on Λ.
      const QMatrix& endo = a->regular_action(os, i);
      std::vector<QMatrix> cols;
      for (const auto& phi : h.basis()) cols.push_back(h.coords(endo * phi.matrix()));
      act.push_back(QMatrix::hstack(cols, h.dim()));
    }
    out = Module::unchecked(a, os, std::move(act));
  }
  return {out, std::move(h)};
}

ModuleMap star_map(const ModuleMap& f, const StarModule& m_star, const StarModule& n_star) {
  std::vector<QMatrix> cols;
  for (const auto& psi : n_star.hom.basis()) cols.push_back(m_star.hom.coords(psi.matrix() * f.matrix()));
  return ModuleMap::unchecked(n_star.module, m_star.module, QMatrix::hstack(cols, m_star.module.dim()));
}

std::optional<ModuleMap> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed) {
  if (!m.same_ring_and_side(n) || m.dim() != n.dim()) return std::nullopt;
  if (m.dim() == 0) return ModuleMap::zero(m, n);
  HomSpace h(m, n);
  if (h.dim() == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-30, 30);
  for (int attempt = 0; attempt < 4; ++attempt) {
    QMatrix c(h.dim(), 1);
    for (std::size_t k = 0; k < h.dim(); ++k) c(k, 0) = dist(rng);
    ModuleMap f = h.element(c);
    if (rank(f.matrix()) == m.dim()) return f;
  }
  return std::nullopt;
}

bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed) {
  return find_isomorphism(m, n, seed).has_value();
}

std::optional<ModuleMap> solve_hom(const HomSpace& hom, const QMatrix& left, const QMatrix& right,
                                   const QMatrix& target) {
  QMatrix b = flatten(target);
  if (hom.dim() == 0) {
    if (!target.is_zero()) return std::nullopt;
    return ModuleMap::zero(hom.source(), hom.target());
  }
  std::vector<QMatrix> cols;
  for (const auto& x : hom.basis()) cols.push_back(flatten(left * x.matrix() * right));
  auto sol = solve(QMatrix::hstack(cols, b.rows()), b);
  if (!sol) return std::nullopt;
  return hom.element(*sol);
}

}  // namespace stabcalc
