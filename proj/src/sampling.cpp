#include "stabcalc/sampling.hpp"

namespace stabcalc {

int random_small(Rng& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return d(rng);
}

QMatrix random_vector(Rng& rng, std::size_t n, int bound) {
  QMatrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = random_small(rng, bound);
  return v;
}

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Module cyclic_quotient(const AlgebraPtr& a, Side s, Rng& rng, std::size_t max_dim) {
  auto ps = indecomposable_projectives(a, s);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Module> parts{ps[pick(rng, ps.size())]};
    if (rng() % 3 == 0) parts.push_back(ps[pick(rng, ps.size())]);
    DirectSum p = direct_sum(parts);
    Module m = p.module;
    // A random vector in the radical usually gives a proper submodule.
    QMatrix rad = radical_socle(m).radical.inclusion.matrix();
    QMatrix v = rad.cols() && rng() % 4 ? rad * random_vector(rng, rad.cols()) : random_vector(rng, m.dim());
    if (rng() % 5 == 0) v = QMatrix(m.dim(), 1);
    QuotientModule q = quotient(m, v);
    if (q.module.dim() >= 1 && q.module.dim() <= max_dim) return q.module;
  }
  return top(ps[pick(rng, ps.size())]).module;
}

}  // namespace

Module random_module(const AlgebraPtr& a, Side s, Rng& rng, std::size_t max_dim) {
  switch (rng() % 5) {
    case 0:
    case 1:
      return cyclic_quotient(a, s, rng, max_dim);
    case 2:
    case 3:
      return dual_module(cyclic_quotient(a, opposite(s), rng, max_dim));
    default: {
      Module x = cyclic_quotient(a, s, rng, max_dim);
      if (x.dim() >= max_dim) return x;
      Module y = random_module(a, s, rng, max_dim - x.dim());
      return direct_sum({x, y}).module;
    }
  }
}

ModuleMap random_hom(const Module& m, const Module& n, Rng& rng) {
  HomSpace h(m, n);
  return h.element(random_vector(rng, h.dim(), 2));
}

ShortExact random_ses(const AlgebraPtr& a, Side s, Rng& rng, std::size_t max_dim) {
  if (rng() % 6 == 0) {
    Module x = random_module(a, s, rng, std::max<std::size_t>(1, max_dim / 2));
    Module y = random_module(a, s, rng, std::max<std::size_t>(1, max_dim / 2));
    DirectSum d = direct_sum({x, y});
    return {d.injections[0], d.projections[1]};
  }
  for (int attempt = 0; attempt < 20; ++attempt) {
    Module b = random_module(a, s, rng, max_dim);
    Submodule sub = submodule(b, random_vector(rng, b.dim()));
    if (sub.module.dim() == 0 || sub.module.dim() == b.dim()) continue;
    QuotientModule q = quotient(b, sub.inclusion.matrix());
    return {sub.inclusion, q.projection};
  }
  Module x = random_module(a, s, rng, max_dim);
  DirectSum d = direct_sum({x, x});
  return {d.injections[0], d.projections[1]};
}

bool is_short_exact(const ModuleMap& f, const ModuleMap& g) {
  if (!f.is_injective() || !g.is_surjective()) return false;
  if (!(g.matrix() * f.matrix()).is_zero()) return false;
  return f.domain().dim() + g.codomain().dim() == f.codomain().dim();
}

}  // namespace stabcalc
