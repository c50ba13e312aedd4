#include "stabcalc/engine.hpp"

#include <sstream>

#include "stabcalc/sampling.hpp"

namespace stabcalc {

const char* to_string(StabRoute r) {
  switch (r) {
    case StabRoute::Definition: return "definition";
    case StabRoute::Transpose: return "transpose";
    case StabRoute::SatelliteOfTor: return "satellite-of-tor";
    case StabRoute::All: return "all";
  }
  return "?";
}

namespace {

std::size_t rank0(const QMatrix& m) { return m.rows() && m.cols() ? rank(m) : 0; }

bool spans_equal(const QMatrix& u, const QMatrix& v) {
  const std::size_t ru = rank0(u), rv = rank0(v);
  if (ru != rv) return false;
  return ru == 0 || same_span(u, v);
}

QMatrix right_inverse(const QMatrix& epi) {
  if (epi.rows() == 0) return QMatrix(epi.cols(), 0);
  auto s = solve(epi, QMatrix::identity(epi.rows()));
  if (!s) throw std::logic_error("right_inverse: map is not onto");
  return *s;
}

QMatrix flatten(const QMatrix& a) {
  QMatrix v(a.rows() * a.cols(), 1);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) v(r * a.cols() + c, 0) = a(r, c);
  return v;
}

void require_tensor_sides(const Module& a, const Module& b) {
  if (a.side() != Side::Right || b.side() != Side::Left)
    throw ModuleError("A must be a right module and B a left module");
  if (a.algebra()->id() != b.algebra()->id()) throw ModuleError("A and B live over different algebras");
}

}  // namespace

TensorStab tensor_stab(const Module& a, const Module& b, StabRoute route, Mode mode) {
  require_tensor_sides(a, b);
  TensorStab out;
  auto want = [&](StabRoute r) { return route == StabRoute::All || route == r; };
  if (want(StabRoute::Definition)) {
    FunctorPtr t = tensor_functor(a);
    FunctorPtr bar = injective_stabilization(t, mode);
    const FValue& v = bar->eval(b);
    out.subspace = v.space.reps();
    out.tensor = t->eval(b).space;
    out.routes.emplace_back(StabRoute::Definition, v.dim());
  }
  if (want(StabRoute::Transpose))
    out.routes.emplace_back(StabRoute::Transpose, ext_n(transpose(a, mode).tr, b, 1, mode).dim());
  if (want(StabRoute::SatelliteOfTor))
    out.routes.emplace_back(StabRoute::SatelliteOfTor,
                            satellite(derived_tor_functor(a, 1, mode), Direction::Right, mode)->eval(b).dim());
  out.dim = out.routes.front().second;
  for (const auto& [r, d] : out.routes)
    if (d != out.dim) {
      std::ostringstream msg;
      msg << "tensor_stab routes disagree:";
      for (const auto& [r2, d2] : out.routes) msg << ' ' << to_string(r2) << '=' << d2;
      throw ConsistencyError(msg.str());
    }
  return out;
}

Torsion torsion_submodule(const Module& a, Mode mode) {
  StarModule s = star(a);
  QMatrix k = QMatrix::identity(a.dim());
  if (s.hom.dim()) {
    std::vector<QMatrix> rows;
    for (const auto& phi : s.hom.basis()) rows.push_back(phi.matrix());
    k = kernel(QMatrix::vstack(rows, a.dim()));
  }
  Torsion out{submodule(a, k), false};

  // A ≅ A ⊗ Λ via a ↦ a ⊗ 1 (or Λ ⊗ A for left A).
  Module lam = regular_module(a.algebra(), opposite(a.side()));
  FunctorPtr t = tensor_functor(a);
  FunctorPtr bar = injective_stabilization(t, mode);
  const FValue& tv = t->eval(lam);
  const FValue& bv = bar->eval(lam);
  const QMatrix& u = a.algebra()->unit();
  const QMatrix id = QMatrix::identity(a.dim());
  QMatrix emb = a.side() == Side::Right ? QMatrix::kron(id, u) : QMatrix::kron(u, id);
  QMatrix image = k.cols() ? tv.space.coords(emb * k) : QMatrix(tv.dim(), 0);
  out.matches_tensor_stab = spans_equal(image, bv.space.reps());
  return out;
}

RnTensor rn_tensor(const Module& a, const Module& b, std::size_t n, Mode mode) {
  require_tensor_sides(a, b);
  auto res = resolve_injective(b, n + 1, mode);
  std::vector<TensorProduct> c;
  for (std::size_t j = 0; j <= n + 1; ++j) c.push_back(tensor_over_algebra(a, res.terms[j]));
  const QMatrix id = QMatrix::identity(a.dim());
  QMatrix out = tensor_map(c[n], c[n + 1], id, res.differentials[n].matrix());
  QMatrix in = n ? tensor_map(c[n - 1], c[n], id, res.differentials[n - 1].matrix()) : QMatrix(c[0].dim(), 0);
  RnTensor r;
  r.n = n;
  r.dim = c[n].dim() - rank0(out) - rank0(in);
  r.ext_dim = ext_n(star(a).module, b, n, mode).dim();
  if (r.dim != r.ext_dim)
    throw ConsistencyError("R^" + std::to_string(n) + "(A⊗−)(B) has dim " + std::to_string(r.dim) + " but Ext^" +
                           std::to_string(n) + "(A*, B) has dim " + std::to_string(r.ext_dim));
  return r;
}

bool property_a_check(const FunctorPtr& f, const Module& c, Mode mode) {
  InjectiveEnvelope env = injective_envelope(c, mode);
  QMatrix m = f->eval_map(env.embedding);
  return rank0(m) == m.cols();
}

Horseshoe horseshoe(const ModuleMap& f, const ModuleMap& g, Mode mode) {
  Horseshoe h;
  h.f = f;
  h.g = g;
  const Module& x = f.codomain();
  auto r1 = resolve_injective(f.domain(), 1, mode);
  auto r2 = resolve_injective(g.codomain(), 1, mode);
  h.iota1 = r1.coaugmentation;
  h.iota2 = r2.coaugmentation;
  h.pi1 = r1.cosyzygy_projections[0];
  h.pi2 = r2.cosyzygy_projections[0];
  const Module& i1 = r1.terms[0];
  const Module& i2 = r2.terms[0];

  // e : X → I′ with e ∘ f = ι′.
  HomSpace hx(x, i1);
  auto e = solve_hom(hx, QMatrix::identity(i1.dim()), f.matrix(), h.iota1.matrix());
  if (!e) throw std::logic_error("horseshoe: injective hull does not extend along f");
  DirectSum ds = direct_sum({i1, i2});
  h.inj1 = ds.injections[0];
  h.proj1 = ds.projections[0];
  h.proj2 = ds.projections[1];
  QMatrix iota = ds.injections[0].matrix() * e->matrix() +
                 ds.injections[1].matrix() * h.iota2.matrix() * g.matrix();
  h.iota = ModuleMap::unchecked(x, ds.module, iota);
  QuotientModule q = quotient(ds.module, iota);
  h.pi = q.projection;
  h.next_f = ModuleMap::unchecked(h.pi1.codomain(), q.module,
                                  h.pi.matrix() * h.inj1.matrix() * right_inverse(h.pi1.matrix()));
  h.next_g = ModuleMap::unchecked(q.module, h.pi2.codomain(),
                                  h.pi2.matrix() * h.proj2.matrix() * right_inverse(h.pi.matrix()));
  return h;
}

bool SpliceSequence::all_complex() const {
  for (const auto& v : verdicts)
    if (!v.complex) return false;
  return true;
}

bool SpliceSequence::all_exact() const {
  for (const auto& v : verdicts)
    if (!v.exact) return false;
  return true;
}

namespace {

std::string sigma_label(std::size_t j, const char* which) {
  std::string s = j == 0 ? std::string(which) : "Σ^" + std::to_string(j) + which;
  return "A⊗̄" + s;
}

// Snake-lemma connecting map F̄(X″) → F̄(ΣX′) through the horseshoe.
QMatrix sigma_connecting(const FunctorPtr& t, const FunctorPtr& bar, const Horseshoe& h) {
  const FValue& src = bar->eval(h.g.codomain());
  const FValue& dst = bar->eval(h.pi1.codomain());
  if (src.dim() == 0) return QMatrix(dst.dim(), 0);
  QMatrix fg = t->eval_map(h.g);
  auto y = solve(fg, src.space.reps());
  if (!y) throw ConsistencyError("splice: F(g) is not onto");
  QMatrix up = t->eval_map(h.iota) * *y;
  QMatrix w = t->eval_map(h.proj1) * up;
  if (t->eval_map(h.inj1) * w != up) throw ConsistencyError("splice: lift does not come from F(I′)");
  return dst.space.coords(t->eval_map(h.pi1) * w);
}

}  // namespace

SpliceSequence splice_sequence(const Module& a, const ModuleMap& f, const ModuleMap& g, std::size_t tor_rows,
                               std::size_t sigma_rows, Mode mode) {
  if (!is_short_exact(f, g)) throw std::invalid_argument("splice: input sequence is not short exact");
  require_tensor_sides(a, f.domain());
  SpliceSequence s;
  FunctorPtr t = tensor_functor(a);
  FunctorPtr bar = injective_stabilization(t, mode);
  auto push = [&](std::string label, std::size_t dim) { s.terms.push_back({std::move(label), dim}); };

  const Module &b1 = f.domain(), &b = f.codomain(), &b2 = g.codomain();
  std::vector<TorGroup> tp(tor_rows + 1), tm(tor_rows + 1), tpp(tor_rows + 1);
  for (std::size_t n = 1; n <= tor_rows; ++n) {
    tp[n] = tor_n(a, b1, n, TorRoute::ResolveFirst, mode);
    tm[n] = tor_n(a, b, n, TorRoute::ResolveFirst, mode);
    tpp[n] = tor_n(a, b2, n, TorRoute::ResolveFirst, mode);
  }
  for (std::size_t n = tor_rows; n >= 1; --n) {
    const std::string tor = "Tor_" + std::to_string(n);
    push(tor + "(A,B′)", tp[n].dim());
    s.maps.push_back(tor_map(tp[n], tm[n], f));
    push(tor + "(A,B)", tm[n].dim());
    s.maps.push_back(tor_map(tm[n], tpp[n], g));
    push(tor + "(A,B″)", tpp[n].dim());
    if (n >= 2) {
      s.maps.push_back(tor_connecting(tpp[n], tp[n - 1], tm[n], f, g));
    } else {
      QMatrix x = tor_connecting_0(tpp[1], tensor_over_algebra(a, b1), tm[1], f, g);
      s.maps.push_back(bar->eval(b1).space.coords(x));
    }
  }

  ModuleMap cf = f, cg = g;
  for (std::size_t j = 0; j < sigma_rows; ++j) {
    push(sigma_label(j, "B′"), bar->eval(cf.domain()).dim());
    s.maps.push_back(bar->eval_map(cf));
    push(sigma_label(j, "B"), bar->eval(cf.codomain()).dim());
    s.maps.push_back(bar->eval_map(cg));
    push(sigma_label(j, "B″"), bar->eval(cg.codomain()).dim());
    if (j + 1 < sigma_rows) {
      Horseshoe h = horseshoe(cf, cg, mode);
      s.maps.push_back(sigma_connecting(t, bar, h));
      cf = h.next_f;
      cg = h.next_g;
    }
  }

  for (std::size_t p = 1; p + 1 < s.terms.size(); ++p) {
    const QMatrix &in = s.maps[p - 1], &out = s.maps[p];
    s.verdicts.push_back({p, (out * in).is_zero(), exact_at(in, out)});
  }
  return s;
}

DualityCheck duality_check(const Module& a, const Module& b, Mode mode) {
  require_tensor_sides(a, b);
  FunctorPtr t = tensor_functor(a);
  FunctorPtr bar = injective_stabilization(t, mode);
  const FValue& tv = t->eval(b);
  const FValue& bv = bar->eval(b);
  StableHom sh = stable_hom(b, dual_module(a), StableMode::ModInjectives, mode);
  DualityCheck d;
  d.lhs_dim = bv.dim();
  d.rhs_dim = sh.dim();
  // h : B → DA pairs with a ⊗ b as h(b)(a); row-major flattening of h
  // matches the ambient index a_i ⊗ b_k ↦ i·dim B + k.
  std::vector<QMatrix> flats;
  for (const auto& h : sh.hom.basis()) flats.push_back(flatten(h.matrix()));
  QMatrix pairing = QMatrix::hstack(flats, a.dim() * b.dim());
  d.witness = bv.space.reps().transpose() * tv.space.reps().transpose() * pairing;
  QMatrix ker = d.witness.rows() ? kernel(d.witness) : QMatrix::identity(sh.hom.dim());
  d.witness_is_iso = rank0(d.witness) == d.lhs_dim && spans_equal(ker, sh.factoring);
  if (d.lhs_dim != d.rhs_dim)
    throw ConsistencyError("duality: dim D(A⊗̄B) = " + std::to_string(d.lhs_dim) + " but stable Hom(B, DA) = " +
                           std::to_string(d.rhs_dim));
  return d;
}

HalfExactness half_exactness(const Module& a, const ModuleMap& f, const ModuleMap& g, Mode mode) {
  FunctorPtr t = tensor_functor(a);
  FunctorPtr bar = injective_stabilization(t, mode);
  QMatrix m1 = bar->eval_map(f), m2 = bar->eval_map(g);
  HalfExactness h;
  h.exact_in_middle = exact_at(m1, m2);
  h.epi_preserved = rank0(m2) == m2.rows();
  h.sigma_prime_has_a = property_a_check(t, cosyzygy(f.domain(), 1, mode), mode);
  return h;
}

}  // namespace stabcalc
