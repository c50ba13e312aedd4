#include "stabcalc/derived.hpp"

namespace stabcalc {

namespace {

Subquotient homology_of(const QMatrix& outgoing, const QMatrix& incoming, std::size_t ambient) {
  QMatrix z = outgoing.rows() ? kernel(outgoing) : QMatrix::identity(ambient);
  QMatrix b = incoming.cols() ? image_basis(incoming) : QMatrix(ambient, 0);
  return Subquotient(std::move(z), b);
}

QMatrix flatten(const QMatrix& a) {
  QMatrix v(a.rows() * a.cols(), 1);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) v(r * a.cols() + c, 0) = a(r, c);
  return v;
}

// Ω^{n+1} ↪ P_n for a resolution of length n.
Submodule next_syzygy(const ProjectiveResolution& r) {
  return map_factorization(r.syzygy_covers[r.length()]).kernel;
}

void check_same_resolution(const ProjectiveResolution& x, const ProjectiveResolution& y) {
  if (x.module.fingerprint() != y.module.fingerprint() || x.mode != y.mode)
    throw std::invalid_argument("derived groups come from different resolutions");
}

}  // namespace

TensorProduct tensor_over_algebra(const Module& a, const Module& b) {
  if (a.side() != Side::Right || b.side() != Side::Left)
    throw ModuleError("tensor product needs a right module on the left and a left module on the right");
  if (a.algebra()->id() != b.algebra()->id()) throw ModuleError("tensor product over different algebras");
  const std::size_t na = a.dim(), nb = b.dim();
  std::vector<QMatrix> rels;
  if (na && nb) {
    const QMatrix ia = QMatrix::identity(na), ib = QMatrix::identity(nb);
    for (std::size_t l = 0; l < a.algebra()->dim(); ++l)
      rels.push_back(QMatrix::kron(a.action(l), ib) - QMatrix::kron(ia, b.action(l)));
  }
  QMatrix rel = image_basis(QMatrix::hstack(rels, na * nb));
  return {a, b, Subquotient::quotient(na * nb, rel)};
}

QMatrix tensor_map(const TensorProduct& from, const TensorProduct& to, const QMatrix& f, const QMatrix& g) {
  return induced_map(from.space, to.space, QMatrix::kron(f, g));
}

TorGroup tor_n(const Module& a, const Module& b, std::size_t n, TorRoute route, Mode mode) {
  TorGroup t;
  t.n = n;
  t.route = route;
  const bool first = route == TorRoute::ResolveFirst;
  t.resolution = resolve_projective(first ? a : b, n, mode);
  const auto& r = t.resolution;
  auto tensor = [&](const Module& p) { return first ? tensor_over_algebra(p, b) : tensor_over_algebra(a, p); };
  auto map = [&](std::size_t i, const QMatrix& d) {
    return first ? tensor_map(t.chain[i], t.chain[i - 1], d, QMatrix::identity(b.dim()))
                 : tensor_map(t.chain[i], t.chain[i - 1], QMatrix::identity(a.dim()), d);
  };
  for (std::size_t i = 0; i <= n; ++i) t.chain.push_back(tensor(r.terms[i]));
  t.boundary.emplace_back();
  for (std::size_t i = 1; i <= n; ++i) t.boundary.push_back(map(i, r.d(i).matrix()));
  Submodule omega = next_syzygy(r);
  t.chain.push_back(tensor(omega.module));
  t.boundary.push_back(map(n + 1, omega.inclusion.matrix()));
  QMatrix out = n ? t.boundary[n] : QMatrix(0, t.chain[0].dim());
  t.homology = homology_of(out, t.boundary[n + 1], t.chain[n].dim());
  return t;
}

QMatrix tor_map(const TorGroup& from, const TorGroup& to, const ModuleMap& g) {
  if (from.route != to.route || from.n != to.n) throw std::invalid_argument("tor_map: groups are not comparable");
  check_same_resolution(from.resolution, to.resolution);
  const std::size_t n = from.n;
  const QMatrix id = QMatrix::identity(from.resolution.terms[n].dim());
  QMatrix chain = from.route == TorRoute::ResolveFirst ? tensor_map(from.chain[n], to.chain[n], id, g.matrix())
                                                       : tensor_map(from.chain[n], to.chain[n], g.matrix(), id);
  return induced_map(from.homology, to.homology, chain);
}

namespace {

// Lift cycles of P_n ⊗ B″ to P_n ⊗ B, apply the boundary, and pull back
// along 1 ⊗ f into P_{n-1} ⊗ B′.
QMatrix snake_preimage(const TorGroup& from, const TorGroup& middle, const TensorProduct& prev_prime,
                       const ModuleMap& f, const ModuleMap& g) {
  const std::size_t n = from.n;
  const auto& res = middle.resolution;
  QMatrix cycles = from.homology.reps();
  QMatrix lift_g = tensor_map(middle.chain[n], from.chain[n], QMatrix::identity(res.terms[n].dim()), g.matrix());
  auto y = solve(lift_g, cycles);
  if (!y) throw std::logic_error("tor connecting map: 1 ⊗ g is not onto");
  QMatrix w = middle.boundary[n] * *y;
  QMatrix incl = tensor_map(prev_prime, middle.chain[n - 1], QMatrix::identity(res.terms[n - 1].dim()), f.matrix());
  auto x = solve(incl, w);
  if (!x) throw std::logic_error("tor connecting map: boundary not in the image of 1 ⊗ f");
  return *x;
}

}  // namespace

QMatrix tor_connecting(const TorGroup& from, const TorGroup& to, const TorGroup& middle, const ModuleMap& f,
                       const ModuleMap& g) {
  if (from.n < 2 || to.n + 1 != from.n) throw std::invalid_argument("tor_connecting: degrees must be n and n-1, n >= 2");
  check_same_resolution(from.resolution, middle.resolution);
  check_same_resolution(from.resolution, to.resolution);
  if (from.dim() == 0) return QMatrix(to.dim(), 0);
  QMatrix x = snake_preimage(from, middle, to.chain[from.n - 1], f, g);
  return to.homology.coords(x);
}

QMatrix tor_connecting_0(const TorGroup& from, const TensorProduct& target, const TorGroup& middle,
                         const ModuleMap& f, const ModuleMap& g) {
  if (from.n != 1) throw std::invalid_argument("tor_connecting_0 needs Tor_1");
  check_same_resolution(from.resolution, middle.resolution);
  if (from.dim() == 0) return QMatrix(target.dim(), 0);
  const auto& res = middle.resolution;
  TensorProduct p0 = tensor_over_algebra(res.terms[0], f.domain());
  QMatrix x = snake_preimage(from, middle, p0, f, g);
  return tensor_map(p0, target, res.augmentation.matrix(), QMatrix::identity(f.domain().dim())) * x;
}

ExtGroup ext_n(const Module& m, const Module& n, std::size_t degree, Mode mode) {
  ExtGroup e{degree, resolve_projective(m, degree, mode), {}, {}};
  const auto& r = e.resolution;
  for (std::size_t i = 0; i <= degree; ++i) e.cochain.emplace_back(r.terms[i], n);
  auto delta = [&](std::size_t i) {  // Hom(P_{i-1}, N) → Hom(P_i, N)
    std::vector<QMatrix> cols;
    for (const auto& phi : e.cochain[i - 1].basis()) cols.push_back(e.cochain[i].coords(phi.matrix() * r.d(i).matrix()));
    return QMatrix::hstack(cols, e.cochain[i].dim());
  };
  // φ on P_n is a cocycle iff it kills Ω^{n+1} ⊆ P_n.
  Submodule omega = next_syzygy(r);
  std::vector<QMatrix> cols;
  for (const auto& phi : e.cochain[degree].basis()) cols.push_back(flatten(phi.matrix() * omega.inclusion.matrix()));
  QMatrix out = QMatrix::hstack(cols, n.dim() * omega.module.dim());
  QMatrix in = degree ? delta(degree) : QMatrix(e.cochain[0].dim(), 0);
  e.cohomology = homology_of(out, in, e.cochain[degree].dim());
  return e;
}

QMatrix ext_map(const ExtGroup& from, const ExtGroup& to, const ModuleMap& g) {
  if (from.n != to.n) throw std::invalid_argument("ext_map: degrees differ");
  check_same_resolution(from.resolution, to.resolution);
  const auto& src = from.cochain[from.n];
  const auto& dst = to.cochain[to.n];
  std::vector<QMatrix> cols;
  for (const auto& phi : src.basis()) cols.push_back(dst.coords(g.matrix() * phi.matrix()));
  return induced_map(from.cohomology, to.cohomology, QMatrix::hstack(cols, dst.dim()));
}

StableHom stable_hom(const Module& b, const Module& c, StableMode mode, Mode cover_mode) {
  HomSpace h(b, c);
  std::vector<QMatrix> cols;
  if (mode == StableMode::ModInjectives) {
    InjectiveEnvelope env = injective_envelope(b, cover_mode);
    HomSpace through(env.injective, c);
    for (const auto& psi : through.basis()) cols.push_back(h.coords(psi.matrix() * env.embedding.matrix()));
  } else {
    ProjectiveCover pc = projective_cover(c, cover_mode);
    HomSpace through(b, pc.projective);
    for (const auto& psi : through.basis()) cols.push_back(h.coords(pc.cover.matrix() * psi.matrix()));
  }
  QMatrix factoring = image_basis(QMatrix::hstack(cols, h.dim()));
  Subquotient space = Subquotient::quotient(h.dim(), factoring);
  return {std::move(h), std::move(factoring), std::move(space)};
}

}  // namespace stabcalc
