#include "stabcalc/fp.hpp"

#include <set>

namespace stabcalc {

namespace {

Module random_projective(const AlgebraPtr& alg, Side s, Rng& rng) {
  auto ps = indecomposable_projectives(alg, s);
  std::vector<Module> parts;
  const int n = rng() % 3 == 0 ? 2 : 1;
  for (int k = 0; k < n; ++k) parts.push_back(ps[static_cast<std::size_t>(rng() % ps.size())]);
  return direct_sum(parts).module;
}

// Matrix of ψ ↦ ψ ∘ u from Hom(N, X) to Hom(M, X) for u : M → N.
QMatrix precompose(const HomSpace& from, const HomSpace& to, const QMatrix& u) {
  std::vector<QMatrix> cols;
  for (const auto& psi : from.basis()) cols.push_back(to.coords(psi.matrix() * u));
  return QMatrix::hstack(cols, to.dim());
}

}  // namespace

FpPresentation fp_presentation(const ModuleMap& f) { return {f, map_factorization(f), fp_functor(f)}; }

FpPresentation tensor_presentation(const Module& a, Mode mode) {
  if (a.side() != Side::Right) throw ModuleError("tensor_presentation: A must be a right module");
  return fp_presentation(transpose(a, mode).d_star);
}

std::vector<Module> test_battery(const AlgebraPtr& alg, Side s, Rng& rng, std::size_t random_count,
                                 std::size_t max_dim) {
  std::vector<Module> out;
  std::set<std::string> seen;
  auto add = [&](const Module& m) {
    if (seen.insert(m.fingerprint()).second) out.push_back(m);
  };
  for (const auto& m : indecomposable_projectives(alg, s)) add(m);
  for (const auto& m : indecomposable_injectives(alg, s)) add(m);
  for (const auto& m : simple_modules(alg, s)) add(m);
  for (std::size_t k = 0; k < random_count; ++k) add(random_module(alg, s, rng, max_dim));
  return out;
}

FpPresentation random_fp(const AlgebraPtr& alg, Side s, Rng& rng, std::size_t max_dim, bool projective_ends) {
  Module a = projective_ends ? random_projective(alg, s, rng) : random_module(alg, s, rng, max_dim);
  Module b = projective_ends ? random_projective(alg, s, rng) : random_module(alg, s, rng, max_dim);
  return fp_presentation(random_hom(a, b, rng));
}

DefectReport defect_and_stability(const FpPresentation& p) {
  DefectReport r;
  r.defect = p.defect().module;
  r.stable = r.defect.dim() == 0;
  r.vanishes_on_injectives = true;
  for (const auto& inj : indecomposable_injectives(p.a().algebra(), p.a().side()))
    if (p.functor->eval(inj).dim() != 0) r.vanishes_on_injectives = false;
  return r;
}

R0Check r0_check(const FpPresentation& p, const Module& x, Mode mode) {
  R0Check c;
  c.hom_dim = HomSpace(p.defect().module, x).dim();
  auto res = resolve_injective(x, 1, mode);
  QMatrix d0 = p.functor->eval_map(res.differentials[0]);
  c.r0_dim = d0.cols() - rank(d0);
  return c;
}

bool StabResolution::all_exact() const {
  for (const auto& c : checks)
    if (!c.exact) return false;
  return true;
}

bool StabResolution::f0_is_stabilization() const {
  for (const auto& c : checks)
    if (c.f0 != c.stab_dim) return false;
  return true;
}

StabResolution stab_resolution(const FpPresentation& p, const std::vector<Module>& battery, Mode mode) {
  StabResolution r{fp_presentation(p.parts.mono), fp_presentation(p.defect().inclusion), {}};
  FunctorPtr bar = injective_stabilization(p.functor, mode);
  const Module& w = p.defect().module;
  for (const auto& x : battery) {
    HomSpace ha(p.a(), x), hi(p.parts.image, x), hw(w, x);
    const Subquotient& f0 = r.f0.functor->eval(x).space;
    const Subquotient& fx = p.functor->eval(x).space;
    const Subquotient& f1 = r.f1.functor->eval(x).space;
    const Subquotient whole = Subquotient::quotient(hw.dim(), QMatrix(hw.dim(), 0));
    QMatrix alpha = induced_map(f0, fx, precompose(hi, ha, p.parts.epi.matrix()));
    QMatrix beta = induced_map(fx, whole, precompose(ha, hw, p.defect().inclusion.matrix()));
    QMatrix gamma = induced_map(whole, f1, QMatrix::identity(hw.dim()));
    FourTermCheck c;
    c.f0 = f0.dim();
    c.f = fx.dim();
    c.hom_w = hw.dim();
    c.f1 = f1.dim();
    c.exact = rank(alpha) == c.f0 && exact_at(alpha, beta) && exact_at(beta, gamma) && rank(gamma) == c.f1;
    c.stab_dim = bar->eval(x).dim();
    r.checks.push_back(c);
  }
  return r;
}

QSpace nat_hom(const FpPresentation& p, const FunctorPtr& g) {
  const FValue& ga = g->eval(p.a());
  QMatrix k = kernel(g->eval_map(p.f));
  return {k.cols(), ga.space.reps() * k, ga.ambient_tag};
}

EilenbergWatts eilenberg_watts(const FpPresentation& p, const std::vector<Module>& battery, Mode mode) {
  const AlgebraPtr& alg = p.a().algebra();
  const Side s = p.a().side();
  const Side t = opposite(s);
  Module lam = regular_module(alg, s);
  // Λ-linear endomorphisms of Λ are multiplications from the other side.
  std::vector<QMatrix> act;
  for (std::size_t i = 0; i < alg->dim(); ++i)
    act.push_back(p.functor->eval_map(ModuleMap::unchecked(lam, lam, alg->regular_action(t, i))));
  EilenbergWatts ew{Module::create(alg, t, act), {}};
  const std::size_t m = ew.f_lambda.dim();

  FunctorPtr pstab = projective_stabilization(p.functor, mode);
  for (const auto& x : battery) {
    const std::size_t n = x.dim();
    TensorProduct tp = s == Side::Left ? tensor_over_algebra(ew.f_lambda, x) : tensor_over_algebra(x, ew.f_lambda);
    const std::size_t target = p.functor->eval(x).dim();
    QMatrix amb(target, m * n);
    for (std::size_t k = 0; k < n; ++k) {
      // h_k : Λ → X, λ ↦ λ·x_k.
      QMatrix h(n, alg->dim());
      for (std::size_t i = 0; i < alg->dim(); ++i) h.set_block(0, i, x.action(i) * QMatrix::unit_column(n, k));
      QMatrix fh = p.functor->eval_map(ModuleMap::unchecked(lam, x, h));
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t col = s == Side::Left ? i * n + k : k * m + i;
        amb.set_block(0, col, fh.col(i));
      }
    }
    CounitCheck c;
    c.source = tp.dim();
    c.target = target;
    QMatrix counit = amb * tp.space.reps();
    // The ambient map must kill the relations v − reps·coords(v).
    c.well_defined = counit * tp.coords(QMatrix::identity(m * n)) == amb;
    const std::size_t r = rank(counit);
    c.f1 = c.source - r;
    c.f0 = c.target - r;
    c.proj_stab = pstab->eval(x).dim();
    ew.checks.push_back(c);
  }
  return ew;
}

}  // namespace stabcalc
