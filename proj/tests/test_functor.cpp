#include "doctest.h"
#include "stabcalc/functor.hpp"
#include "stabcalc/presets.hpp"
#include "stabcalc/sampling.hpp"

using namespace stabcalc;

namespace {

std::vector<AlgebraPtr> algebras() {
  return {truncated_polynomial(2), truncated_polynomial(3), upper_triangular_2(),
          product_algebra(truncated_polynomial(2), upper_triangular_2())};
}

struct Fixture {
  AlgebraPtr a = truncated_polynomial(2);
  Module kr = preset_simple_top(a, Side::Right);
  Module kl = preset_simple_top(a, Side::Left);
  Module lam = regular_module(a, Side::Left);
};

// Functors over alg acting on left modules, of every kind.
std::vector<FunctorPtr> sample_functors(const AlgebraPtr& alg, Rng& rng) {
  Module x = random_module(alg, Side::Right, rng, 3);
  Module y = random_module(alg, Side::Left, rng, 3);
  Module z = random_module(alg, Side::Left, rng, 3);
  FunctorPtr t = tensor_functor(x);
  return {t,
          hom_functor(y),
          fp_functor(random_hom(y, z, rng)),
          derived_tor_functor(x, 1),
          injective_stabilization(t),
          projective_stabilization(t),
          satellite(t, Direction::Right),
          satellite(t, Direction::Left),
          cosatellite(t, Direction::Right),
          cosatellite(t, Direction::Left)};
}

}  // namespace

TEST_CASE("injective stabilization examples") {
  Fixture f;
  FunctorPtr t = tensor_functor(f.kr);
  FunctorPtr bar = injective_stabilization(t);
  CHECK(bar->eval(f.kl).dim() == 1);
  CHECK(bar->eval(f.lam).dim() == 0);
  CHECK(injective_stabilization(hom_functor(f.kl))->eval(f.kl).dim() == 0);
  CHECK(injective_stabilization(tensor_functor(regular_module(f.a, Side::Right)))->eval(f.kl).dim() == 0);
  // route definition: literally Ker F(ι), here all of k ⊗ k.
  CHECK(bar->eval(f.kl).space.reps() == t->eval(f.kl).space.sub().basis());
}

TEST_CASE("projective stabilization examples") {
  Fixture f;
  FunctorPtr ph = projective_stabilization(hom_functor(f.kl));
  CHECK(ph->eval(f.kl).dim() == 1);
  CHECK(ph->eval(f.kl).dim() == stable_hom(f.kl, f.kl, StableMode::ModProjectives).dim());
  CHECK(ph->eval(f.lam).dim() == 0);
  CHECK(ph->eval(f.kl).dim() == tor_n(transpose(f.kl).tr, f.kl, 1).dim());
}

TEST_CASE("satellite examples") {
  Fixture f;
  FunctorPtr tor1 = derived_tor_functor(f.kr, 1);
  CHECK(satellite(tor1, Direction::Right)->eval(f.kl).dim() == 1);
  FunctorPtr t = tensor_functor(f.kr);
  CHECK(satellite(t, Direction::Right)->eval(f.lam).dim() == 0);
  CHECK(satellite(t, Direction::Left)->eval(f.lam).dim() == 0);
  CHECK(cosatellite(t, Direction::Right)->eval(f.kl).dim() == 0);
  // Im ρ = dim k⊗k − dim F̄(k).
  CHECK(cosatellite(t, Direction::Right)->eval(f.kl).dim() ==
        t->eval(f.kl).dim() - injective_stabilization(t)->eval(f.kl).dim());
  // S₁(k ⊗ −) = Tor₁(k, −).
  CHECK(satellite(t, Direction::Left)->eval(f.kl).dim() == tor_n(f.kr, f.kl, 1).dim());
}

TEST_CASE("functor laws on random samples") {
  Rng rng(2024);
  for (const auto& alg : algebras())
    for (const auto& fun : sample_functors(alg, rng)) {
      CAPTURE(fun->describe());
      Module m = random_module(alg, Side::Left, rng, 3);
      Module n = random_module(alg, Side::Left, rng, 3);
      Module p = random_module(alg, Side::Left, rng, 3);
      ModuleMap h = random_hom(m, n, rng), g = random_hom(n, p, rng);
      CHECK(fun->eval_map(ModuleMap::identity(m)) == QMatrix::identity(fun->eval(m).dim()));
      CHECK(fun->eval_map(compose(g, h)) == fun->eval_map(g) * fun->eval_map(h));
      // Lift choices do not matter.
      CHECK(fun->eval_map(g, LiftOptions{rng()}) == fun->eval_map(g));
      // Additivity.
      DirectSum s = direct_sum({m, n});
      CHECK(fun->eval(s.module).dim() == fun->eval(m).dim() + fun->eval(n).dim());
      QMatrix e = fun->eval_map(compose(s.injections[0], s.projections[0])) +
                  fun->eval_map(compose(s.injections[1], s.projections[1]));
      CHECK(e == QMatrix::identity(fun->eval(s.module).dim()));
    }
}

TEST_CASE("satellites vanish where they should") {
  Rng rng(5);
  for (const auto& alg : algebras())
    for (const auto& fun : sample_functors(alg, rng)) {
      if (fun->depth() >= Functor::kMaxDepth) continue;
      for (const auto& inj : indecomposable_injectives(alg, Side::Left)) {
        CHECK(satellite(fun, Direction::Right)->eval(inj).dim() == 0);
        CHECK(injective_stabilization(fun)->eval(inj).dim() == 0);
      }
      for (const auto& proj : indecomposable_projectives(alg, Side::Left)) {
        CHECK(satellite(fun, Direction::Left)->eval(proj).dim() == 0);
        CHECK(projective_stabilization(fun)->eval(proj).dim() == 0);
      }
    }
}

TEST_CASE("stabilization is idempotent and choice independent") {
  Rng rng(66);
  for (const auto& alg : algebras()) {
    Module x = random_module(alg, Side::Right, rng, 4);
    FunctorPtr t = tensor_functor(x);
    FunctorPtr once = injective_stabilization(t);
    FunctorPtr twice = injective_stabilization(once);
    FunctorPtr free_env = injective_stabilization(t, Mode::Free);
    for (int k = 0; k < 3; ++k) {
      Module b = random_module(alg, Side::Left, rng, 4);
      const QMatrix& r1 = once->eval(b).space.reps();
      CHECK(r1 == free_env->eval(b).space.reps());
      QMatrix r2 = r1 * twice->eval(b).space.reps();
      CHECK(same_span(r1, r2));
      CHECK(twice->eval(b).dim() == once->eval(b).dim());
    }
  }
}

TEST_CASE("memoized values share one basis") {
  Fixture f;
  FunctorPtr t = tensor_functor(f.kr);
  const FValue& v1 = t->eval(f.kl);
  Module copy = Module::create(f.a, Side::Left, f.kl.actions());
  const FValue& v2 = t->eval(copy);
  CHECK(&v1 == &v2);
}

TEST_CASE("nesting depth is bounded") {
  Fixture f;
  FunctorPtr g = tensor_functor(f.kr);
  for (int i = 0; i < Functor::kMaxDepth; ++i) g = injective_stabilization(g);
  CHECK(g->depth() == Functor::kMaxDepth);
  CHECK_THROWS_AS(satellite(g, Direction::Right), FunctorDepthError);
  CHECK_THROWS_AS(tensor_functor(f.kr)->eval(f.kr), ModuleError);
}

TEST_CASE("S1 of S_1 recovers the stabilization of half exact functors") {
  Rng rng(90);
  for (const auto& alg : algebras()) {
    Module x = random_module(alg, Side::Right, rng, 4);
    FunctorPtr t = tensor_functor(x);
    FunctorPtr s = satellite(satellite(t, Direction::Left), Direction::Right);
    FunctorPtr bar = injective_stabilization(t);
    for (int k = 0; k < 3; ++k) {
      Module b = random_module(alg, Side::Left, rng, 4);
      CHECK(s->eval(b).dim() == bar->eval(b).dim());
    }
  }
}
