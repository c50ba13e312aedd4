#pragma once

#include <vector>

#include "stabcalc/functor.hpp"
#include "stabcalc/sampling.hpp"

namespace stabcalc {

/// F = Coker((B, −) → (A, −)) for f : A → B, with the pieces of f cached.
struct FpPresentation {
  ModuleMap f;
  MapFactorization parts;  // w(F) = Ker f, Im f with p and i, Coker f
  FunctorPtr functor;

  const Module& a() const { return f.domain(); }
  const Module& b() const { return f.codomain(); }
  const Submodule& defect() const { return parts.kernel; }
};

FpPresentation fp_presentation(const ModuleMap& f);

/// A ⊗ − presented by ∂* : P_0* → P_1* for a projective presentation
/// P_1 → P_0 → A of the right module A.
FpPresentation tensor_presentation(const Module& a, Mode mode = Mode::Minimal);

/// Indecomposable projectives and injectives, simples, then `random_count`
/// random modules of dim ≤ max_dim. Duplicates (equal content) are dropped.
std::vector<Module> test_battery(const AlgebraPtr& alg, Side s, Rng& rng, std::size_t random_count = 3,
                                 std::size_t max_dim = 5);

/// f between random modules; with `projective_ends` both ends are sums of
/// indecomposable projectives, which makes F right exact.
FpPresentation random_fp(const AlgebraPtr& alg, Side s, Rng& rng, std::size_t max_dim = 4,
                         bool projective_ends = false);

struct DefectReport {
  Module defect;
  bool stable = false;                  // w(F) = 0
  bool vanishes_on_injectives = false;  // F(I) = 0 for each indecomposable injective
};
DefectReport defect_and_stability(const FpPresentation& p);

/// R⁰F(X) two ways: Hom(w(F), X) and Ker F(I⁰ → I¹).
struct R0Check {
  std::size_t hom_dim = 0;
  std::size_t r0_dim = 0;
  bool agree() const { return hom_dim == r0_dim; }
};
R0Check r0_check(const FpPresentation& p, const Module& x, Mode mode = Mode::Minimal);

/// 0 → F₀(X) → F(X) → Hom(w(F), X) → F₁(X) → 0 at one module.
struct FourTermCheck {
  std::size_t f0 = 0, f = 0, hom_w = 0, f1 = 0;
  bool exact = false;
  std::size_t stab_dim = 0;  // F̄(X) computed as Ker F(ι)
};
struct StabResolution {
  FpPresentation f0;  // (B, −) → (Im f, −) → F₀ → 0
  FpPresentation f1;  // (A, −) → (w(F), −) → F₁ → 0
  std::vector<FourTermCheck> checks;

  bool all_exact() const;
  bool f0_is_stabilization() const;
};
StabResolution stab_resolution(const FpPresentation& p, const std::vector<Module>& battery, Mode mode = Mode::Minimal);

/// Nat(F, G) = Ker(G(f) : G(A) → G(B)), as a subspace of G(A).
QSpace nat_hom(const FpPresentation& p, const FunctorPtr& g);

struct CounitCheck {
  std::size_t source = 0;     // dim X ⊗ F(Λ) (or F(Λ) ⊗ X)
  std::size_t target = 0;     // dim F(X)
  std::size_t f0 = 0, f1 = 0; // coker, ker
  std::size_t proj_stab = 0;  // Coker F(P(X) → X)
  bool well_defined = false;
  bool iso() const { return f0 == 0 && f1 == 0; }
};
/// F(Λ) with the Λ-action of the other side through F applied to
/// multiplications, and the counit − ⊗ F(Λ) → F checked on each module.
struct EilenbergWatts {
  Module f_lambda;
  std::vector<CounitCheck> checks;
};
EilenbergWatts eilenberg_watts(const FpPresentation& p, const std::vector<Module>& battery, Mode mode = Mode::Minimal);

}  // namespace stabcalc
