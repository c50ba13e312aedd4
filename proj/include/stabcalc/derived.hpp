#pragma once

#include "stabcalc/resolutions.hpp"

namespace stabcalc {

/// A ⊗_Λ B = (A ⊗_Q B) / span{aλ ⊗ b − a ⊗ λb}. Ambient index of a_i ⊗ b_k
/// is i·dim B + k.
struct TensorProduct {
  Module a;  // right
  Module b;  // left
  Subquotient space;

  std::size_t dim() const { return space.dim(); }
  /// Quotient coordinates of ambient vectors.
  QMatrix coords(const QMatrix& ambient) const { return space.coords(ambient); }
};

/// Throws ModuleError unless a is a right and b a left module over one algebra.
TensorProduct tensor_over_algebra(const Module& a, const Module& b);
/// Matrix of f ⊗ g : from → to in quotient coordinates.
QMatrix tensor_map(const TensorProduct& from, const TensorProduct& to, const QMatrix& f, const QMatrix& g);

enum class TorRoute { ResolveFirst, ResolveSecond };

/// Tor_n(A, B) as homology of P_• ⊗ B (P_• → A) or of A ⊗ Q_• (Q_• → B).
/// chain[i] = P_i ⊗ B (or A ⊗ Q_i) for i = 0..n, and chain[n+1] = Ω^{n+1} ⊗ B,
/// which has the same image in chain[n] as P_{n+1} ⊗ B; boundary[i] : chain[i] → chain[i-1].
struct TorGroup {
  std::size_t n = 0;
  TorRoute route = TorRoute::ResolveFirst;
  ProjectiveResolution resolution;
  std::vector<TensorProduct> chain;
  std::vector<QMatrix> boundary;  // boundary[0] unused (empty)
  Subquotient homology;           // inside chain[n] coordinates

  std::size_t dim() const { return homology.dim(); }
};

TorGroup tor_n(const Module& a, const Module& b, std::size_t n, TorRoute route = TorRoute::ResolveFirst,
               Mode mode = Mode::Minimal);
/// Tor_n(A, g) for g : B → B′ (ResolveFirst) or Tor_n(g, B) (ResolveSecond);
/// both groups must come from the same resolution.
QMatrix tor_map(const TorGroup& from, const TorGroup& to, const ModuleMap& g);
/// Connecting map Tor_n(A, B″) → Tor_{n-1}(A, B′) of 0 → B′ → B → B″ → 0
/// for n ≥ 2 (snake recipe: rref particular solutions for the preimages).
QMatrix tor_connecting(const TorGroup& from, const TorGroup& to, const TorGroup& middle, const ModuleMap& f,
                       const ModuleMap& g);
/// Connecting map Tor_1(A, B″) → A ⊗ B′ in quotient coordinates of `target`.
QMatrix tor_connecting_0(const TorGroup& from, const TensorProduct& target, const TorGroup& middle,
                         const ModuleMap& f, const ModuleMap& g);

/// Ext^n(M, N) as cohomology of Hom(P_•, N).
struct ExtGroup {
  std::size_t n = 0;
  ProjectiveResolution resolution;
  std::vector<HomSpace> cochain;  // Hom(P_i, N), i = 0..n
  Subquotient cohomology;         // inside cochain[n] coordinates

  std::size_t dim() const { return cohomology.dim(); }
};

ExtGroup ext_n(const Module& m, const Module& n, std::size_t degree, Mode mode = Mode::Minimal);
/// Ext^n(M, g) for g : N → N′.
QMatrix ext_map(const ExtGroup& from, const ExtGroup& to, const ModuleMap& g);

enum class StableMode { ModInjectives, ModProjectives };

/// Hom(B, C) modulo maps factoring through injectives (or projectives).
struct StableHom {
  HomSpace hom;
  QMatrix factoring;  // hom coordinates spanning the maps that factor
  Subquotient space;  // Q^{dim hom} / factoring

  std::size_t dim() const { return space.dim(); }
};

StableHom stable_hom(const Module& b, const Module& c, StableMode mode, Mode cover_mode = Mode::Minimal);

}  // namespace stabcalc
