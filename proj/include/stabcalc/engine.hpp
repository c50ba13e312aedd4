#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stabcalc/functor.hpp"

namespace stabcalc {

/// Raised when two computations that must agree do not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class StabRoute { Definition, Transpose, SatelliteOfTor, All };
const char* to_string(StabRoute r);

/// A ⊗̄ B for A right, B left.
struct TensorStab {
  std::size_t dim = 0;
  std::vector<std::pair<StabRoute, std::size_t>> routes;  // per computed route
  /// Route definition only: the subspace Ker(A ⊗ ι) in A ⊗ B quotient
  /// coordinates, and that tensor space.
  QMatrix subspace;
  Subquotient tensor;
};

/// With route All every route is computed and a disagreement throws
/// ConsistencyError.
TensorStab tensor_stab(const Module& a, const Module& b, StabRoute route = StabRoute::All, Mode mode = Mode::Minimal);

/// Ker(e_A : A → A**) with its module structure.
struct Torsion {
  Submodule torsion;
  /// Agreement with A ⊗̄ Λ ⊆ A ⊗ Λ ≅ A (same subspace, not just dimension).
  bool matches_tensor_stab = false;
};
Torsion torsion_submodule(const Module& a, Mode mode = Mode::Minimal);

/// Rⁿ(A ⊗ −)(B) from an injective resolution of B, with Extⁿ(A*, B) beside it.
struct RnTensor {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::size_t ext_dim = 0;
};
/// Throws ConsistencyError on mismatch.
RnTensor rn_tensor(const Module& a, const Module& b, std::size_t n, Mode mode = Mode::Minimal);

/// F(ι : C → I(C)) is injective.
bool property_a_check(const FunctorPtr& f, const Module& c, Mode mode = Mode::Minimal);

/// 0 → X′ → X → X″ → 0 with injective hulls glued by the horseshoe lemma.
struct Horseshoe {
  ModuleMap f, g;                   // the input sequence
  ModuleMap iota1, iota, iota2;     // X′ → I′, X → I′ ⊕ I″, X″ → I″
  ModuleMap inj1, proj1, proj2;     // I′ ⇄ I′ ⊕ I″ → I″
  ModuleMap pi1, pi, pi2;           // onto ΣX′, ΣX, ΣX″
  ModuleMap next_f, next_g;         // 0 → ΣX′ → ΣX → ΣX″ → 0
};
Horseshoe horseshoe(const ModuleMap& f, const ModuleMap& g, Mode mode = Mode::Minimal);

struct SpliceTerm {
  std::string label;
  std::size_t dim = 0;
};
struct SpliceVerdict {
  std::size_t position = 0;  // index into terms
  bool complex = false;
  bool exact = false;
};
/// Tor_r(A,B′) → Tor_r(A,B) → Tor_r(A,B″) → ... → Tor_1(A,B″) → A⊗̄B′ → A⊗̄B
/// → A⊗̄B″ → A⊗̄ΣB′ → ... → A⊗̄Σ^{s-1}B″.
struct SpliceSequence {
  std::vector<SpliceTerm> terms;
  std::vector<QMatrix> maps;  // maps[i] : terms[i] → terms[i+1]
  std::vector<SpliceVerdict> verdicts;

  bool all_complex() const;
  bool all_exact() const;
};
/// Throws std::invalid_argument when (f, g) is not short exact.
SpliceSequence splice_sequence(const Module& a, const ModuleMap& f, const ModuleMap& g, std::size_t tor_rows = 2,
                               std::size_t sigma_rows = 3, Mode mode = Mode::Minimal);

/// D(A ⊗̄ B) ≅ Hom(B, D A) modulo injectives, with the pairing that
/// realizes the isomorphism.
struct DualityCheck {
  std::size_t lhs_dim = 0;
  std::size_t rhs_dim = 0;
  QMatrix witness;             // dim A⊗̄B × dim Hom(B, DA)
  bool witness_is_iso = false; // onto with kernel the maps through injectives
};
/// Throws ConsistencyError on a mismatch.
DualityCheck duality_check(const Module& a, const Module& b, Mode mode = Mode::Minimal);

/// F̄(B′) → F̄(B) → F̄(B″) for F = A ⊗ −.
struct HalfExactness {
  bool exact_in_middle = false;
  bool epi_preserved = false;
  /// Property A of ΣB′ (the obstruction in the right-exactness argument).
  bool sigma_prime_has_a = false;
};
HalfExactness half_exactness(const Module& a, const ModuleMap& f, const ModuleMap& g, Mode mode = Mode::Minimal);

}  // namespace stabcalc
