#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stabcalc/module.hpp"

namespace stabcalc {

/// Minimal covers/envelopes via idempotents and radical/socle matching, or
/// the free fallback (Λ^g → M and M ↪ D(Λ)^m).
enum class Mode { Minimal, Free };
inline const char* to_string(Mode m) { return m == Mode::Minimal ? "minimal" : "free"; }

/// Basis of Hom_Λ(M, N) with coordinate extraction.
class HomSpace {
 public:
  HomSpace(Module m, Module n);

  std::size_t dim() const { return basis_.size(); }
  const Module& source() const { return m_; }
  const Module& target() const { return n_; }
  const std::vector<ModuleMap>& basis() const { return basis_; }
  /// Σ c_k basis_k for a dim × 1 coefficient column.
  ModuleMap element(const QMatrix& coeffs) const;
  /// Coefficients of a Λ-map given by its matrix (dim × 1).
  QMatrix coords(const QMatrix& matrix) const;
  /// Matrix with the flattened basis maps as columns (row-major flattening).
  QMatrix flattened() const;

 private:
  Module m_, n_;
  std::vector<ModuleMap> basis_;
  Coordinates tuple_coords_;
};

std::vector<ModuleMap> hom_space(const Module& m, const Module& n);

struct Submodule {
  Module module;
  ModuleMap inclusion;
};
struct QuotientModule {
  Module module;
  ModuleMap projection;
  Subquotient space;
};
struct DirectSum {
  Module module;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};

/// Smallest submodule containing the given columns; basis is canonical.
Submodule submodule(const Module& m, const QMatrix& vectors);
QuotientModule quotient(const Module& m, const QMatrix& sub_vectors);
DirectSum direct_sum(const std::vector<Module>& parts);
DirectSum direct_sum(const std::vector<Module>& parts, const AlgebraPtr& algebra, Side side);

struct MapFactorization {
  Submodule kernel;
  Module image;
  ModuleMap epi;   // p : domain → image
  ModuleMap mono;  // i : image → codomain
  QuotientModule cokernel;
};
MapFactorization map_factorization(const ModuleMap& f);

/// Linear dual with the side flipped; action matrices are transposed.
Module dual_module(const Module& m);
ModuleMap dual_map(const ModuleMap& f);

struct RadicalSocle {
  Submodule radical;
  Submodule socle;
};
RadicalSocle radical_socle(const Module& m);
QuotientModule top(const Module& m);

Module regular_module(const AlgebraPtr& a, Side s);
/// Λe (left) or eΛ (right) for an idempotent e, as a submodule of the
/// regular module; its generator is e itself.
Submodule idempotent_projective(const AlgebraPtr& a, Side s, const QMatrix& e);
std::vector<Module> indecomposable_projectives(const AlgebraPtr& a, Side s);
std::vector<Module> indecomposable_injectives(const AlgebraPtr& a, Side s);
std::vector<Module> simple_modules(const AlgebraPtr& a, Side s);

struct ProjectiveCover {
  Module projective;
  ModuleMap cover;  // onto M
};
struct InjectiveEnvelope {
  Module injective;
  ModuleMap embedding;  // from M
};

/// Cached per (module content, mode); safe for concurrent callers.
ProjectiveCover projective_cover(const Module& m, Mode mode = Mode::Minimal);
InjectiveEnvelope injective_envelope(const Module& m, Mode mode = Mode::Minimal);

/// Splitting tests against the free cover / cofree envelope.
bool is_projective(const Module& m);
bool is_injective(const Module& m);

/// M* = Hom_Λ(M, Λ) as a module of the opposite side, with the hom basis.
struct StarModule {
  Module module;
  HomSpace hom;
};
StarModule star(const Module& m);
/// f* : N* → M* for f : M → N.
ModuleMap star_map(const ModuleMap& f, const StarModule& m_star, const StarModule& n_star);

/// Probabilistic isomorphism test (generic element of Hom(M, N)); a true
/// answer is always correct.
bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 7);
/// The isomorphism found by the same search.
std::optional<ModuleMap> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed = 7);

/// Solves for an X in Hom(from, to) with left ∘ X ∘ right = target, where
/// left : to → T and right : S → from; returns nullopt when none exists.
std::optional<ModuleMap> solve_hom(const HomSpace& hom, const QMatrix& left, const QMatrix& right,
                                   const QMatrix& target);

}  // namespace stabcalc
