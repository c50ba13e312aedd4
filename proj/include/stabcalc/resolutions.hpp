#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stabcalc/fd_algebra.hpp"

namespace stabcalc {

/// P_n → ... → P_1 → P_0 → M → 0, built by iterated covers of syzygies.
struct ProjectiveResolution {
  Module module;
  Mode mode = Mode::Minimal;
  std::vector<Module> terms;              // P_0 .. P_n
  std::vector<ModuleMap> differentials;   // differentials[i-1] = d_i : P_i → P_{i-1}, i = 1..n
  ModuleMap augmentation;                 // P_0 → M
  std::vector<Module> syzygies;           // syzygies[i] = Ω^i M, i = 0..n (Ω^0 = M)
  std::vector<ModuleMap> syzygy_inclusions;  // [i-1] : Ω^i → P_{i-1}, i = 1..n
  std::vector<ModuleMap> syzygy_covers;      // [i] : P_i → Ω^i, i = 0..n

  std::size_t length() const { return terms.size() - 1; }
  /// d_i for i ≥ 1; d_0 is the augmentation.
  const ModuleMap& d(std::size_t i) const { return differentials.at(i - 1); }
};

/// 0 → B → I^0 → I^1 → ... → I^n, built by iterated envelopes of cosyzygies.
struct InjectiveResolution {
  Module module;
  Mode mode = Mode::Minimal;
  std::vector<Module> terms;                // I^0 .. I^n
  std::vector<ModuleMap> differentials;     // differentials[j] = d^j : I^j → I^{j+1}, j = 0..n-1
  ModuleMap coaugmentation;                 // B → I^0
  std::vector<Module> cosyzygies;           // cosyzygies[j] = Σ^j B, j = 0..n (Σ^0 = B)
  std::vector<ModuleMap> cosyzygy_projections;  // [j-1] : I^{j-1} → Σ^j, j = 1..n
  std::vector<ModuleMap> cosyzygy_embeddings;   // [j] : Σ^j → I^j, j = 0..n

  std::size_t length() const { return terms.size() - 1; }
};

/// Cached per (module content, mode) and extended on demand.
ProjectiveResolution resolve_projective(const Module& m, std::size_t length, Mode mode = Mode::Minimal);
InjectiveResolution resolve_injective(const Module& b, std::size_t length, Mode mode = Mode::Minimal);

/// Ω^j M with its inclusion into P_{j-1}; Σ^j B with the projection from I^{j-1}.
Module syzygy(const Module& m, std::size_t j, Mode mode = Mode::Minimal);
Module cosyzygy(const Module& b, std::size_t j, Mode mode = Mode::Minimal);

/// 0 → A* → P_0* → P_1* → Tr A → 0 from a projective presentation
/// P_1 → P_0 → A → 0.
struct TransposeResult {
  Module input;
  Module tr;  // opposite side
  StarModule a_star, p0_star, p1_star;
  ModuleMap pi_star;      // A* → P_0*
  ModuleMap d_star;       // P_0* → P_1*
  ModuleMap projection;   // P_1* → Tr A
  bool four_term_exact = false;
};
TransposeResult transpose(const Module& a, Mode mode = Mode::Minimal);

class LiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A chain map between resolutions extending f; components[i] : P_i → Q_i
/// (or I^i → J^i).
struct ChainMap {
  std::vector<ModuleMap> components;
};

/// With perturb_seed set, a random element of the homogeneous solution space
/// is added at every degree, giving a different (homotopic) lift.
struct LiftOptions {
  std::optional<std::uint64_t> perturb_seed;
};

ChainMap lift_map(const ModuleMap& f, const ProjectiveResolution& source, const ProjectiveResolution& target,
                  std::size_t degree, const LiftOptions& opts = {});
ChainMap lift_map(const ModuleMap& f, const InjectiveResolution& source, const InjectiveResolution& target,
                  std::size_t degree, const LiftOptions& opts = {});

/// All X in Hom(from, to) with left ∘ X ∘ right = target: a particular
/// solution plus a basis of the homogeneous solutions.
struct HomSolutions {
  ModuleMap particular;
  std::vector<ModuleMap> homogeneous;
};
std::optional<HomSolutions> solve_hom_all(const HomSpace& hom, const QMatrix& left, const QMatrix& right,
                                          const QMatrix& target);

/// Exactness of M --f--> N --g--> K at N (g∘f = 0 and rank bookkeeping).
bool exact_at(const QMatrix& f, const QMatrix& g);

}  // namespace stabcalc
