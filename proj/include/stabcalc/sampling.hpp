#pragma once

#include <random>

#include "stabcalc/fd_algebra.hpp"

namespace stabcalc {

using Rng = std::mt19937_64;

/// Small random integer in [-bound, bound].
int random_small(Rng& rng, int bound);
QMatrix random_vector(Rng& rng, std::size_t n, int bound = 3);

/// A random nonzero module of dimension ≤ max_dim: a quotient of a sum of
/// indecomposable projectives by a random cyclic submodule, a dual of such a
/// module, or a sum of two smaller ones.
Module random_module(const AlgebraPtr& a, Side s, Rng& rng, std::size_t max_dim);

/// Random element of Hom(M, N).
ModuleMap random_hom(const Module& m, const Module& n, Rng& rng);

struct ShortExact {
  ModuleMap f;  // B′ → B, mono
  ModuleMap g;  // B → B″, epi
};
/// 0 → B′ → B → B″ → 0 built from a random module and a random cyclic
/// submodule (occasionally a split sequence).
ShortExact random_ses(const AlgebraPtr& a, Side s, Rng& rng, std::size_t max_dim);

/// Checks mono, epi, g∘f = 0 and exactness in the middle.
bool is_short_exact(const ModuleMap& f, const ModuleMap& g);

}  // namespace stabcalc
