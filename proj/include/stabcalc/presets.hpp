#pragma once

#include "stabcalc/fd_algebra.hpp"

namespace stabcalc {

/// Λ as a module over itself.
Module preset_regular(const AlgebraPtr& a, Side s);
/// top of the index-th indecomposable projective.
Module preset_simple_top(const AlgebraPtr& a, Side s, std::size_t index = 0);
/// Λ / rad^j Λ.
Module preset_radical_layer(const AlgebraPtr& a, Side s, std::size_t j);
/// rad^j Λ.
Module preset_radical_power(const AlgebraPtr& a, Side s, std::size_t j);
/// D(Λ) on the requested side (the dual of the regular module of the other side).
Module preset_dual_regular(const AlgebraPtr& a, Side s);

}  // namespace stabcalc
