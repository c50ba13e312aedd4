#pragma once

#include <vector>

#include "stabcalc/matrix.hpp"

namespace stabcalc {

struct SnfResult {
  ZMatrix S;  // diagonal, d1 | d2 | ... | dr > 0 followed by zeros
  ZMatrix U;  // unimodular, rows × rows
  ZMatrix V;  // unimodular, cols × cols
  std::vector<Integer> invariant_factors;
};

/// Smith normal form with U·A·V = S. The pivot is the nonzero entry of least
/// absolute value, ties broken by (row, col) order.
/// With include_units = false, invariant factors equal to 1 are dropped.
SnfResult snf(const ZMatrix& a, bool include_units = true);

/// Exact integer determinant (Bareiss).
Integer determinant(const ZMatrix& a);

}  // namespace stabcalc
