#pragma once

#include <optional>
#include <vector>

#include "stabcalc/matrix.hpp"

namespace stabcalc::poly {

/// Dense polynomial over Q, coefficients from the constant term upward.
/// The zero polynomial is the empty vector.
using Poly = std::vector<Rational>;

void trim(Poly& p);
int degree(const Poly& p);
Poly mul(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Returns (g, s, t) with s·a + t·b = g, g monic.
struct ExtGcd {
  Poly g, s, t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

/// Rational roots in increasing order. Gives up (returns nullopt) when the
/// integer-normalised leading or constant coefficient is too large to
/// enumerate divisors.
std::optional<std::vector<Rational>> rational_roots(const Poly& p);

}  // namespace stabcalc::poly
