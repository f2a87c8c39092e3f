#pragma once

// Dense polynomials over a FiniteField, coefficients low to high, with no
// trailing zeros after trim().

#include <vector>

#include "hypcount/field.hpp"

namespace hypcount::kpoly {

using Elem = FiniteField::Elem;
using Poly = std::vector<Elem>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for zero
Poly add(const FiniteField& k, const Poly& a, const Poly& b);
Poly mul(const FiniteField& k, const Poly& a, const Poly& b);
Poly scale(const FiniteField& k, const Poly& a, Elem c);
Poly derivative(const FiniteField& k, const Poly& a);
/// Remainder of a modulo nonzero b.
Poly mod(const FiniteField& k, Poly a, const Poly& b);
Poly gcd(const FiniteField& k, Poly a, Poly b);
bool divides(const FiniteField& k, const Poly& d, const Poly& a);
/// Square-free test via gcd(f, f'); constants count as square-free.
bool square_free(const FiniteField& k, const Poly& f);
bool irreducible(const FiniteField& k, const Poly& f);
/// Coefficient i, zero past the end.
inline Elem coeff(const Poly& a, std::size_t i) { return i < a.size() ? a[i] : 0; }

/// All polynomials of degree < len, coefficient vectors in lexicographic
/// order of their base-q encodings (untrimmed, length len).
std::vector<Poly> all_of_length(const FiniteField& k, unsigned len);
/// Monic polynomials of degree exactly d.
std::vector<Poly> monic_of_degree(const FiniteField& k, unsigned d);

}  // namespace hypcount::kpoly
