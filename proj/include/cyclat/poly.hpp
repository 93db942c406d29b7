#pragma once

#include "cyclat/basics.hpp"

#include <vector>

namespace cyclat {

// Dense polynomial over Q, coeffs[i] is the coefficient of X^i.
// The zero polynomial is the empty vector; otherwise the leading
// coefficient is nonzero.
using QPoly = std::vector<Rat>;
using ZPoly = std::vector<Int>;

QPoly qpoly_from(const ZPoly& p);
void qpoly_trim(QPoly& p);
int qpoly_deg(const QPoly& p);  // -1 for zero

QPoly qpoly_add(const QPoly& a, const QPoly& b);
QPoly qpoly_sub(const QPoly& a, const QPoly& b);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_scale(const QPoly& a, const Rat& c);

// Division with remainder; b must be nonzero.
void qpoly_divrem(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem);

// Exact division: throws FalsificationError if the remainder is nonzero.
QPoly qpoly_divexact(const QPoly& a, const QPoly& b);

QPoly qpoly_derivative(const QPoly& a);
Rat qpoly_eval(const QPoly& a, const Rat& x);

// Monic gcd (1 for coprime, 0 only if both inputs are 0).
QPoly qpoly_gcd(QPoly a, QPoly b);

// Extended gcd: g = u*a + v*b with g monic (or zero).
void qpoly_extgcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& u, QPoly& v);

// Number of distinct real roots of p in the open interval (lo, hi),
// by Sturm's theorem. p must be nonzero; lo < hi; neither endpoint a root.
int sturm_count_roots(const QPoly& p, const Rat& lo, const Rat& hi);

// Phi_m by iterated exact division of X^m - 1 by Phi_d over proper divisors d.
ZPoly cyclotomic_poly(const Int& m);

// Evaluate an integer polynomial at x modulo n (n > 0).
Int zpoly_eval_mod(const ZPoly& p, const Int& x, const Int& n);

}  // namespace cyclat
