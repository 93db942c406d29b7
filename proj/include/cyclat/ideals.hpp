#pragma once

#include "cyclat/cyclo.hpp"
#include "cyclat/fractional_ideal.hpp"

#include <utility>

namespace cyclat::ideals {

// A totally split prime p = 1 mod m with the smallest root of Phi_m mod p
// and the HNF basis of P = (p, zeta - root) in the power basis.
struct SplitPrime {
    Int p;
    Int root_a;
    Int q;  // residue field size; equals p in the degree-1 case
    MatZ hnf_basis;
};

struct PrimeSearchStats {
    unsigned long candidates_tested = 0;
};

// Smallest prime p >= lower with p = 1 mod m, with its smallest Phi_m root.
// Throws ResourceError if no prime is found below `ceiling` (0 = default cap).
SplitPrime find_split_prime(const cyclo::CyclotomicField& field, const Int& lower,
                            const Int& ceiling = 0, PrimeSearchStats* stats = nullptr);

// Certified integer window [ceil(x/2), floor(x)] with x = (m^3 log m)^phi(m).
std::pair<Int, Int> siegel_walfisz_window(const Int& m);

// pi(x): evaluate the power-basis polynomial at root_a mod p.
// Rejects non-integral coordinates.
Int reduce_mod(const SplitPrime& P, const cyclo::FieldElement& x);

FractionalIdeal ideal_product(const cyclo::CyclotomicField& field, const FractionalIdeal& a,
                              const FractionalIdeal& b);

// A^{-1} = {x in K : x A <= O_K}; the product A * A^{-1} = O_K is verified.
FractionalIdeal ideal_inverse(const cyclo::CyclotomicField& field, const FractionalIdeal& a);

// Membership of a rational coordinate vector in the ideal lattice.
bool ideal_contains(const FractionalIdeal& a, const std::vector<Rat>& coords);

// Integer coordinates of `sub`'s basis in terms of `super`'s basis;
// throws FalsificationError when sub is not contained in super.
MatZ coords_in(const FractionalIdeal& sub, const FractionalIdeal& super);

// Rational Gram matrix of the ideal's basis under the trace form.
MatQ ideal_gram(const cyclo::CyclotomicField& field, const FractionalIdeal& a);

// Vol(A)^2 = N(A)^2 |d_K| as an exact rational.
Rat ideal_volume_sq(const cyclo::CyclotomicField& field, const FractionalIdeal& a);

}  // namespace cyclat::ideals
