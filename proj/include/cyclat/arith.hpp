#pragma once

#include "cyclat/basics.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cyclat {

// Deterministic primality: Miller-Rabin with the 12-base certificate below
// 3.317e24, GMP's BPSW-based test above that range.
bool is_prime(const Int& n);

// Prime factorization by trial division (desk scale inputs).
std::vector<std::pair<Int, unsigned>> factor(const Int& n);

Int euler_phi(const Int& n);
int mobius(const Int& n);

// Divisors of n in increasing order.
std::vector<Int> divisors(const Int& n);

// Product of all primes <= x.
Int primorial(unsigned long x);

}  // namespace cyclat
