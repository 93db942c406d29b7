#include "cyclat/ideals.hpp"

#include "cyclat/arith.hpp"
#include "cyclat/interval.hpp"

#include <algorithm>

namespace cyclat::ideals {

FractionalIdeal ideal_from_rows(const MatQ& rows) {
    Int d = 1;
    for (size_t i = 0; i < rows.rows(); ++i)
        for (size_t j = 0; j < rows.cols(); ++j)
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), rows(i, j).get_den().get_mpz_t());
    MatZ scaled(rows.rows(), rows.cols(), Int(0));
    for (size_t i = 0; i < rows.rows(); ++i)
        for (size_t j = 0; j < rows.cols(); ++j) {
            Rat v = rows(i, j) * Rat(d);
            scaled(i, j) = v.get_num();
        }
    MatZ h = hnf(scaled);
    // Normalize the common content against the denominator.
    Int g = d;
    for (size_t i = 0; i < h.rows(); ++i)
        for (size_t j = 0; j < h.cols(); ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h(i, j).get_mpz_t());
    if (g > 1) {
        for (size_t i = 0; i < h.rows(); ++i)
            for (size_t j = 0; j < h.cols(); ++j) h(i, j) /= g;
        d /= g;
    }
    return FractionalIdeal{h, d};
}

namespace {

// Smallest root of Phi_m mod p. Exists because p = 1 mod m splits totally.
Int smallest_phi_root(const cyclo::CyclotomicField& field, const Int& p) {
    const Int& m = field.m();
    if (p < (1 << 20)) {
        for (Int x = 0; x < p; ++x) {
            if (zpoly_eval_mod(field.cyclo_poly(), x, p) == 0) return x;
        }
        throw FalsificationError("no root of Phi_m mod p although p = 1 mod m");
    }
    // Roots are exactly the elements of multiplicative order m; find one via
    // c^((p-1)/m) and enumerate its primitive powers.
    Int exponent = (p - 1) / m;
    auto prime_factors = factor(m);
    for (Int c = 2; c < p; ++c) {
        Int b;
        mpz_powm(b.get_mpz_t(), c.get_mpz_t(), exponent.get_mpz_t(), p.get_mpz_t());
        if (b == 1) continue;
        bool order_m = true;
        for (const auto& [l, e] : prime_factors) {
            Int sub = m / l;
            Int t;
            mpz_powm(t.get_mpz_t(), b.get_mpz_t(), sub.get_mpz_t(), p.get_mpz_t());
            if (t == 1) {
                order_m = false;
                break;
            }
        }
        if (!order_m) continue;
        Int best = 0;
        Int pw = 1;
        for (Int j = 1; j < m; ++j) {
            pw = (pw * b) % p;
            Int g;
            mpz_gcd(g.get_mpz_t(), j.get_mpz_t(), m.get_mpz_t());
            if (g != 1) continue;
            if (best == 0 || pw < best) best = pw;
        }
        return best;
    }
    throw FalsificationError("no element of order m mod p although p = 1 mod m");
}

}  // namespace

SplitPrime find_split_prime(const cyclo::CyclotomicField& field, const Int& lower,
                            const Int& ceiling, PrimeSearchStats* stats) {
    if (lower < 2) throw PreconditionError("find_split_prime: lower must be >= 2");
    const Int& m = field.m();
    Int cap = (ceiling > 0) ? ceiling : lower + Int(1000000) * m;
    // First candidate >= lower that is 1 mod m.
    Int p = lower + ((1 - lower) % m + m) % m;
    for (; p <= cap; p += m) {
        if (stats) ++stats->candidates_tested;
        if (!is_prime(p)) continue;
        Int a = smallest_phi_root(field, p);
        unsigned phi = field.phi();
        // P = p O_K + (zeta - a) O_K
        MatZ stack(2 * phi, phi, Int(0));
        for (unsigned i = 0; i < phi; ++i) stack(i, i) = p;
        cyclo::FieldElement gen = field.sub(field.zeta_power(Int(1)),
                                            field.scale(field.one(), Rat(a)));
        cyclo::FieldElement cur = gen;
        for (unsigned k = 0; k < phi; ++k) {
            for (unsigned j = 0; j < phi; ++j) stack(phi + k, j) = cur.coords[j].get_num();
            if (k + 1 < phi) cur = field.mul(cur, field.zeta_power(Int(1)));
        }
        MatZ h = hnf(stack);
        if (h.rows() != phi) throw FalsificationError("splitprime: HNF not full rank");
        Int idx = det(h);
        if (abs(idx) != p)
            throw FalsificationError("split prime index " + to_string(idx) + " != p");
        return SplitPrime{p, a, p, h};
    }
    throw ResourceError("find_split_prime: no prime p = 1 mod " + to_string(m) +
                        " in [" + to_string(lower) + ", " + to_string(cap) + "]");
}

std::pair<Int, Int> siegel_walfisz_window(const Int& m) {
    if (m < 3) throw PreconditionError("siegel_walfisz_window: m must be >= 3");
    unsigned long phi = euler_phi(m).get_ui();
    Int m3 = m * m * m;
    for (mpfr_prec_t prec = 128; prec <= (1 << 14); prec *= 2) {
        FInterval x = (FInterval::from_int(m3, prec) * FInterval::from_int(m, prec).log())
                          .pow_ui(phi);
        FInterval half = x / FInterval::exact_ui(2, prec);
        Int up_lo, up_hi, lo_lo, lo_hi;
        mpfr_get_z(up_lo.get_mpz_t(), x.lo().get(), MPFR_RNDD);
        mpfr_get_z(up_hi.get_mpz_t(), x.hi().get(), MPFR_RNDD);
        mpfr_get_z(lo_lo.get_mpz_t(), half.lo().get(), MPFR_RNDU);
        mpfr_get_z(lo_hi.get_mpz_t(), half.hi().get(), MPFR_RNDU);
        if (up_lo == up_hi && lo_lo == lo_hi) return {lo_lo, up_lo};
    }
    throw ResourceError("siegel_walfisz_window: certified rounding did not stabilize");
}

Int reduce_mod(const SplitPrime& P, const cyclo::FieldElement& x) {
    if (!x.is_integral())
        throw PreconditionError("reduce_mod: element has non-integral coordinates");
    Int acc = 0;
    for (size_t i = x.coords.size(); i-- > 0;) {
        acc = (acc * P.root_a + x.coords[i].get_num()) % P.p;
    }
    if (acc < 0) acc += P.p;
    return acc;
}

MatQ ideal_gram(const cyclo::CyclotomicField& field, const FractionalIdeal& a) {
    MatQ rows = a.basis_rows();
    size_t n = rows.rows();
    MatQ g(n, n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        cyclo::FieldElement ei{rows.row(i)};
        for (size_t j = 0; j <= i; ++j) {
            cyclo::FieldElement ej{rows.row(j)};
            g(i, j) = field.pairing(ei, ej);
            g(j, i) = g(i, j);
        }
    }
    return g;
}

Rat ideal_volume_sq(const cyclo::CyclotomicField& field, const FractionalIdeal& a) {
    Rat n = a.norm();
    return n * n * Rat(field.disc_abs());
}

FractionalIdeal ideal_product(const cyclo::CyclotomicField& field, const FractionalIdeal& a,
                              const FractionalIdeal& b) {
    MatQ ra = a.basis_rows(), rb = b.basis_rows();
    size_t n = ra.rows();
    MatQ rows(n * n, ra.cols(), Rat(0));
    for (size_t i = 0; i < n; ++i) {
        cyclo::FieldElement ei{ra.row(i)};
        for (size_t j = 0; j < n; ++j) {
            cyclo::FieldElement ej{rb.row(j)};
            cyclo::FieldElement prod = field.mul(ei, ej);
            for (size_t k = 0; k < prod.coords.size(); ++k) rows(i * n + j, k) = prod.coords[k];
        }
    }
    return ideal_from_rows(rows);
}

FractionalIdeal ideal_inverse(const cyclo::CyclotomicField& field, const FractionalIdeal& a) {
    MatQ ra = a.basis_rows();
    size_t n = ra.rows();
    if (n == 0) throw PreconditionError("ideal_inverse: zero ideal");
    // {x : x a_i in O_K for all i} is the dual (standard inner product) of the
    // lattice sum of the rows of M_{a_i}^T.
    MatQ stacked(n * n, n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        MatQ mi = field.multiplication_matrix(cyclo::FieldElement{ra.row(i)});
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) stacked(i * n + r, c) = mi(c, r);
    }
    FractionalIdeal sum = ideal_from_rows(stacked);
    MatQ h = sum.basis_rows();
    // Dual rows D satisfy D h^T = I.
    MatQ dual_rows = inverse(mat_transpose(h));
    FractionalIdeal inv = ideal_from_rows(dual_rows);
    FractionalIdeal prod = ideal_product(field, a, inv);
    if (!(prod == field.ring_of_integers()))
        throw FalsificationError("ideal_inverse: A * A^{-1} != O_K");
    return inv;
}

bool ideal_contains(const FractionalIdeal& a, const std::vector<Rat>& coords) {
    MatQ v(1, coords.size(), Rat(0));
    for (size_t j = 0; j < coords.size(); ++j) v(0, j) = coords[j];
    MatQ x = solve_left(a.basis_rows(), v);
    return is_integral(x);
}

MatZ coords_in(const FractionalIdeal& sub, const FractionalIdeal& super) {
    MatQ x = solve_left(super.basis_rows(), sub.basis_rows());
    if (!is_integral(x))
        throw FalsificationError("coords_in: lattice is not contained in the target");
    return to_integer(x);
}

}  // namespace cyclat::ideals
