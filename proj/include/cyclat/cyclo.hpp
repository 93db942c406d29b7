#pragma once

#include "cyclat/basics.hpp"
#include "cyclat/fractional_ideal.hpp"
#include "cyclat/matrix.hpp"
#include "cyclat/poly.hpp"

#include <vector>

namespace cyclat::cyclo {

// Coordinates in the power basis 1, zeta, ..., zeta^(phi-1).
struct FieldElement {
    std::vector<Rat> coords;

    bool operator==(const FieldElement& o) const { return coords == o.coords; }
    bool is_integral() const {
        for (const auto& c : coords)
            if (c.get_den() != 1) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
};

// Exact model of K = Q[zeta_m] with the trace-form Euclidean structure.
// Immutable after construction; safe to share across threads.
class CyclotomicField {
  public:
    explicit CyclotomicField(const Int& m);

    const Int& m() const { return m_; }
    unsigned phi() const { return phi_; }
    const ZPoly& cyclo_poly() const { return cyclo_poly_; }
    const MatZ& trace_gram() const { return trace_gram_; }
    const Int& disc_abs() const { return disc_abs_; }

    // tr(zeta^k) by the Ramanujan-sum closed form mu(d) phi(m)/phi(d),
    // d = m / gcd(m, k).
    Int trace_of_power(const Int& k) const;

    FieldElement zero() const { return FieldElement{std::vector<Rat>(phi_, Rat(0))}; }
    FieldElement one() const;
    // zeta^k for any integer k (reduced mod m, then mod Phi_m).
    FieldElement zeta_power(const Int& k) const;
    FieldElement from_ints(const std::vector<Int>& v) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement scale(const FieldElement& a, const Rat& c) const;
    FieldElement conjugate(const FieldElement& a) const;

    Int trace(const FieldElement& a) const;          // requires integral? no: rational trace
    Rat trace_rat(const FieldElement& a) const;
    // <a, b> = tr(a * conj(b)).
    Rat pairing(const FieldElement& a, const FieldElement& b) const;

    // Multiplication-by-a matrix in the power basis: row k holds the
    // coordinates of zeta^k * a.
    MatQ multiplication_matrix(const FieldElement& a) const;

    // O_K as a fractional ideal (identity HNF).
    ideals::FractionalIdeal ring_of_integers() const;

    // Trace-form dual of O_K, built as (1/Phi_m'(zeta)) O_K and certified by
    // integral pairings with unimodular determinant.
    ideals::FractionalIdeal codifferent() const;

  private:
    Int m_;
    unsigned phi_;
    ZPoly cyclo_poly_;
    MatZ trace_gram_;
    Int disc_abs_;
    MatZ zeta_pow_;   // m rows: zeta^k in the power basis, k in [0, m)
    MatZ conj_mat_;   // row j: conj(zeta^j) in the power basis
    std::vector<Int> trace_vec_;  // tr(zeta^j), j in [0, phi)
};

// Eq.-style closed form m^phi / prod_{l | m} l^{phi/(l-1)}; throws
// FalsificationError if the division is not exact.
Int discriminant_magnitude(const CyclotomicField& field);

// Free-function forms mirroring the operation list.
CyclotomicField build_field(const Int& m);

}  // namespace cyclat::cyclo
