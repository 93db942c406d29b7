#pragma once

#include "cyclat/matrix.hpp"

namespace cyclat::ideals {

// A fractional ideal (or any full-rank Z[zeta]-stable lattice in K) stored
// as numerator_hnf / denominator: the Z-span of the HNF rows, scaled by
// 1/denominator. Normalized so gcd(entries, denominator) = 1.
struct FractionalIdeal {
    MatZ numerator_hnf;  // phi x phi, row HNF
    Int denominator{1};

    size_t dim() const { return numerator_hnf.rows(); }

    bool operator==(const FractionalIdeal& o) const {
        return denominator == o.denominator && numerator_hnf == o.numerator_hnf;
    }

    // Basis rows as rational coordinates in the power basis.
    MatQ basis_rows() const {
        MatQ r = to_rational(numerator_hnf);
        Rat inv_d = make_rat(1, denominator);
        for (size_t i = 0; i < r.rows(); ++i)
            for (size_t j = 0; j < r.cols(); ++j) r(i, j) *= inv_d;
        return r;
    }

    // Ideal norm N(A) = det(numerator_hnf) / denominator^phi (> 0).
    Rat norm() const { return make_rat(det(numerator_hnf), pow_int(denominator, numerator_hnf.rows())); }
};

// HNF-span of rational rows: clears denominators, reduces to HNF, and
// normalizes the common factor.
FractionalIdeal ideal_from_rows(const MatQ& rows);

}  // namespace cyclat::ideals
