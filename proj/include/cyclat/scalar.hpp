#pragma once

#include "cyclat/basics.hpp"
#include "cyclat/interval.hpp"
#include "cyclat/poly.hpp"

#include <optional>
#include <vector>

namespace cyclat {

// Element of Q[X]/(X^e - D) interpreted at the unique positive real root
// t = D^(1/e). e = 1 is a plain rational. Values with different (e, D) do
// not mix except through the rational embedding.
//
// Sign determination does not assume X^e - D is irreducible: when interval
// refinement stalls, the exact decision goes through gcd with X^e - D and a
// Sturm root count around t.
class AlgebraicScalar {
  public:
    AlgebraicScalar() : e_(1), D_(1), coeffs_{Rat(0)} {}
    explicit AlgebraicScalar(const Rat& q) : e_(1), D_(1), coeffs_{q} {}
    explicit AlgebraicScalar(const Int& z) : e_(1), D_(1), coeffs_{Rat(z)} {}
    explicit AlgebraicScalar(int v) : e_(1), D_(1), coeffs_{Rat(v)} {}
    AlgebraicScalar(unsigned e, const Rat& D, std::vector<Rat> coeffs);

    // The root t itself in the tower (e, D).
    static AlgebraicScalar root(unsigned e, const Rat& D);
    // t^k for any integer k (negative powers use t^-1 = t^(e-1)/D).
    static AlgebraicScalar root_pow(unsigned e, const Rat& D, long k);

    unsigned extension_degree() const { return e_; }
    const Rat& radicand() const { return D_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_rational() const;
    // Requires is_rational().
    Rat rational_value() const;

    AlgebraicScalar operator+(const AlgebraicScalar& o) const;
    AlgebraicScalar operator-(const AlgebraicScalar& o) const;
    AlgebraicScalar operator*(const AlgebraicScalar& o) const;
    AlgebraicScalar operator-() const;
    AlgebraicScalar operator*(const Rat& c) const;
    AlgebraicScalar inverse() const;  // value at t must be nonzero
    AlgebraicScalar operator/(const AlgebraicScalar& o) const;
    AlgebraicScalar pow(unsigned long n) const;

    // Exact sign of the real value: -1, 0, +1.
    int sign() const;
    bool is_zero() const { return sign() == 0; }
    int compare(const AlgebraicScalar& o) const { return (*this - o).sign(); }
    bool operator==(const AlgebraicScalar& o) const { return compare(o) == 0; }
    bool operator<(const AlgebraicScalar& o) const { return compare(o) < 0; }

    FInterval to_interval(mpfr_prec_t prec) const;
    double to_double() const { return to_interval(128).mid_double(); }

    // Nearest integer, halves rounding up; decided exactly.
    Int nearest_int() const;

    std::string str() const;

  private:
    AlgebraicScalar promoted_to(unsigned e, const Rat& D) const;
    static void align(const AlgebraicScalar& a, const AlgebraicScalar& b,
                      AlgebraicScalar& pa, AlgebraicScalar& pb);
    // Rational t when D is a perfect e-th power of a rational.
    std::optional<Rat> rational_root() const;
    QPoly as_poly() const;

    unsigned e_;
    Rat D_;
    std::vector<Rat> coeffs_;
};

}  // namespace cyclat
