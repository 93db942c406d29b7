#include "cyclat/scalar.hpp"

#include <sstream>

namespace cyclat {

namespace {

// Rational e-th root of q, when it exists.
std::optional<Rat> exact_root(const Rat& q, unsigned e) {
    if (q <= 0) return std::nullopt;
    Int num_root, den_root;
    if (!mpz_root(num_root.get_mpz_t(), q.get_num().get_mpz_t(), e)) return std::nullopt;
    if (!mpz_root(den_root.get_mpz_t(), q.get_den().get_mpz_t(), e)) return std::nullopt;
    return make_rat(num_root, den_root);
}

}  // namespace

AlgebraicScalar::AlgebraicScalar(unsigned e, const Rat& D, std::vector<Rat> coeffs)
    : e_(e), D_(D), coeffs_(std::move(coeffs)) {
    if (e_ == 0) throw PreconditionError("AlgebraicScalar: e must be positive");
    if (D_ <= 0) throw PreconditionError("AlgebraicScalar: D must be positive");
    coeffs_.resize(e_, Rat(0));
}

AlgebraicScalar AlgebraicScalar::root(unsigned e, const Rat& D) {
    return root_pow(e, D, 1);
}

AlgebraicScalar AlgebraicScalar::root_pow(unsigned e, const Rat& D, long k) {
    if (e == 0) throw PreconditionError("AlgebraicScalar: e must be positive");
    long r = k % static_cast<long>(e);
    long q = k / static_cast<long>(e);
    if (r < 0) {
        r += e;
        q -= 1;
    }
    std::vector<Rat> c(e, Rat(0));
    Rat scale(1);
    if (q >= 0) {
        for (long i = 0; i < q; ++i) scale *= D;
    } else {
        for (long i = 0; i < -q; ++i) scale /= D;
    }
    c[static_cast<size_t>(r)] = scale;
    return AlgebraicScalar(e, D, std::move(c));
}

bool AlgebraicScalar::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rat AlgebraicScalar::rational_value() const {
    if (!is_rational()) throw PreconditionError("AlgebraicScalar: not a rational value");
    return coeffs_[0];
}

AlgebraicScalar AlgebraicScalar::promoted_to(unsigned e, const Rat& D) const {
    if (e_ == e && D_ == D) return *this;
    if (!is_rational())
        throw PreconditionError("AlgebraicScalar: cannot mix towers (" + str() + ")");
    std::vector<Rat> c(e, Rat(0));
    c[0] = coeffs_[0];
    return AlgebraicScalar(e, D, std::move(c));
}

void AlgebraicScalar::align(const AlgebraicScalar& a, const AlgebraicScalar& b,
                            AlgebraicScalar& pa, AlgebraicScalar& pb) {
    if (a.e_ == b.e_ && a.D_ == b.D_) {
        pa = a;
        pb = b;
    } else if (b.is_rational()) {
        pa = a;
        pb = b.promoted_to(a.e_, a.D_);
    } else {
        pa = a.promoted_to(b.e_, b.D_);
        pb = b;
    }
}

AlgebraicScalar AlgebraicScalar::operator+(const AlgebraicScalar& o) const {
    AlgebraicScalar a, b;
    align(*this, o, a, b);
    for (unsigned i = 0; i < a.e_; ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
}

AlgebraicScalar AlgebraicScalar::operator-(const AlgebraicScalar& o) const {
    AlgebraicScalar a, b;
    align(*this, o, a, b);
    for (unsigned i = 0; i < a.e_; ++i) a.coeffs_[i] -= b.coeffs_[i];
    return a;
}

AlgebraicScalar AlgebraicScalar::operator-() const {
    AlgebraicScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

AlgebraicScalar AlgebraicScalar::operator*(const Rat& c) const {
    AlgebraicScalar r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

AlgebraicScalar AlgebraicScalar::operator*(const AlgebraicScalar& o) const {
    AlgebraicScalar a, b;
    align(*this, o, a, b);
    const unsigned e = a.e_;
    std::vector<Rat> prod(2 * e - 1, Rat(0));
    for (unsigned i = 0; i < e; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (unsigned j = 0; j < e; ++j) {
            if (b.coeffs_[j] == 0) continue;
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    std::vector<Rat> out(e, Rat(0));
    for (unsigned k = 0; k < prod.size(); ++k) {
        if (k < e)
            out[k] += prod[k];
        else
            out[k - e] += prod[k] * a.D_;  // t^e = D
    }
    return AlgebraicScalar(e, a.D_, std::move(out));
}

QPoly AlgebraicScalar::as_poly() const {
    QPoly p = coeffs_;
    qpoly_trim(p);
    return p;
}

std::optional<Rat> AlgebraicScalar::rational_root() const { return exact_root(D_, e_); }

AlgebraicScalar AlgebraicScalar::inverse() const {
    if (sign() == 0) throw PreconditionError("AlgebraicScalar: inverse of zero");
    if (e_ == 1) return AlgebraicScalar(Rat(1) / coeffs_[0]);
    if (auto t = rational_root()) {
        // Degenerate tower with rational t: invert the value directly.
        Rat v = qpoly_eval(as_poly(), *t);
        std::vector<Rat> c(e_, Rat(0));
        c[0] = Rat(1) / v;
        return AlgebraicScalar(e_, D_, std::move(c));
    }
    QPoly f = as_poly();
    QPoly modulus(e_ + 1, Rat(0));
    modulus[0] = -D_;
    modulus[e_] = Rat(1);
    QPoly g = qpoly_gcd(f, modulus);
    QPoly work_mod = modulus;
    if (qpoly_deg(g) > 0) {
        // X^e - D reducible and f shares the factor g with g(t) != 0;
        // invert modulo the cofactor, which t annihilates.
        work_mod = qpoly_divexact(modulus, g);
    }
    QPoly gg, u, v;
    qpoly_extgcd(f, work_mod, gg, u, v);
    if (qpoly_deg(gg) != 0)
        throw FalsificationError("AlgebraicScalar: inverse failed, nonzero value shares all factors");
    // u*f == 1 mod work_mod, and work_mod(t) == 0, so u(t)*f(t) == 1.
    QPoly q, r;
    qpoly_divrem(u, modulus, q, r);
    std::vector<Rat> c(r.begin(), r.end());
    return AlgebraicScalar(e_, D_, std::move(c));
}

AlgebraicScalar AlgebraicScalar::operator/(const AlgebraicScalar& o) const {
    AlgebraicScalar a, b;
    align(*this, o, a, b);
    if (b.e_ == 1) return a * (Rat(1) / b.coeffs_[0]);
    return a * b.inverse();
}

AlgebraicScalar AlgebraicScalar::pow(unsigned long n) const {
    AlgebraicScalar acc(Rat(1));
    acc = acc.promoted_to(e_, D_);
    AlgebraicScalar base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

FInterval AlgebraicScalar::to_interval(mpfr_prec_t prec) const {
    FInterval t = FInterval::from_rat(D_, prec).rootn(e_);
    FInterval acc = FInterval::from_rat(coeffs_[e_ - 1], prec);
    for (size_t i = e_ - 1; i-- > 0;) {
        acc = acc * t + FInterval::from_rat(coeffs_[i], prec);
    }
    return acc;
}

int AlgebraicScalar::sign() const {
    bool all_zero = true;
    for (const auto& c : coeffs_)
        if (c != 0) all_zero = false;
    if (all_zero) return 0;
    if (e_ == 1) return sgn(coeffs_[0]);
    bool only_const = true;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) only_const = false;
    if (only_const) return sgn(coeffs_[0]);
    if (auto t = rational_root()) return sgn(qpoly_eval(as_poly(), *t));

    bool known_nonzero = false;
    for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
        FInterval v = to_interval(prec);
        int s = v.certain_sign();
        if (s != 0) return s;
        if (!known_nonzero && prec >= 512) {
            // Exact zero decision: t is a root of f iff gcd(f, X^e - D)
            // vanishes at t, checked by a Sturm count around t.
            QPoly f = as_poly();
            QPoly modulus(e_ + 1, Rat(0));
            modulus[0] = -D_;
            modulus[e_] = Rat(1);
            QPoly g = qpoly_gcd(f, modulus);
            if (qpoly_deg(g) <= 0) {
                known_nonzero = true;
                continue;
            }
            FInterval ti = FInterval::from_rat(D_, 256).rootn(e_);
            Rat lo = ti.lo_rat(), hi = ti.hi_rat();
            // Certify 0 < lo < t < hi exactly; widen if rounding landed on t.
            while (!(lo > 0) || !(pow_rat(lo, e_) < D_)) lo /= 2;
            while (!(pow_rat(hi, e_) > D_)) hi *= 2;
            if (sturm_count_roots(g, lo, hi) > 0) return 0;
            known_nonzero = true;
        }
    }
    throw ResourceError("AlgebraicScalar::sign: precision cap exceeded");
}

Int AlgebraicScalar::nearest_int() const {
    if (is_rational()) {
        // floor(q + 1/2)
        Rat shifted = coeffs_[0] + make_rat(1, 2);
        Int n;
        mpz_fdiv_q(n.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
        return n;
    }
    FInterval v = to_interval(192);
    double mid = v.mid_double();
    Int n(static_cast<long>(mid >= 0 ? mid + 0.5 : mid - 0.5));
    // x - n must fall in [-1/2, 1/2); fix up with exact comparisons.
    auto fits = [&](const Int& cand) {
        AlgebraicScalar d = *this - AlgebraicScalar(Rat(cand));
        return (d + AlgebraicScalar(make_rat(1, 2))).sign() >= 0 &&
               (d - AlgebraicScalar(make_rat(1, 2))).sign() < 0;
    };
    for (int tries = 0; tries < 64; ++tries) {
        if (fits(n)) return n;
        AlgebraicScalar d = *this - AlgebraicScalar(Rat(n));
        n += (d.sign() >= 0) ? 1 : -1;
    }
    throw ResourceError("AlgebraicScalar::nearest_int did not converge");
}

std::string AlgebraicScalar::str() const {
    if (is_rational()) return to_string(coeffs_[0]);
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i < e_; ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        os << to_string(coeffs_[i]);
        if (i >= 1) os << "*t^" << i;
        first = false;
    }
    if (first) os << "0";
    os << " where t^" << e_ << " = " << to_string(D_);
    return os.str();
}

}  // namespace cyclat
