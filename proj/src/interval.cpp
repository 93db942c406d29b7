#include "cyclat/interval.hpp"

#include <algorithm>
#include <cstdio>

namespace cyclat {

std::string BigFloat::str(int sig_digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%%.%dRe", sig_digits - 1);
    char buf[256];
    mpfr_snprintf(buf, sizeof(buf), fmt, v_);
    return buf;
}

FInterval FInterval::from_rat(const Rat& q, mpfr_prec_t prec) {
    FInterval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

FInterval FInterval::from_int(const Int& z, mpfr_prec_t prec) {
    FInterval r(prec);
    mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
}

FInterval FInterval::exact_ui(unsigned long u, mpfr_prec_t prec) {
    FInterval r(prec);
    mpfr_set_ui(r.lo_.get(), u, MPFR_RNDD);
    mpfr_set_ui(r.hi_.get(), u, MPFR_RNDU);
    return r;
}

FInterval FInterval::pi(mpfr_prec_t prec) {
    FInterval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
}

FInterval FInterval::operator+(const FInterval& o) const {
    FInterval r(prec_);
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

FInterval FInterval::operator-(const FInterval& o) const {
    FInterval r(prec_);
    mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
}

FInterval FInterval::neg() const {
    FInterval r(prec_);
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

FInterval FInterval::operator*(const FInterval& o) const {
    FInterval r(prec_);
    mpfr_t t;
    mpfr_init2(t, prec_);
    const mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    const mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

FInterval FInterval::operator/(const FInterval& o) const {
    if (o.contains_zero()) throw PreconditionError("FInterval: division by interval containing 0");
    FInterval r(prec_);
    mpfr_t t;
    mpfr_init2(t, prec_);
    const mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    const mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t, MPFR_RNDD);
            mpfr_div(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

FInterval FInterval::sqrt() const {
    if (lo_.sign() < 0) throw PreconditionError("FInterval::sqrt of negative interval");
    FInterval r(prec_);
    mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

FInterval FInterval::rootn(unsigned long n) const {
    if (lo_.sign() < 0) throw PreconditionError("FInterval::rootn of negative interval");
    FInterval r(prec_);
    mpfr_rootn_ui(r.lo_.get(), lo_.get(), n, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_.get(), hi_.get(), n, MPFR_RNDU);
    return r;
}

FInterval FInterval::pow_ui(unsigned long n) const {
    // Repeated squaring keeps monotonicity handling simple for possibly
    // negative intervals.
    FInterval acc = exact_ui(1, prec_);
    FInterval base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

FInterval FInterval::log() const {
    if (lo_.sign() <= 0) throw PreconditionError("FInterval::log of non-positive interval");
    FInterval r(prec_);
    mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

FInterval FInterval::exp() const {
    FInterval r(prec_);
    mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

int FInterval::certain_sign() const {
    if (lo_.sign() > 0) return 1;
    if (hi_.sign() < 0) return -1;
    return 0;
}

namespace {
Rat mpfr_to_rat(mpfr_srcptr x) {
    if (!mpfr_number_p(x)) throw ResourceError("FInterval: non-finite endpoint");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    Rat r(q);
    mpq_clear(q);
    return r;
}
}  // namespace

Rat FInterval::lo_rat() const { return mpfr_to_rat(lo_.get()); }
Rat FInterval::hi_rat() const { return mpfr_to_rat(hi_.get()); }

}  // namespace cyclat
