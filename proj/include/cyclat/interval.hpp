#pragma once

#include "cyclat/basics.hpp"

#include <mpfr.h>

#include <string>

namespace cyclat {

// Value-semantic wrapper around mpfr_t.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    std::string str(int sig_digits) const;

  private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with outward-rounded endpoints.
class FInterval {
  public:
    explicit FInterval(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec), prec_(prec) {}

    static FInterval from_rat(const Rat& q, mpfr_prec_t prec);
    static FInterval from_int(const Int& z, mpfr_prec_t prec);
    static FInterval exact_ui(unsigned long u, mpfr_prec_t prec);
    static FInterval pi(mpfr_prec_t prec);

    FInterval operator+(const FInterval& o) const;
    FInterval operator-(const FInterval& o) const;
    FInterval operator*(const FInterval& o) const;
    FInterval operator/(const FInterval& o) const;  // o must not contain 0
    FInterval neg() const;
    FInterval sqrt() const;                 // lo must be >= 0
    FInterval rootn(unsigned long n) const; // lo must be >= 0
    FInterval pow_ui(unsigned long n) const;
    FInterval log() const;  // lo must be > 0
    FInterval exp() const;

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    // Sign if certain, 0 if the interval straddles zero (including exact zero).
    int certain_sign() const;
    // True when this interval lies strictly below o.
    bool certainly_less(const FInterval& o) const {
        return mpfr_cmp(hi_.get(), o.lo_.get()) < 0;
    }

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    BigFloat& lo() { return lo_; }
    BigFloat& hi() { return hi_; }
    mpfr_prec_t prec() const { return prec_; }

    double mid_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }
    // Outward endpoints as exact rationals.
    Rat lo_rat() const;
    Rat hi_rat() const;

  private:
    BigFloat lo_, hi_;
    mpfr_prec_t prec_;
};

}  // namespace cyclat
