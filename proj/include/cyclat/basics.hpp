#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace cyclat {

using Int = mpz_class;
using Rat = mpq_class;

// A stated precondition does not hold (CLI exit 2).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact claim failed with a witness (CLI exit 3).
struct FalsificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ball guard / search ceiling hit (CLI exit 4).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration or malformed certificate (CLI exit 5).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Int& z) { return z.get_str(); }

// Canonical form: "n" when integral, "n/d" otherwise (d > 0, lowest terms).
inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw ConfigError("invalid rational: " + s);
    r.canonicalize();
    return r;
}

inline Int int_from_string(const std::string& s) {
    Int z;
    if (z.set_str(s, 10) != 0) throw ConfigError("invalid integer: " + s);
    return z;
}

inline Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned long exp) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
    return r;
}

}  // namespace cyclat
