#include "cyclat/arith.hpp"

#include <algorithm>

namespace cyclat {

namespace {

bool miller_rabin_witness(const Int& n, const Int& base, const Int& d, unsigned long s) {
    Int a = base % n;
    if (a == 0) return false;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;  // composite witness
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // n odd, > 37 here
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    // The 12 bases are a deterministic certificate for n < 3.317e24.
    static const Int mr_ceiling("3317044064679887385961981");
    if (n < mr_ceiling) {
        for (long b : small) {
            if (miller_rabin_witness(n, Int(b), d, s)) return false;
        }
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<Int, unsigned>> factor(const Int& n) {
    if (n <= 0) throw PreconditionError("factor: argument must be positive");
    std::vector<std::pair<Int, unsigned>> out;
    Int m = n;
    Int p = 2;
    while (p * p <= m) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

Int euler_phi(const Int& n) {
    Int r = 1;
    for (const auto& [p, e] : factor(n)) {
        r *= pow_int(p, e - 1) * (p - 1);
    }
    return r;
}

int mobius(const Int& n) {
    int sign = 1;
    for (const auto& [p, e] : factor(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{1};
    for (const auto& [p, e] : factor(n)) {
        size_t sz = out.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int primorial(unsigned long x) {
    Int m = 1;
    for (Int p = 2; p <= x; ++p) {
        if (is_prime(p)) m *= p;
    }
    return m;
}

}  // namespace cyclat
