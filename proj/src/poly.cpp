#include "cyclat/poly.hpp"

#include "cyclat/arith.hpp"

#include <map>

namespace cyclat {

QPoly qpoly_from(const ZPoly& p) {
    QPoly q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = Rat(p[i]);
    qpoly_trim(q);
    return q;
}

void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int qpoly_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly qpoly_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    qpoly_trim(r);
    return r;
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qpoly_trim(r);
    return r;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qpoly_trim(r);
    return r;
}

QPoly qpoly_scale(const QPoly& a, const Rat& c) {
    if (c == 0) return {};
    QPoly r(a);
    for (auto& x : r) x *= c;
    return r;
}

void qpoly_divrem(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
    if (b.empty()) throw PreconditionError("qpoly_divrem: division by zero polynomial");
    rem = a;
    quot.clear();
    int db = qpoly_deg(b);
    if (qpoly_deg(rem) >= db) quot.assign(rem.size() - b.size() + 1, Rat(0));
    while (qpoly_deg(rem) >= db) {
        int dr = qpoly_deg(rem);
        Rat c = rem[dr] / b[db];
        quot[dr - db] = c;
        for (int i = 0; i <= db; ++i) rem[dr - db + i] -= c * b[i];
        qpoly_trim(rem);
    }
    qpoly_trim(quot);
}

QPoly qpoly_divexact(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    qpoly_divrem(a, b, q, r);
    if (!r.empty()) throw FalsificationError("qpoly_divexact: division not exact");
    return q;
}

QPoly qpoly_derivative(const QPoly& a) {
    if (a.size() <= 1) return {};
    QPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(Int(i));
    return r;
}

Rat qpoly_eval(const QPoly& a, const Rat& x) {
    Rat acc(0);
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
    qpoly_trim(a);
    qpoly_trim(b);
    while (!b.empty()) {
        QPoly q, r;
        qpoly_divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

void qpoly_extgcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& u, QPoly& v) {
    QPoly r0 = a, r1 = b;
    qpoly_trim(r0);
    qpoly_trim(r1);
    QPoly u0{Rat(1)}, u1{}, v0{}, v1{Rat(1)};
    while (!r1.empty()) {
        QPoly q, r;
        qpoly_divrem(r0, r1, q, r);
        QPoly u2 = qpoly_sub(u0, qpoly_mul(q, u1));
        QPoly v2 = qpoly_sub(v0, qpoly_mul(q, v1));
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    g = r0;
    u = u0;
    v = v0;
    if (!g.empty()) {
        Rat lc = g.back();
        for (auto& c : g) c /= lc;
        for (auto& c : u) c /= lc;
        for (auto& c : v) c /= lc;
    }
}

namespace {

int sign_at(const QPoly& p, const Rat& x) {
    Rat v = qpoly_eval(p, x);
    return sgn(v);
}

int sturm_sign_changes(const std::vector<QPoly>& chain, const Rat& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

int sturm_count_roots(const QPoly& p, const Rat& lo, const Rat& hi) {
    if (p.empty()) throw PreconditionError("sturm_count_roots: zero polynomial");
    if (!(lo < hi)) throw PreconditionError("sturm_count_roots: empty interval");
    std::vector<QPoly> chain;
    chain.push_back(p);
    QPoly d = qpoly_derivative(p);
    if (!d.empty()) chain.push_back(d);
    while (chain.size() >= 2 && !chain.back().empty()) {
        QPoly q, r;
        qpoly_divrem(chain[chain.size() - 2], chain.back(), q, r);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(r);
    }
    return sturm_sign_changes(chain, lo) - sturm_sign_changes(chain, hi);
}

ZPoly cyclotomic_poly(const Int& m) {
    if (m < 1) throw PreconditionError("cyclotomic_poly: m must be positive");
    // QPoly arithmetic keeps the division exact; coefficients are integers.
    std::map<Int, QPoly> memo;
    for (const Int& d : divisors(m)) {
        // X^d - 1
        QPoly xd(static_cast<size_t>(d.get_ui()) + 1, Rat(0));
        xd[0] = Rat(-1);
        xd.back() = Rat(1);
        QPoly num = xd;
        for (const auto& [dd, phi_dd] : memo) {
            if (dd < d && d % dd == 0) num = qpoly_divexact(num, phi_dd);
        }
        memo[d] = num;
    }
    const QPoly& phi = memo[m];
    ZPoly out(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) {
        if (phi[i].get_den() != 1)
            throw FalsificationError("cyclotomic_poly: non-integer coefficient");
        out[i] = phi[i].get_num();
    }
    return out;
}

Int zpoly_eval_mod(const ZPoly& p, const Int& x, const Int& n) {
    Int acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = (acc * x + p[i]) % n;
    if (acc < 0) acc += n;
    return acc;
}

}  // namespace cyclat
