#include "cyclat/cyclo.hpp"

#include "cyclat/arith.hpp"

namespace cyclat::cyclo {

CyclotomicField::CyclotomicField(const Int& m) : m_(m) {
    if (m < 3)
        throw ConfigError("conductor m must be >= 3 (got " + to_string(m) + ")");
    if (m % 4 == 2)
        throw ConfigError("m = " + to_string(m) + " is not a canonical conductor: Q[zeta_" +
                          to_string(m) + "] = Q[zeta_" + to_string(Int(m / 2)) +
                          "], use m = " + to_string(Int(m / 2)));
    phi_ = static_cast<unsigned>(euler_phi(m).get_ui());
    cyclo_poly_ = cyclotomic_poly(m);
    if (cyclo_poly_.size() != phi_ + 1)
        throw FalsificationError("cyclotomic polynomial degree mismatch");

    // zeta^k in the power basis, for k up to max(m-1, 2 phi - 2): fold with
    // zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1}). Products of
    // two reduced elements reach degree 2 phi - 2, which can exceed m - 1.
    size_t table_rows = std::max(static_cast<size_t>(m.get_ui()), 2 * static_cast<size_t>(phi_) - 1);
    zeta_pow_ = MatZ(table_rows, phi_, Int(0));
    for (unsigned k = 0; k < phi_; ++k) zeta_pow_(k, k) = 1;
    for (size_t k = phi_; k < zeta_pow_.rows(); ++k) {
        // zeta^k = zeta * zeta^(k-1)
        std::vector<Int> prev(phi_);
        for (unsigned j = 0; j < phi_; ++j) prev[j] = zeta_pow_(k - 1, j);
        std::vector<Int> cur(phi_, Int(0));
        for (unsigned j = 0; j + 1 < phi_; ++j) cur[j + 1] = prev[j];
        const Int& top = prev[phi_ - 1];
        if (top != 0)
            for (unsigned j = 0; j < phi_; ++j) cur[j] -= top * cyclo_poly_[j];
        for (unsigned j = 0; j < phi_; ++j) zeta_pow_(k, j) = cur[j];
    }

    trace_vec_.resize(phi_);
    for (unsigned j = 0; j < phi_; ++j) trace_vec_[j] = trace_of_power(Int(j));

    trace_gram_ = MatZ(phi_, phi_, Int(0));
    for (unsigned i = 0; i < phi_; ++i)
        for (unsigned j = 0; j < phi_; ++j) trace_gram_(i, j) = trace_of_power(Int(i) - Int(j));

    conj_mat_ = MatZ(phi_, phi_, Int(0));
    for (unsigned j = 0; j < phi_; ++j) {
        Int k = (m_ - j) % m_;
        for (unsigned l = 0; l < phi_; ++l) conj_mat_(j, l) = zeta_pow_(k.get_ui(), l);
    }

    disc_abs_ = discriminant_magnitude(*this);
    Int gram_det = det(trace_gram_);
    if (abs(gram_det) != disc_abs_)
        throw FalsificationError("trace Gram determinant " + to_string(gram_det) +
                                 " does not match discriminant " + to_string(disc_abs_));
}

Int CyclotomicField::trace_of_power(const Int& k) const {
    Int kk = k % m_;
    if (kk < 0) kk += m_;
    Int g;
    mpz_gcd(g.get_mpz_t(), kk.get_mpz_t(), m_.get_mpz_t());
    Int d = m_ / g;
    Int phi_d = euler_phi(d);
    Int val = Int(mobius(d)) * Int(phi_);
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), val.get_mpz_t(), phi_d.get_mpz_t());
    if (r != 0) throw FalsificationError("trace_of_power: phi(d) does not divide mu(d)*phi(m)");
    return q;
}

FieldElement CyclotomicField::one() const {
    FieldElement e = zero();
    e.coords[0] = Rat(1);
    return e;
}

FieldElement CyclotomicField::zeta_power(const Int& k) const {
    Int kk = k % m_;
    if (kk < 0) kk += m_;
    FieldElement e = zero();
    for (unsigned j = 0; j < phi_; ++j) e.coords[j] = Rat(zeta_pow_(kk.get_ui(), j));
    return e;
}

FieldElement CyclotomicField::from_ints(const std::vector<Int>& v) const {
    if (v.size() != phi_) throw PreconditionError("from_ints: wrong length");
    FieldElement e = zero();
    for (unsigned j = 0; j < phi_; ++j) e.coords[j] = Rat(v[j]);
    return e;
}

FieldElement CyclotomicField::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (unsigned j = 0; j < phi_; ++j) r.coords[j] += b.coords[j];
    return r;
}

FieldElement CyclotomicField::sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (unsigned j = 0; j < phi_; ++j) r.coords[j] -= b.coords[j];
    return r;
}

FieldElement CyclotomicField::mul(const FieldElement& a, const FieldElement& b) const {
    std::vector<Rat> prod(2 * phi_ - 1, Rat(0));
    for (unsigned i = 0; i < phi_; ++i) {
        if (a.coords[i] == 0) continue;
        for (unsigned j = 0; j < phi_; ++j) {
            if (b.coords[j] == 0) continue;
            prod[i + j] += a.coords[i] * b.coords[j];
        }
    }
    FieldElement r = zero();
    for (unsigned k = 0; k < prod.size(); ++k) {
        if (prod[k] == 0) continue;
        if (k < phi_) {
            r.coords[k] += prod[k];
        } else {
            for (unsigned j = 0; j < phi_; ++j) r.coords[j] += prod[k] * Rat(zeta_pow_(k, j));
        }
    }
    return r;
}

FieldElement CyclotomicField::scale(const FieldElement& a, const Rat& c) const {
    FieldElement r = a;
    for (auto& x : r.coords) x *= c;
    return r;
}

FieldElement CyclotomicField::conjugate(const FieldElement& a) const {
    FieldElement r = zero();
    for (unsigned j = 0; j < phi_; ++j) {
        if (a.coords[j] == 0) continue;
        for (unsigned l = 0; l < phi_; ++l) r.coords[l] += a.coords[j] * Rat(conj_mat_(j, l));
    }
    return r;
}

Int CyclotomicField::trace(const FieldElement& a) const {
    Rat t = trace_rat(a);
    if (t.get_den() != 1) throw FalsificationError("trace: non-integral trace of integral element");
    return t.get_num();
}

Rat CyclotomicField::trace_rat(const FieldElement& a) const {
    Rat t(0);
    for (unsigned j = 0; j < phi_; ++j) t += a.coords[j] * Rat(trace_vec_[j]);
    return t;
}

Rat CyclotomicField::pairing(const FieldElement& a, const FieldElement& b) const {
    // tr(a conj(b)) = a G b^T with G_ij = tr(zeta^(i-j))
    Rat acc(0);
    for (unsigned i = 0; i < phi_; ++i) {
        if (a.coords[i] == 0) continue;
        for (unsigned j = 0; j < phi_; ++j) {
            if (b.coords[j] == 0) continue;
            acc += a.coords[i] * b.coords[j] * Rat(trace_gram_(i, j));
        }
    }
    return acc;
}

MatQ CyclotomicField::multiplication_matrix(const FieldElement& a) const {
    MatQ mt(phi_, phi_, Rat(0));
    FieldElement cur = a;
    for (unsigned k = 0; k < phi_; ++k) {
        for (unsigned j = 0; j < phi_; ++j) mt(k, j) = cur.coords[j];
        if (k + 1 < phi_) cur = mul(cur, zeta_power(Int(1)));
    }
    return mt;
}

ideals::FractionalIdeal CyclotomicField::ring_of_integers() const {
    return ideals::FractionalIdeal{MatZ::identity(phi_), Int(1)};
}

ideals::FractionalIdeal CyclotomicField::codifferent() const {
    // Phi_m'(zeta) generates the different; its inverse generates O_K^#.
    QPoly phi_poly = qpoly_from(cyclo_poly_);
    QPoly deriv = qpoly_derivative(phi_poly);
    FieldElement f = zero();
    for (size_t i = 0; i < phi_; ++i) f.coords[i] = (i < deriv.size()) ? deriv[i] : Rat(0);
    // Solve g * f = 1 via the multiplication matrix.
    MatQ mf = multiplication_matrix(f);
    MatQ e0(1, phi_, Rat(0));
    e0(0, 0) = Rat(1);
    MatQ g = solve_left(mf, e0);  // g * mf = e0
    FieldElement gen{g.row(0)};
    // Rows: gen * zeta^k.
    MatQ rows(phi_, phi_, Rat(0));
    FieldElement cur = gen;
    for (unsigned k = 0; k < phi_; ++k) {
        for (unsigned j = 0; j < phi_; ++j) rows(k, j) = cur.coords[j];
        if (k + 1 < phi_) cur = mul(cur, zeta_power(Int(1)));
    }
    ideals::FractionalIdeal dual = ideals::ideal_from_rows(rows);

    // Duality certificate: pairing of the O_K basis with the dual basis is
    // integral and unimodular.
    MatQ dual_rows = dual.basis_rows();
    MatQ pair(phi_, phi_, Rat(0));
    for (unsigned i = 0; i < phi_; ++i) {
        FieldElement bi = zeta_power(Int(i));
        for (unsigned j = 0; j < phi_; ++j) {
            FieldElement dj{dual_rows.row(j)};
            pair(i, j) = pairing(bi, dj);
        }
    }
    if (!is_integral(pair)) throw FalsificationError("codifferent: pairing not integral");
    Int pd = det(to_integer(pair));
    if (pd != 1 && pd != -1)
        throw FalsificationError("codifferent: pairing determinant " + to_string(pd) +
                                 " not unimodular");
    return dual;
}

Int discriminant_magnitude(const CyclotomicField& field) {
    const Int& m = field.m();
    unsigned phi = field.phi();
    Int num = pow_int(m, phi);
    Int den = 1;
    for (const auto& [l, e] : factor(m)) {
        Int lm1 = l - 1;
        Int q, r;
        Int exp_num = Int(phi);
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), exp_num.get_mpz_t(), lm1.get_mpz_t());
        if (r != 0)
            throw FalsificationError("discriminant_magnitude: (l-1) does not divide phi(m)");
        den *= pow_int(l, q.get_ui());
    }
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw FalsificationError("discriminant_magnitude: division not exact");
    return q;
}

CyclotomicField build_field(const Int& m) { return CyclotomicField(m); }

}  // namespace cyclat::cyclo
