#include "cyclat/symplectic.hpp"

#include <sstream>

namespace cyclat::symplectic {

namespace {

// tr(x * y) without conjugation.
Rat plain_trace_pairing(const cyclo::CyclotomicField& field, const cyclo::FieldElement& x,
                        const cyclo::FieldElement& y) {
    return field.trace_rat(field.mul(x, y));
}

}  // namespace

SymplecticBase build_symplectic_base(const cyclo::CyclotomicField& field,
                                     const ideals::SplitPrime& P) {
    unsigned phi = field.phi();
    unsigned n = 2 * phi;
    Rat d_tower = Rat(P.q) * Rat(field.disc_abs());
    AlgebraicScalar t = AlgebraicScalar::root(phi, d_tower);
    AlgebraicScalar t_inv = AlgebraicScalar::root_pow(phi, d_tower, -1);

    ideals::FractionalIdeal p_ideal{P.hnf_basis, Int(1)};
    ideals::FractionalIdeal ideal2 =
        ideals::ideal_product(field, ideals::ideal_inverse(field, p_ideal), field.codifferent());

    lift::BasePair pair =
        lift::make_base_pair(field, P, field.ring_of_integers(), ideal2, t_inv, t);

    // Eq. volume identity: Vol(Lambda_0)^2 = 1/q^2.
    AlgebraicScalar vol0 = pair.lambda0_volume_sq();
    if (!(vol0 == AlgebraicScalar(make_rat(Int(1), P.q * P.q))))
        throw FalsificationError("symplectic base: Vol(Lambda_0)^2 != 1/q^2, got " + vol0.str());

    // Conjugation basis-change blocks. Component 1 basis is the power basis.
    MatQ w_rows = ideal2.basis_rows();
    MatQ cwv(phi, phi, Rat(0));  // conj(w_k) in the power basis
    for (unsigned k = 0; k < phi; ++k) {
        cyclo::FieldElement cw = field.conjugate(cyclo::FieldElement{w_rows.row(k)});
        for (unsigned j = 0; j < phi; ++j) cwv(k, j) = cw.coords[j];
    }
    MatQ conj_v(phi, phi, Rat(0));  // conj(zeta^j) in the power basis
    for (unsigned j = 0; j < phi; ++j) {
        cyclo::FieldElement cv = field.conjugate(field.zeta_power(Int(j)));
        for (unsigned l = 0; l < phi; ++l) conj_v(j, l) = cv.coords[l];
    }
    MatQ cvw = solve_left(w_rows, conj_v);  // conj(zeta^j) in the w-basis

    MatS sigma(n, n, AlgebraicScalar(Rat(0)));
    for (unsigned i = 0; i < phi; ++i)
        for (unsigned j = 0; j < phi; ++j) {
            sigma(i, phi + j) = t_inv * cvw(i, j);
            sigma(phi + i, j) = -(t * cwv(i, j));
        }

    // sigma^2 = -Id as scalar matrices.
    MatS s2 = mat_mul(sigma, sigma);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            AlgebraicScalar expect{Rat(i == j ? -1 : 0)};
            if (!(s2(i, j) == expect))
                throw FalsificationError("symplectic base: sigma^2 != -Id at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
        }
    // sigma is an isometry: S G S^T = G.
    MatS sgst = mat_mul(mat_mul(sigma, pair.ambient_gram), mat_transpose(sigma));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!(sgst(i, j) == pair.ambient_gram(i, j)))
                throw FalsificationError("symplectic base: sigma is not an isometry at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");

    // Rational pairing form J(x,y) = <sigma(x), y> = tr(x1 y2) - tr(x2 y1).
    MatQ j_form(n, n, Rat(0));
    for (unsigned i = 0; i < phi; ++i) {
        cyclo::FieldElement vi = field.zeta_power(Int(i));
        for (unsigned k = 0; k < phi; ++k) {
            cyclo::FieldElement wk{w_rows.row(k)};
            Rat tr = plain_trace_pairing(field, vi, wk);
            j_form(i, phi + k) = tr;
            j_form(phi + k, i) = -tr;
        }
    }
    // Base-level cancellation assert: S * G must reduce to the rational J.
    MatS sg = mat_mul(sigma, pair.ambient_gram);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (!sg(i, j).is_rational())
                throw FalsificationError(
                    "symplectic base: t-coefficients failed to vanish in sigma*Gram at (" +
                    std::to_string(i) + "," + std::to_string(j) + "): " + sg(i, j).str());
            if (sg(i, j).rational_value() != j_form(i, j))
                throw FalsificationError("symplectic base: sigma*Gram != pairing form at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
        }

    return SymplecticBase{std::move(pair), std::move(sigma), std::move(j_form)};
}

SymplecticCertificate verify_symplectic(const SymplecticBase& base,
                                        const lattice::LatticeInstance& L) {
    SymplecticCertificate cert;
    size_t n = base.pair.dim();
    if (L.rank() != n || L.ambient_dim() != n) {
        cert.witness = "dimension mismatch";
        return cert;
    }
    const MatZ& B = L.coord_num();

    // Route (a): pairing through the t-laden sigma action; every entry's
    // t-coefficients must vanish identically.
    MatQ m_alg(n, n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        // coords of sigma(b_i)
        std::vector<AlgebraicScalar> sb(n, AlgebraicScalar(Rat(0)));
        for (size_t a = 0; a < n; ++a) {
            if (B(i, a) == 0) continue;
            for (size_t c = 0; c < n; ++c)
                sb[c] = sb[c] + base.sigma_coord(a, c) * Rat(B(i, a));
        }
        for (size_t j = 0; j < n; ++j) {
            AlgebraicScalar entry{Rat(0)};
            for (size_t a = 0; a < n; ++a) {
                for (size_t c = 0; c < n; ++c) {
                    if (B(j, c) == 0) continue;
                    entry = entry + sb[a] * base.pair.ambient_gram(a, c) * Rat(B(j, c));
                }
            }
            if (!entry.is_rational()) {
                cert.witness = "t-coefficients persist at (" + std::to_string(i) + "," +
                               std::to_string(j) + "): " + entry.str();
                return cert;
            }
            m_alg(i, j) = entry.rational_value();
        }
    }
    // Route (b): the rational pairing form.
    MatQ m_form = mat_mul(mat_mul(to_rational(B), base.sigma_pairing),
                          mat_transpose(to_rational(B)));
    if (!(m_alg == m_form)) {
        cert.witness = "sigma-route pairing disagrees with the rational form";
        return cert;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (m_alg(i, j).get_den() != 1) {
                cert.witness = "non-integral pairing at (" + std::to_string(i) + "," +
                               std::to_string(j) + "): " + to_string(m_alg(i, j));
                return cert;
            }
    cert.pairing_integral = true;
    cert.pairing = to_integer(m_alg);
    cert.det = det(cert.pairing);
    cert.det_unimodular = (cert.det == 1 || cert.det == -1);
    if (!cert.det_unimodular) {
        cert.witness = "pairing determinant " + to_string(cert.det) + " is not unimodular";
        return cert;
    }
    AlgebraicScalar vol = L.volume_sq();
    cert.vol_one = (vol == AlgebraicScalar(Rat(1)));
    if (!cert.vol_one) {
        cert.witness = "Vol(L)^2 = " + vol.str() + " != 1";
        return cert;
    }
    return cert;
}

lift::ScanReport symplectic_scan(const SymplecticBase& base, const Rat& r_sq,
                                 const std::string& constraint, const Rat& epsilon,
                                 std::vector<SymplecticCertificate>* certs,
                                 std::uint64_t guard, lattice::EnumStats* stats) {
    lift::ScanReport rep = lift::family_scan(base.pair, r_sq, constraint, epsilon, guard, stats);
    rep.base_kind = "symplectic";
    for (const auto& lr : rep.lines) {
        lattice::LatticeInstance lc = lift_line(base.pair, lr.line);
        SymplecticCertificate c = verify_symplectic(base, lc);
        if (!c.ok())
            throw FalsificationError("symplectic_scan: line " + lr.line.str() +
                                     " failed certification: " + c.witness);
        if (certs) certs->push_back(std::move(c));
    }
    return rep;
}

CondsReport conds_predicate(const cyclo::CyclotomicField& field, const ideals::SplitPrime& P,
                            bool symplectic_base, lattice::EnumStats* stats) {
    CondsReport rep;
    rep.m = field.m();
    rep.q = P.q;
    rep.symplectic = symplectic_base;
    unsigned phi = field.phi();

    // Assemble the base to get exact mu^2(P Lambda_0) and Vol(Lambda_0).
    // Scaled covering bound: tau^2(scale A) = (phi/4) (|d_K| scale_sq^phi
    // Vol(A)^2)^(1/phi); scale_sq^phi = (q |d_K|)^{+-1} is rational, so each
    // bound lives in its own clean tower.
    auto scaled_tau_sq = [&](const AlgebraicScalar& scale_sq, const ideals::FractionalIdeal& a) {
        Rat scale_pow = scale_sq.pow(phi).rational_value();
        Rat dprime = Rat(field.disc_abs()) * scale_pow * ideals::ideal_volume_sq(field, a);
        std::vector<Rat> c(phi, Rat(0));
        c[1] = make_rat(phi, 4);
        return AlgebraicScalar(phi, dprime, std::move(c));
    };
    AlgebraicScalar vol0_sq{Rat(0)};
    AlgebraicScalar mu_sq{Rat(0)};
    AlgebraicScalar tau1_sq{Rat(0)}, tau2_sq{Rat(0)};
    if (symplectic_base) {
        SymplecticBase sb = build_symplectic_base(field, P);
        vol0_sq = sb.pair.lambda0_volume_sq();
        mu_sq = lattice::shortest_vector(sb.pair.p_lambda0(), stats).norm_sq;
        tau1_sq = scaled_tau_sq(sb.pair.scale1_sq, sb.pair.ideal1);
        tau2_sq = scaled_tau_sq(sb.pair.scale2_sq, sb.pair.ideal2);
    } else {
        lift::BasePair bp = lift::make_plain_base(field, P);
        vol0_sq = bp.lambda0_volume_sq();
        mu_sq = lattice::shortest_vector(bp.p_lambda0(), stats).norm_sq;
        tau1_sq = lattice::covering_radius_upper(field, bp.ideal1);
        tau2_sq = lattice::covering_radius_upper(field, bp.ideal2);
    }

    const mpfr_prec_t start_prec = 256;
    for (mpfr_prec_t prec = start_prec; prec <= 4096; prec *= 2) {
        // rho_m^2 = (phi / (pi e)) (q Vol(Lambda_0))^(1/phi)
        FInterval pi_e = FInterval::pi(prec) * FInterval::exact_ui(1, prec).exp();
        FInterval qvol = FInterval::from_int(P.q, prec) * vol0_sq.to_interval(prec).sqrt();
        FInterval rho_sq =
            FInterval::from_int(Int(phi), prec) / pi_e * qvol.rootn(phi);
        FInterval tau0_sq = tau1_sq.to_interval(prec) + tau2_sq.to_interval(prec);
        FInterval ratio = (FInterval::from_int(Int(phi), prec).pow_ui(2) * tau0_sq / rho_sq).sqrt();
        FInterval mu_quarter = mu_sq.to_interval(prec) / FInterval::exact_ui(4, prec);

        if (prec == start_prec) {
            BigFloat t(prec);
            mpfr_add(t.get(), ratio.lo().get(), ratio.hi().get(), MPFR_RNDN);
            mpfr_div_ui(t.get(), t.get(), 2, MPFR_RNDN);
            rep.ratio_str = t.str(30);
            mpfr_add(t.get(), rho_sq.lo().get(), rho_sq.hi().get(), MPFR_RNDN);
            mpfr_div_ui(t.get(), t.get(), 2, MPFR_RNDN);
            rep.rho_sq_str = t.str(30);
            mpfr_add(t.get(), mu_quarter.lo().get(), mu_quarter.hi().get(), MPFR_RNDN);
            mpfr_div_ui(t.get(), t.get(), 2, MPFR_RNDN);
            rep.mu_quarter_str = t.str(30);
        }

        // (ii) rho_m < mu / 2  <=>  rho_sq < mu_sq / 4
        bool lt = rho_sq.certainly_less(mu_quarter);
        bool gt = mu_quarter.certainly_less(rho_sq);
        // intermediate inequality rho_m^2 < (1/4) phi q^(2/phi)
        FInterval rhs = FInterval::from_int(Int(phi), prec) *
                        FInterval::from_int(P.q, prec).pow_ui(2).rootn(phi) /
                        FInterval::exact_ui(4, prec);
        bool inter_lt = rho_sq.certainly_less(rhs);
        bool inter_gt = rhs.certainly_less(rho_sq);
        if ((lt || gt) && (inter_lt || inter_gt)) {
            rep.decided = true;
            rep.rho_lt_half_mu = lt;
            rep.intermediate_ok = inter_lt;
            break;
        }
    }
    rep.m_pow_lt_q = pow_int(field.m(), phi) < P.q;
    rep.binding = rep.rho_lt_half_mu ? "target_volume" : "min_half";
    return rep;
}

}  // namespace cyclat::symplectic
