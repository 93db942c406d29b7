#include "cyclat/lift.hpp"

#include <algorithm>
#include <set>

namespace cyclat::lift {

namespace {

Int mod_p(const Int& x, const Int& p) {
    Int r = x % p;
    if (r < 0) r += p;
    return r;
}

Int inv_mod(const Int& x, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
        throw FalsificationError("inv_mod: not invertible");
    return r;
}

// Residue functional for one component: T = coords of P*A in A's basis;
// psi0(c) = (c V)[phi-1] mod p via Smith normal form, then normalized so the
// first basis row outside P*A maps to 1.
void build_psi(const MatZ& t, const Int& p, std::vector<Int>& psi, size_t& gen_index) {
    SnfResult s = snf(t);
    size_t n = t.rows();
    if (s.S(n - 1, n - 1) != p)
        throw FalsificationError("residue map: SNF tail is not p");
    std::vector<Int> raw(n);
    for (size_t j = 0; j < n; ++j) raw[j] = mod_p(s.V(j, n - 1), p);
    size_t gen = n;
    for (size_t j = 0; j < n; ++j)
        if (raw[j] != 0) {
            gen = j;
            break;
        }
    if (gen == n) throw FalsificationError("residue map: functional vanished");
    Int u_inv = inv_mod(raw[gen], p);
    psi.resize(n);
    for (size_t j = 0; j < n; ++j) psi[j] = mod_p(raw[j] * u_inv, p);
    gen_index = gen;
}

Int apply_psi(const std::vector<Int>& psi, const Int* coords, const Int& p) {
    Int acc = 0;
    for (size_t j = 0; j < psi.size(); ++j) acc += psi[j] * coords[j];
    return mod_p(acc, p);
}

FInterval scalar_sqrt_interval(const AlgebraicScalar& s, mpfr_prec_t prec) {
    return s.to_interval(prec).sqrt();
}

}  // namespace

std::vector<ProjectiveLine> lines(const ideals::SplitPrime& P) {
    std::vector<ProjectiveLine> out;
    out.push_back(ProjectiveLine{P.p, Int(0), Int(1)});
    for (Int b = 0; b < P.p; ++b) out.push_back(ProjectiveLine{P.p, Int(1), b});
    return out;
}

lattice::LatticeInstance BasePair::lambda0() const {
    return lattice::LatticeInstance(ambient_gram, MatZ::identity(dim()));
}

lattice::LatticeInstance BasePair::p_lambda0() const {
    return lattice::LatticeInstance(ambient_gram, pl0_reduced);
}

AlgebraicScalar BasePair::lambda0_volume_sq() const { return lambda0().volume_sq(); }

std::pair<Int, Int> BasePair::residue(const std::vector<Int>& coords) const {
    unsigned n = phi();
    if (coords.size() != 2 * n) throw PreconditionError("residue: wrong length");
    return {apply_psi(psi1, coords.data(), P.p), apply_psi(psi2, coords.data() + n, P.p)};
}

std::vector<Int> BasePair::codeword_lift(const Int& c1, const Int& c2) const {
    unsigned n = phi();
    std::vector<Int> z(2 * n, Int(0));
    z[gen1] = mod_p(c1, P.p);
    z[n + gen2] = mod_p(c2, P.p);
    return z;
}

BasePair make_base_pair(const cyclo::CyclotomicField& field, const ideals::SplitPrime& P,
                        const ideals::FractionalIdeal& a1, const ideals::FractionalIdeal& a2,
                        const AlgebraicScalar& scale1_sq, const AlgebraicScalar& scale2_sq) {
    if (P.p % field.m() != 1)
        throw PreconditionError("base pair: q = 1 mod m required for the orbit argument");
    BasePair b{field, P, a1, a2, scale1_sq, scale2_sq, MatS(), MatZ(), MatZ(), MatZ(), {}, {}, 0, 0};
    unsigned n = field.phi();

    MatQ g1 = ideals::ideal_gram(field, a1);
    MatQ g2 = ideals::ideal_gram(field, a2);
    b.ambient_gram = MatS(2 * n, 2 * n, AlgebraicScalar(Rat(0)));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            b.ambient_gram(i, j) = scale1_sq * g1(i, j);
            b.ambient_gram(n + i, n + j) = scale2_sq * g2(i, j);
        }

    ideals::FractionalIdeal p_ideal{P.hnf_basis, Int(1)};
    MatZ t1 = ideals::coords_in(ideals::ideal_product(field, p_ideal, a1), a1);
    MatZ t2 = ideals::coords_in(ideals::ideal_product(field, p_ideal, a2), a2);
    b.pl0_coords = MatZ(2 * n, 2 * n, Int(0));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            b.pl0_coords(i, j) = t1(i, j);
            b.pl0_coords(n + i, n + j) = t2(i, j);
        }

    // Multiplication by zeta in each component's basis (integral by
    // O_K-module stability).
    auto zeta_block = [&](const ideals::FractionalIdeal& a) {
        MatQ rows = a.basis_rows();
        MatQ zrows(n, n, Rat(0));
        for (unsigned i = 0; i < n; ++i) {
            cyclo::FieldElement zi = field.mul(cyclo::FieldElement{rows.row(i)},
                                               field.zeta_power(Int(1)));
            for (unsigned j = 0; j < n; ++j) zrows(i, j) = zi.coords[j];
        }
        MatQ x = solve_left(rows, zrows);
        if (!is_integral(x)) throw FalsificationError("base pair: ideal not zeta-stable");
        return to_integer(x);
    };
    MatZ z1 = zeta_block(a1), z2 = zeta_block(a2);
    b.zeta_mat = MatZ(2 * n, 2 * n, Int(0));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            b.zeta_mat(i, j) = z1(i, j);
            b.zeta_mat(n + i, n + j) = z2(i, j);
        }

    build_psi(t1, P.p, b.psi1, b.gen1);
    build_psi(t2, P.p, b.psi2, b.gen2);

    // Reduce the P Lambda_0 basis once; every SVP/CVP over it starts here.
    lattice::LatticeInstance raw(b.ambient_gram, b.pl0_coords);
    b.pl0_reduced = lattice::lll_reduce(raw).coord_num();

    // det(ambient) must factor as (s1 s2)^phi det(G1) det(G2).
    AlgebraicScalar lhs = det(b.ambient_gram);
    AlgebraicScalar rhs = scale1_sq.pow(n) * scale2_sq.pow(n) *
                          AlgebraicScalar(det(g1)) * AlgebraicScalar(det(g2));
    if (!(lhs == rhs)) throw FalsificationError("base pair: volume factorization failed");
    return b;
}

BasePair make_plain_base(const cyclo::CyclotomicField& field, const ideals::SplitPrime& P) {
    return make_base_pair(field, P, field.ring_of_integers(), field.ring_of_integers(),
                          AlgebraicScalar(Rat(1)), AlgebraicScalar(Rat(1)));
}

lattice::LatticeInstance lift_line(const BasePair& base, const ProjectiveLine& C) {
    if (C.p != base.P.p)
        throw PreconditionError("lift_line: line over prime " + to_string(C.p) +
                                " does not match base prime " + to_string(base.P.p));
    unsigned n = base.dim();
    std::vector<Int> z = base.codeword_lift(C.u1, C.u2);
    MatZ stack(n + base.phi(), n, Int(0));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) stack(i, j) = base.pl0_coords(i, j);
    // Orbit rows zeta^k z, k = 0..phi-1.
    std::vector<Int> cur = z;
    for (unsigned k = 0; k < base.phi(); ++k) {
        for (unsigned j = 0; j < n; ++j) stack(n + k, j) = cur[j];
        if (k + 1 < base.phi()) {
            std::vector<Int> next(n, Int(0));
            for (unsigned i = 0; i < n; ++i) {
                if (cur[i] == 0) continue;
                for (unsigned j = 0; j < n; ++j) next[j] += cur[i] * base.zeta_mat(i, j);
            }
            cur = std::move(next);
        }
    }
    MatZ h = hnf(stack);
    if (h.rows() != n) throw FalsificationError("lift_line: basis not full rank");
    // [Lambda_0 : Lambda_C] = p
    Int idx = abs(det(h));
    if (idx != base.P.p)
        throw FalsificationError("lift_line: index in Lambda_0 is " + to_string(idx) +
                                 ", expected p");
    // [Lambda_C : P Lambda_0] = p: containment plus the determinant ratio.
    MatQ contain = solve_left(to_rational(h), to_rational(base.pl0_coords));
    if (!is_integral(contain))
        throw FalsificationError("lift_line: P Lambda_0 not contained in Lambda_C");
    if (abs(det(to_integer(contain))) != base.P.p)
        throw FalsificationError("lift_line: index over P Lambda_0 is not p");
    return lattice::LatticeInstance(base.ambient_gram, h);
}

AlgebraicScalar coset_weight(const BasePair& base, const Int& c1, const Int& c2,
                             lattice::EnumStats* stats) {
    std::vector<Int> z = base.codeword_lift(c1, c2);
    bool zero = mod_p(c1, base.P.p) == 0 && mod_p(c2, base.P.p) == 0;
    if (zero) return AlgebraicScalar(Rat(0));
    std::vector<Rat> target(z.size());
    for (size_t i = 0; i < z.size(); ++i) target[i] = Rat(z[i]);
    lattice::CvpResult r = lattice::closest_vector(base.p_lambda0(), target, stats);
    return r.dist_sq;
}

std::uint64_t discrete_ball_count(const BasePair& base, const Rat& r_sq, std::uint64_t guard,
                                  lattice::EnumStats* stats) {
    lattice::SvpResult mu = lattice::shortest_vector(base.p_lambda0(), stats);
    AlgebraicScalar four_r{r_sq * 4};
    if (four_r.compare(mu.norm_sq) >= 0)
        throw PreconditionError("discrete_ball_count: r_sq = " + to_string(r_sq) +
                                " violates r_sq < mu^2(P Lambda_0)/4 = " +
                                (mu.norm_sq * make_rat(1, 4)).str() + " (mu^2 = " +
                                mu.norm_sq.str() + ")");
    return lattice::enumerate_ball(base.lambda0(), AlgebraicScalar(r_sq), guard, stats).size();
}

namespace {

// d^2 = min weight over the nonzero codewords of the line, using one
// representative per <root_a>-orbit of scalars (weights are orbit-invariant).
AlgebraicScalar line_min_weight(const BasePair& base, const ProjectiveLine& C,
                                lattice::EnumStats* stats) {
    const Int& p = base.P.p;
    std::set<Int> seen;
    bool have = false;
    AlgebraicScalar best{Rat(0)};
    for (Int lam = 1; lam < p; ++lam) {
        if (seen.count(lam)) continue;
        Int orb = lam;
        do {
            seen.insert(orb);
            orb = mod_p(orb * base.P.root_a, p);
        } while (orb != lam);
        AlgebraicScalar w =
            coset_weight(base, mod_p(C.u1 * lam, p), mod_p(C.u2 * lam, p), stats);
        if (!have || w.compare(best) < 0) {
            best = w;
            have = true;
        }
    }
    return best;
}

}  // namespace

MinimumCheck lattice_minimum_check(const BasePair& base, const ProjectiveLine& C,
                                   lattice::EnumStats* stats) {
    lattice::SvpResult mu_c = lattice::shortest_vector(lift_line(base, C), stats);
    lattice::SvpResult mu_p = lattice::shortest_vector(base.p_lambda0(), stats);
    AlgebraicScalar d_sq = line_min_weight(base, C, stats);
    AlgebraicScalar expected = (d_sq.compare(mu_p.norm_sq) <= 0) ? d_sq : mu_p.norm_sq;
    if (!(mu_c.norm_sq == expected))
        throw FalsificationError("lattice_minimum_check: SVP " + mu_c.norm_sq.str() +
                                 " != min{d^2, mu_P^2} = " + expected.str() + " on line " +
                                 C.str());
    return MinimumCheck{mu_c.norm_sq, d_sq, mu_p.norm_sq};
}

RadiusChoice choose_radius(const BasePair& base, const Rat& epsilon,
                           const std::optional<Rat>& r_sq_override,
                           lattice::EnumStats* stats) {
    lattice::SvpResult mu = lattice::shortest_vector(base.p_lambda0(), stats);
    AlgebraicScalar quarter = mu.norm_sq * make_rat(1, 4);
    if (r_sq_override) {
        Rat r = *r_sq_override;
        if (!(r > 0)) throw ConfigError("radius override must be positive");
        if (AlgebraicScalar(r).compare(quarter) >= 0)
            throw PreconditionError("radius override " + to_string(r) +
                                    " violates r_sq < mu^2(P Lambda_0)/4 = " +
                                    (mu.norm_sq * make_rat(1, 4)).str() + " (mu^2 = " +
                                    mu.norm_sq.str() + ")");
        return RadiusChoice{r, "override"};
    }
    const long shift = 40;
    auto dyadic_below = [&](const FInterval& lo_end) {
        BigFloat s(192);
        mpfr_mul_2si(s.get(), lo_end.lo().get(), shift, MPFR_RNDD);
        Int z;
        mpfr_get_z(z.get_mpz_t(), s.get(), MPFR_RNDD);
        z -= 1;
        return make_rat(z, Int(1) << shift);
    };
    Rat pick_mu = dyadic_below(quarter.to_interval(192));
    while (!(AlgebraicScalar(pick_mu).compare(quarter) < 0)) pick_mu -= make_rat(1, Int(1) << shift);

    lattice::RadiusResult target =
        lattice::target_radius(epsilon, base.field.m(), base.P.q, base.lambda0_volume_sq(),
                               base.dim());
    Rat pick_target = dyadic_below(FInterval::from_rat(target.r_sq_lo, 192));

    if (pick_target < pick_mu && pick_target > 0)
        return RadiusChoice{pick_target, "target_volume"};
    if (!(pick_mu > 0))
        throw PreconditionError("choose_radius: no positive admissible radius");
    return RadiusChoice{pick_mu, "min_half"};
}

ScanReport family_scan(const BasePair& base, const Rat& r_sq, const std::string& constraint,
                       const Rat& epsilon, std::uint64_t guard, lattice::EnumStats* stats) {
    const Int& p = base.P.p;
    const Int& m = base.field.m();
    unsigned n = base.dim();
    const mpfr_prec_t prec = 256;

    ScanReport rep;
    rep.m = m;
    rep.p = p;
    rep.root = base.P.root_a;
    rep.base_kind = "orthogonal";
    rep.r_sq = r_sq;
    rep.radius_constraint = constraint;
    rep.epsilon = epsilon;
    rep.vol0_sq = base.lambda0_volume_sq();

    lattice::SvpResult mu_p = lattice::shortest_vector(base.p_lambda0(), stats);
    rep.mu_pl0_sq = mu_p.norm_sq;
    if (AlgebraicScalar(r_sq * 4).compare(mu_p.norm_sq) >= 0)
        throw PreconditionError("family_scan: r_sq = " + to_string(r_sq) +
                                " violates r_sq < mu^2(P Lambda_0)/4 = " +
                                (mu_p.norm_sq * make_rat(1, 4)).str() + " (mu^2 = " +
                                mu_p.norm_sq.str() + ")");

    auto ball = lattice::enumerate_ball(base.lambda0(), AlgebraicScalar(r_sq), guard, stats);
    rep.ball_count = ball.size();

    // Classify nonzero ball points by their residue line.
    std::vector<ProjectiveLine> ls = lines(base.P);
    std::vector<std::uint64_t> counts(ls.size(), 0);
    auto line_index = [&](const Int& r1, const Int& r2) -> size_t {
        if (r1 == 0) {
            if (r2 == 0) throw FalsificationError("family_scan: ball point in P Lambda_0");
            return 0;  // (0:1)
        }
        Int b = mod_p(r2 * inv_mod(r1, p), p);
        return 1 + static_cast<size_t>(b.get_ui());
    };
    for (const auto& x : ball) {
        bool zero = true;
        for (const auto& c : x)
            if (c != 0) zero = false;
        if (zero) continue;
        auto [r1, r2] = base.residue(x);
        ++counts[line_index(r1, r2)];
    }

    rep.total_nonzero = 0;
    for (auto c : counts) rep.total_nonzero += c;
    rep.partition_ok = (rep.total_nonzero == rep.ball_count - 1);
    // E < |B|/q as integers: q * sum < (q+1) * |B|.
    rep.average_ok = p * Int(rep.total_nonzero) < (p + 1) * Int(rep.ball_count);
    rep.orbit_ok = true;
    for (auto c : counts)
        if (Int(c) % m != 0) rep.orbit_ok = false;

    AlgebraicScalar vol_c_expected = rep.vol0_sq * Rat(p * p);
    rep.volume_ok = true;
    rep.minimum_ok = true;
    rep.density_ok = true;
    rep.empty_svp_ok = true;

    bool have_best = false;
    for (size_t i = 0; i < ls.size(); ++i) {
        LineReport lr;
        lr.line = ls[i];
        lr.ball_count = counts[i];
        lattice::LatticeInstance lc = lift_line(base, ls[i]);
        lr.vol_sq = lc.volume_sq();
        if (!(lr.vol_sq == vol_c_expected)) rep.volume_ok = false;
        // Minimum formula, reusing the scan's mu(P Lambda_0).
        lattice::SvpResult mu_c = lattice::shortest_vector(lc, stats);
        AlgebraicScalar d_sq = line_min_weight(base, ls[i], stats);
        AlgebraicScalar expected =
            (d_sq.compare(mu_p.norm_sq) <= 0) ? d_sq : mu_p.norm_sq;
        if (!(mu_c.norm_sq == expected)) rep.minimum_ok = false;
        MinimumCheck mc{mu_c.norm_sq, d_sq, mu_p.norm_sq};
        lr.min_weight_sq = mc.d_sq;
        lr.mu_sq = mc.mu_sq;
        // An empty intersection must be corroborated by the line's own SVP.
        if (lr.ball_count == 0 && AlgebraicScalar(r_sq).compare(lr.mu_sq) >= 0)
            rep.empty_svp_ok = false;
        // Delta from mu and the exact volume.
        FInterval vol_ball =
            lattice::ball_volume_from_rsq(n, (lr.mu_sq * make_rat(1, 4)).to_interval(prec), prec);
        FInterval delta = vol_ball / scalar_sqrt_interval(lr.vol_sq, prec);
        BigFloat mid(prec);
        mpfr_add(mid.get(), delta.lo().get(), delta.hi().get(), MPFR_RNDN);
        mpfr_div_ui(mid.get(), mid.get(), 2, MPFR_RNDN);
        lr.delta_str = mid.str(30);
        // When d <= mu_P the density factors through the minimum distance:
        // Delta = Vol(B(d)) / (2^n q Vol(Lambda_0)); compare the two routes.
        if (mc.d_sq.compare(mc.mu_p_sq) <= 0) {
            lr.dens_formula_checked = true;
            FInterval lhs = delta;
            FInterval rhs = lattice::ball_volume_from_rsq(
                                n, (mc.d_sq * make_rat(1, 4)).to_interval(prec), prec) /
                            (FInterval::from_int(p, prec) *
                             scalar_sqrt_interval(rep.vol0_sq, prec));
            // certified 30-digit agreement: |lhs - rhs| < 1e-30 * rhs
            FInterval diff = lhs - rhs;
            FInterval tol = rhs * FInterval::from_rat(Rat(1) / pow_rat(Rat(10), 30), prec);
            bool close = diff.certainly_less(tol) && diff.neg().certainly_less(tol);
            lr.dens_formula_ok = close;
            if (!close) rep.density_ok = false;
        }
        rep.lines.push_back(std::move(lr));
        // Best line: empty intersection first, then minimal count; lines()
        // order is the lexicographic tie-break.
        if (!have_best ||
            (rep.lines[i].ball_count < rep.lines[rep.best_index].ball_count)) {
            rep.best_index = i;
            have_best = true;
        }
    }

    rep.empty_line_exists = rep.lines[rep.best_index].ball_count == 0;
    lattice::LatticeInstance best = lift_line(base, ls[rep.best_index]);
    rep.best_basis = best.coord_num();
    rep.best_delta_str = rep.lines[rep.best_index].delta_str;

    // Density target (1 - eps) m / 2^n for the report.
    {
        BigFloat t(prec);
        Rat target_num = (Rat(1) - epsilon) * Rat(m);
        mpfr_set_q(t.get(), target_num.get_mpq_t(), MPFR_RNDN);
        mpfr_div_2si(t.get(), t.get(), n, MPFR_RNDN);
        rep.target_density_str = t.str(30);
    }

    if (rep.empty_line_exists) {
        // Empty-line density bound: Delta(Lambda_C) > Vol(B(r)) / (2^n q Vol(Lambda_0)),
        // computed as Vol(B(r/2)) / (q Vol(Lambda_0)).
        lattice::SvpResult best_svp = lattice::shortest_vector(best, stats);
        rep.svp_exceeds_r_ok = AlgebraicScalar(r_sq).compare(best_svp.norm_sq) < 0;
        FInterval bound = lattice::ball_volume_from_rsq(
                              n, FInterval::from_rat(r_sq * make_rat(1, 4), prec), prec) /
                          (FInterval::from_int(p, prec) * scalar_sqrt_interval(rep.vol0_sq, prec));
        BigFloat bmid(prec);
        mpfr_add(bmid.get(), bound.lo().get(), bound.hi().get(), MPFR_RNDN);
        mpfr_div_ui(bmid.get(), bmid.get(), 2, MPFR_RNDN);
        rep.empty_bound_str = bmid.str(30);
        FInterval best_delta = lattice::ball_volume_from_rsq(
                                   n, (best_svp.norm_sq * make_rat(1, 4)).to_interval(prec),
                                   prec) /
                               scalar_sqrt_interval(best.volume_sq(), prec);
        rep.empty_bound_ok = bound.certainly_less(best_delta);
    }
    return rep;
}

}  // namespace cyclat::lift
