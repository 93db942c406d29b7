#include "cyclat/lattice.hpp"

#include "cyclat/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cyclat::lattice {

namespace {

AlgebraicScalar scalar_zero_like(const MatS& g) {
    for (size_t i = 0; i < g.rows(); ++i)
        for (size_t j = 0; j < g.cols(); ++j)
            if (!g(i, j).is_rational())
                return AlgebraicScalar(g(i, j).extension_degree(), g(i, j).radicand(),
                                       std::vector<Rat>(g(i, j).extension_degree(), Rat(0)));
    return AlgebraicScalar(Rat(0));
}

}  // namespace

LatticeInstance::LatticeInstance(MatS ambient_gram, MatZ coord_num, Int coord_den)
    : ambient_gram_(std::move(ambient_gram)),
      coord_num_(std::move(coord_num)),
      coord_den_(std::move(coord_den)) {
    if (coord_den_ <= 0) throw PreconditionError("LatticeInstance: denominator must be positive");
    if (coord_num_.cols() != ambient_gram_.rows() || ambient_gram_.rows() != ambient_gram_.cols())
        throw PreconditionError("LatticeInstance: shape mismatch");
    size_t k = coord_num_.rows(), n = coord_num_.cols();
    gram_ = MatS(k, k, scalar_zero_like(ambient_gram_));
    Rat scale = make_rat(1, coord_den_ * coord_den_);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            AlgebraicScalar acc = scalar_zero_like(ambient_gram_);
            for (size_t a = 0; a < n; ++a) {
                if (coord_num_(i, a) == 0) continue;
                for (size_t b = 0; b < n; ++b) {
                    if (coord_num_(j, b) == 0) continue;
                    acc = acc + ambient_gram_(a, b) * Rat(coord_num_(i, a) * coord_num_(j, b));
                }
            }
            gram_(i, j) = acc * scale;
            gram_(j, i) = gram_(i, j);
        }
    }
    gram_rational_ = true;
    for (size_t i = 0; i < k && gram_rational_; ++i)
        for (size_t j = 0; j < k && gram_rational_; ++j)
            if (!gram_(i, j).is_rational()) gram_rational_ = false;
    if (gram_rational_) {
        gram_q_ = MatQ(k, k, Rat(0));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) gram_q_(i, j) = gram_(i, j).rational_value();
    }
}

LatticeInstance LatticeInstance::from_ideal(const cyclo::CyclotomicField& field,
                                            const ideals::FractionalIdeal& a) {
    return LatticeInstance(to_scalar(field.trace_gram()), a.numerator_hnf, a.denominator);
}

AlgebraicScalar LatticeInstance::norm_sq(const std::vector<Int>& x) const {
    size_t k = rank();
    if (x.size() != k) throw PreconditionError("norm_sq: wrong length");
    if (gram_rational_) {
        Rat acc(0);
        for (size_t i = 0; i < k; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < k; ++j) {
                if (x[j] == 0) continue;
                acc += gram_q_(i, j) * Rat(x[i] * x[j]);
            }
        }
        return AlgebraicScalar(acc);
    }
    AlgebraicScalar acc = scalar_zero_like(gram_);
    for (size_t i = 0; i < k; ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < k; ++j) {
            if (x[j] == 0) continue;
            acc = acc + gram_(i, j) * Rat(x[i] * x[j]);
        }
    }
    return acc;
}

AlgebraicScalar LatticeInstance::dist_sq(const std::vector<Int>& x,
                                         const std::vector<Rat>& c) const {
    size_t k = rank();
    if (x.size() != k || c.size() != k) throw PreconditionError("dist_sq: wrong length");
    std::vector<Rat> y(k);
    for (size_t i = 0; i < k; ++i) y[i] = Rat(x[i]) - c[i];
    if (gram_rational_) {
        Rat acc(0);
        for (size_t i = 0; i < k; ++i) {
            if (y[i] == 0) continue;
            for (size_t j = 0; j < k; ++j) {
                if (y[j] == 0) continue;
                acc += gram_q_(i, j) * y[i] * y[j];
            }
        }
        return AlgebraicScalar(acc);
    }
    AlgebraicScalar acc = scalar_zero_like(gram_);
    for (size_t i = 0; i < k; ++i) {
        if (y[i] == 0) continue;
        for (size_t j = 0; j < k; ++j) {
            if (y[j] == 0) continue;
            acc = acc + gram_(i, j) * (y[i] * y[j]);
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// LLL

LatticeInstance lll_reduce(const LatticeInstance& L, const Rat& delta, MatZ* transform) {
    if (!(delta > make_rat(1, 4) && delta < 1))
        throw PreconditionError("lll_reduce: delta must lie in (1/4, 1)");
    size_t k = L.rank();
    MatZ C = L.coord_num();
    MatZ U = MatZ::identity(k);
    MatS G = L.gram();
    AlgebraicScalar zero = scalar_zero_like(G);
    if (k <= 1) {
        if (transform) *transform = U;
        return L;
    }

    std::vector<std::vector<AlgebraicScalar>> mu(k, std::vector<AlgebraicScalar>(k, zero));
    std::vector<AlgebraicScalar> B(k, zero);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < i; ++j) {
            AlgebraicScalar acc = G(i, j);
            for (size_t l = 0; l < j; ++l) acc = acc - mu[j][l] * mu[i][l] * B[l];
            mu[i][j] = acc / B[j];
        }
        AlgebraicScalar acc = G(i, i);
        for (size_t l = 0; l < i; ++l) acc = acc - mu[i][l] * mu[i][l] * B[l];
        B[i] = acc;
        if (B[i].sign() <= 0) throw PreconditionError("lll_reduce: rows not independent");
    }

    auto row_op = [&](size_t i, size_t j, const Int& q) {
        // b_i -= q b_j
        AlgebraicScalar gii = G(i, i) - G(i, j) * Rat(2 * q) + G(j, j) * Rat(q * q);
        for (size_t c = 0; c < k; ++c)
            if (c != i) G(i, c) = G(i, c) - G(j, c) * Rat(q);
        for (size_t r = 0; r < k; ++r)
            if (r != i) G(r, i) = G(i, r);
        G(i, i) = gii;
        for (size_t c = 0; c < C.cols(); ++c) C(i, c) -= q * C(j, c);
        for (size_t c = 0; c < k; ++c) U(i, c) -= q * U(j, c);
        for (size_t l = 0; l < j; ++l) mu[i][l] = mu[i][l] - mu[j][l] * Rat(q);
        mu[i][j] = mu[i][j] - AlgebraicScalar(Rat(q));
    };

    auto size_reduce = [&](size_t i, size_t j) {
        Int q = mu[i][j].nearest_int();
        if (q != 0) row_op(i, j, q);
    };

    auto swap_step = [&](size_t kk) {
        // swap rows kk-1 and kk everywhere
        for (size_t c = 0; c < C.cols(); ++c) std::swap(C(kk - 1, c), C(kk, c));
        for (size_t c = 0; c < k; ++c) std::swap(U(kk - 1, c), U(kk, c));
        for (size_t c = 0; c < k; ++c) std::swap(G(kk - 1, c), G(kk, c));
        for (size_t r = 0; r < k; ++r) std::swap(G(r, kk - 1), G(r, kk));
        AlgebraicScalar mu_old = mu[kk][kk - 1];
        AlgebraicScalar b_top = B[kk] + mu_old * mu_old * B[kk - 1];
        mu[kk][kk - 1] = mu_old * B[kk - 1] / b_top;
        B[kk] = B[kk - 1] * B[kk] / b_top;
        B[kk - 1] = b_top;
        for (size_t j = 0; j + 1 < kk; ++j) std::swap(mu[kk - 1][j], mu[kk][j]);
        for (size_t l = kk + 1; l < k; ++l) {
            AlgebraicScalar t = mu[l][kk];
            mu[l][kk] = mu[l][kk - 1] - mu_old * t;
            mu[l][kk - 1] = t + mu[kk][kk - 1] * mu[l][kk];
        }
    };

    AlgebraicScalar delta_s{delta};
    size_t kk = 1;
    while (kk < k) {
        size_reduce(kk, kk - 1);
        AlgebraicScalar lhs = B[kk];
        AlgebraicScalar rhs = (delta_s - mu[kk][kk - 1] * mu[kk][kk - 1]) * B[kk - 1];
        if (lhs.compare(rhs) >= 0) {
            for (size_t j = kk - 1; j-- > 0;) size_reduce(kk, j);
            ++kk;
        } else {
            swap_step(kk);
            kk = (kk > 1) ? kk - 1 : 1;
        }
    }

    if (transform) *transform = U;
    return LatticeInstance(L.ambient_gram(), C, L.coord_den());
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct FloatGso {
    size_t k = 0;
    std::vector<std::vector<double>> mu;
    std::vector<double> B;
};

FloatGso build_gso(const MatS& gram) {
    size_t k = gram.rows();
    std::vector<std::vector<double>> g(k, std::vector<double>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) g[i][j] = gram(i, j).to_interval(160).mid_double();
    FloatGso out;
    out.k = k;
    out.mu.assign(k, std::vector<double>(k, 0.0));
    out.B.assign(k, 0.0);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < i; ++j) {
            double acc = g[i][j];
            for (size_t l = 0; l < j; ++l) acc -= out.mu[j][l] * out.mu[i][l] * out.B[l];
            out.mu[i][j] = acc / out.B[j];
        }
        double acc = g[i][i];
        for (size_t l = 0; l < i; ++l) acc -= out.mu[i][l] * out.mu[i][l] * out.B[l];
        out.B[i] = acc;
        if (!(out.B[i] > 0))
            throw FalsificationError("enumeration: numeric Gram-Schmidt degenerated");
    }
    return out;
}

// Depth-first Fincke-Pohst sweep: visits every integer point whose float
// quadratic value is at most `bound`; exactness comes from the caller's
// re-verification of each leaf.
void enum_rec(const FloatGso& g, const std::vector<double>& shift, double bound,
              std::vector<long>& x, int level, double partial, EnumStats* stats,
              const std::function<void(const std::vector<long>&)>& leaf) {
    if (level < 0) {
        leaf(x);
        return;
    }
    size_t i = static_cast<size_t>(level);
    double center = shift[i];
    for (size_t j = i + 1; j < g.k; ++j)
        center -= g.mu[j][i] * (static_cast<double>(x[j]) - shift[j]);
    double rem = bound - partial;
    if (rem < 0) return;
    double w = std::sqrt(rem / g.B[i]) + 1e-9;
    long from = static_cast<long>(std::ceil(center - w));
    long to = static_cast<long>(std::floor(center + w));
    for (long v = from; v <= to; ++v) {
        double d = static_cast<double>(v) - center;
        double term = g.B[i] * d * d;
        if (partial + term > bound) continue;
        if (stats) ++stats->nodes;
        x[i] = v;
        enum_rec(g, shift, bound, x, level - 1, partial + term, stats, leaf);
    }
    x[i] = 0;
}

std::vector<Int> to_int_vec(const std::vector<long>& x) {
    std::vector<Int> v(x.size());
    for (size_t i = 0; i < x.size(); ++i) v[i] = x[i];
    return v;
}

std::vector<Int> map_coords(const std::vector<Int>& x, const MatZ& u) {
    std::vector<Int> out(u.cols(), Int(0));
    for (size_t i = 0; i < u.rows(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < u.cols(); ++j) out[j] += x[i] * u(i, j);
    }
    return out;
}

bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Int> canonical_sign(const std::vector<Int>& v) {
    std::vector<Int> neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    return lex_less(neg, v) ? neg : v;
}

double upper_double(const AlgebraicScalar& s) {
    FInterval v = s.to_interval(160);
    double d = mpfr_get_d(v.hi().get(), MPFR_RNDU);
    return d;
}

}  // namespace

SvpResult shortest_vector(const LatticeInstance& L, EnumStats* stats) {
    if (L.rank() == 0) throw PreconditionError("shortest_vector: empty basis");
    MatZ U;
    LatticeInstance R = lll_reduce(L, make_rat(99, 100), &U);
    size_t k = R.rank();

    // Initial candidate: the best basis row.
    std::vector<Int> best_coords;
    AlgebraicScalar best_norm{Rat(0)};
    bool have = false;
    for (size_t i = 0; i < k; ++i) {
        std::vector<Int> e(k, Int(0));
        e[i] = 1;
        AlgebraicScalar n = R.norm_sq(e);
        std::vector<Int> orig = canonical_sign(map_coords(e, U));
        if (!have || n.compare(best_norm) < 0 ||
            (n.compare(best_norm) == 0 && lex_less(orig, best_coords))) {
            best_norm = n;
            best_coords = orig;
            have = true;
        }
    }

    FloatGso g = build_gso(R.gram());
    std::vector<long> x(k, 0);
    // The float bound shrinks as better exact candidates appear but always
    // stays above the exact optimum, so no minimal vector is pruned.
    double bound = upper_double(best_norm) * (1.0 + 1e-9) + 1e-12;
    std::function<void(int, double)> rec = [&](int level, double partial) {
        if (level < 0) {
            bool all_zero = true;
            for (long c : x)
                if (c != 0) all_zero = false;
            if (all_zero) return;
            if (stats) ++stats->exact_checks;
            std::vector<Int> xv = to_int_vec(x);
            AlgebraicScalar n = R.norm_sq(xv);
            int cmp = n.compare(best_norm);
            if (cmp > 0) return;
            std::vector<Int> orig = canonical_sign(map_coords(xv, U));
            if (cmp < 0 || lex_less(orig, best_coords)) {
                best_norm = n;
                best_coords = orig;
                double nb = upper_double(best_norm) * (1.0 + 1e-9) + 1e-12;
                if (nb < bound) bound = nb;
            }
            return;
        }
        size_t i = static_cast<size_t>(level);
        double center = 0.0;
        for (size_t j = i + 1; j < k; ++j) center -= g.mu[j][i] * static_cast<double>(x[j]);
        double rem = bound - partial;
        if (rem < 0) return;
        double w = std::sqrt(rem / g.B[i]) + 1e-9;
        long from = static_cast<long>(std::ceil(center - w));
        long to = static_cast<long>(std::floor(center + w));
        for (long v = from; v <= to; ++v) {
            double d = static_cast<double>(v) - center;
            double term = g.B[i] * d * d;
            if (partial + term > bound) continue;
            if (stats) ++stats->nodes;
            x[i] = v;
            rec(level - 1, partial + term);
        }
        x[i] = 0;
    };
    rec(static_cast<int>(k) - 1, 0.0);
    return SvpResult{best_coords, best_norm};
}

std::vector<std::vector<Int>> enumerate_ball(const LatticeInstance& L,
                                             const AlgebraicScalar& r_sq, std::uint64_t guard,
                                             EnumStats* stats) {
    if (r_sq.sign() < 0) throw PreconditionError("enumerate_ball: r_sq must be >= 0");
    MatZ U;
    LatticeInstance R = lll_reduce(L, make_rat(99, 100), &U);
    size_t k = R.rank();
    FloatGso g = build_gso(R.gram());
    std::vector<double> shift(k, 0.0);
    std::vector<long> x(k, 0);
    double bound = upper_double(r_sq) * (1.0 + 1e-9) + 1e-12;
    std::vector<std::vector<Int>> out;
    auto leaf = [&](const std::vector<long>& xi) {
        if (stats) ++stats->exact_checks;
        std::vector<Int> xv = to_int_vec(xi);
        AlgebraicScalar n = R.norm_sq(xv);
        if (n.compare(r_sq) > 0) return;
        out.push_back(map_coords(xv, U));
        if (out.size() > guard)
            throw ResourceError("enumerate_ball: ball size exceeds guard of " +
                                std::to_string(guard) + " points");
    };
    enum_rec(g, shift, bound, x, static_cast<int>(k) - 1, 0.0, stats, leaf);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

CvpResult closest_vector(const LatticeInstance& L, const std::vector<Rat>& target_ambient,
                         EnumStats* stats) {
    size_t k = L.rank(), n = L.ambient_dim();
    if (k != n) throw PreconditionError("closest_vector: square full-rank basis required");
    if (target_ambient.size() != n) throw PreconditionError("closest_vector: bad target length");
    // Exact basis coordinates of the target: c * (C / den) = target.
    MatQ tgt(1, n, Rat(0));
    for (size_t j = 0; j < n; ++j) tgt(0, j) = target_ambient[j] * Rat(L.coord_den());
    MatQ c = solve_left(to_rational(L.coord_num()), tgt);

    MatZ U;
    LatticeInstance R = lll_reduce(L, make_rat(99, 100), &U);
    // Shift in the reduced basis: c' = c U^{-1}.
    MatQ uq = to_rational(U);
    MatQ cr = solve_left(uq, c);
    std::vector<Rat> shift_exact = cr.row(0);

    FloatGso g = build_gso(R.gram());
    std::vector<double> shift(k);
    for (size_t i = 0; i < k; ++i) shift[i] = shift_exact[i].get_d();

    // Initial candidate: componentwise rounding.
    std::vector<Int> x0(k);
    for (size_t i = 0; i < k; ++i) x0[i] = AlgebraicScalar(shift_exact[i]).nearest_int();
    AlgebraicScalar best_dist = R.dist_sq(x0, shift_exact);
    std::vector<Int> best_coords = map_coords(x0, U);

    std::vector<long> x(k, 0);
    double bound = upper_double(best_dist) * (1.0 + 1e-9) + 1e-12;
    std::function<void(int, double)> rec = [&](int level, double partial) {
        if (level < 0) {
            if (stats) ++stats->exact_checks;
            std::vector<Int> xv = to_int_vec(x);
            AlgebraicScalar d = R.dist_sq(xv, shift_exact);
            int cmp = d.compare(best_dist);
            if (cmp > 0) return;
            std::vector<Int> orig = map_coords(xv, U);
            if (cmp < 0 || lex_less(orig, best_coords)) {
                best_dist = d;
                best_coords = orig;
                double nb = upper_double(best_dist) * (1.0 + 1e-9) + 1e-12;
                if (nb < bound) bound = nb;
            }
            return;
        }
        size_t i = static_cast<size_t>(level);
        double center = shift[i];
        for (size_t j = i + 1; j < k; ++j)
            center -= g.mu[j][i] * (static_cast<double>(x[j]) - shift[j]);
        double rem = bound - partial;
        if (rem < 0) return;
        double w = std::sqrt(rem / g.B[i]) + 1e-9;
        long from = static_cast<long>(std::ceil(center - w));
        long to = static_cast<long>(std::floor(center + w));
        for (long v = from; v <= to; ++v) {
            double d = static_cast<double>(v) - center;
            double term = g.B[i] * d * d;
            if (partial + term > bound) continue;
            if (stats) ++stats->nodes;
            x[i] = v;
            rec(level - 1, partial + term);
        }
        x[i] = 0;
    };
    rec(static_cast<int>(k) - 1, 0.0);
    return CvpResult{best_coords, best_dist};
}

LatticeInstance dual_basis(const LatticeInstance& L) {
    size_t k = L.rank(), n = L.ambient_dim();
    if (k != n) throw PreconditionError("dual_basis: square coordinate matrix required");
    MatQ amb(n, n, Rat(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!L.ambient_gram()(i, j).is_rational())
                throw PreconditionError("dual_basis: rational ambient Gram required");
            amb(i, j) = L.ambient_gram()(i, j).rational_value();
        }
    // Dual rows M with M * G_amb * (C/den)^T = I.
    MatQ cq = to_rational(L.coord_num());
    Rat inv_den = make_rat(1, L.coord_den());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) cq(i, j) *= inv_den;
    MatQ m = inverse(mat_mul(amb, mat_transpose(cq)));
    // Clear denominators.
    Int d = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den().get_mpz_t());
    MatZ num(n, n, Int(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat v = m(i, j) * Rat(d);
            num(i, j) = v.get_num();
        }
    return LatticeInstance(L.ambient_gram(), num, d);
}

AlgebraicScalar covering_radius_upper(const cyclo::CyclotomicField& field,
                                      const ideals::FractionalIdeal& a) {
    unsigned n = field.phi();
    Rat d = Rat(field.disc_abs()) * ideals::ideal_volume_sq(field, a);
    std::vector<Rat> coeffs(n, Rat(0));
    coeffs[1] = make_rat(n, 4);
    return AlgebraicScalar(n, d, std::move(coeffs));
}

FInterval ball_volume_from_rsq(unsigned n, const FInterval& r_sq, mpfr_prec_t prec) {
    if (n % 2 != 0) throw PreconditionError("ball_volume_from_rsq: even dimension required");
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), n / 2);
    FInterval pi_pow = FInterval::pi(prec).pow_ui(n / 2);
    return pi_pow * r_sq.pow_ui(n / 2) / FInterval::from_int(fact, prec);
}

DensityReport density_report(const LatticeInstance& L, EnumStats* stats) {
    SvpResult svp = shortest_vector(L, stats);
    AlgebraicScalar vol_sq = L.volume_sq();
    unsigned n = static_cast<unsigned>(L.rank());
    AlgebraicScalar quarter_mu = svp.norm_sq * make_rat(1, 4);
    AlgebraicScalar cd_sq = quarter_mu.pow(n) / vol_sq;

    const mpfr_prec_t prec = 256;
    FInterval vol_ball = ball_volume_from_rsq(n, quarter_mu.to_interval(prec), prec);
    FInterval delta = vol_ball / vol_sq.to_interval(prec).sqrt();
    BigFloat mid(prec);
    mpfr_add(mid.get(), delta.lo().get(), delta.hi().get(), MPFR_RNDN);
    mpfr_div_ui(mid.get(), mid.get(), 2, MPFR_RNDN);
    return DensityReport{svp.norm_sq, vol_sq, cd_sq, mid.str(30), mid.to_double()};
}

RadiusResult target_radius(const Rat& epsilon, const Int& m, const Int& q,
                           const AlgebraicScalar& vol0_sq, unsigned n) {
    if (!(epsilon > 0 && epsilon < 1))
        throw PreconditionError("target_radius: epsilon must lie in (0, 1)");
    if (n % 2 != 0) throw PreconditionError("target_radius: even dimension required");
    const mpfr_prec_t prec = 256;
    FInterval target = FInterval::from_rat((Rat(1) - epsilon) * Rat(m) * Rat(q), prec) *
                       vol0_sq.to_interval(prec).sqrt();

    // Newton iteration on g(x) = log Vol(B(sqrt(x))) - log V, with
    // g(x) = (n/2)(log pi + log x) - log((n/2)!) - log V and g' = (n/2)/x.
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), n / 2);
    BigFloat x(prec);
    mpfr_set_d(x.get(), 1.0, MPFR_RNDN);
    BigFloat log_v(prec), log_pi(prec), log_fact(prec), t1(prec), g(prec);
    {
        BigFloat vmid(prec);
        mpfr_add(vmid.get(), target.lo().get(), target.hi().get(), MPFR_RNDN);
        mpfr_div_ui(vmid.get(), vmid.get(), 2, MPFR_RNDN);
        mpfr_log(log_v.get(), vmid.get(), MPFR_RNDN);
    }
    mpfr_const_pi(log_pi.get(), MPFR_RNDN);
    mpfr_log(log_pi.get(), log_pi.get(), MPFR_RNDN);
    mpfr_set_z(log_fact.get(), fact.get_mpz_t(), MPFR_RNDN);
    mpfr_log(log_fact.get(), log_fact.get(), MPFR_RNDN);
    for (int iter = 0; iter < 500; ++iter) {
        // g = (n/2)(log pi + log x) - log fact - log V
        mpfr_log(t1.get(), x.get(), MPFR_RNDN);
        mpfr_add(g.get(), t1.get(), log_pi.get(), MPFR_RNDN);
        mpfr_mul_ui(g.get(), g.get(), n / 2, MPFR_RNDN);
        mpfr_sub(g.get(), g.get(), log_fact.get(), MPFR_RNDN);
        mpfr_sub(g.get(), g.get(), log_v.get(), MPFR_RNDN);
        if (mpfr_zero_p(g.get()) || mpfr_get_exp(g.get()) < -200) break;
        // x <- x (1 - (2/n) g)
        mpfr_mul_ui(t1.get(), g.get(), 2, MPFR_RNDN);
        mpfr_div_ui(t1.get(), t1.get(), n, MPFR_RNDN);
        mpfr_ui_sub(t1.get(), 1, t1.get(), MPFR_RNDN);
        mpfr_mul(x.get(), x.get(), t1.get(), MPFR_RNDN);
    }

    // Certify by interval bracketing around the Newton point; the tightest
    // bracket pins r^2 to ~2^-150 relative width.
    for (long ebits = 150; ebits >= 16; ebits -= 26) {
        BigFloat lo(prec), hi(prec), eps_f(prec);
        mpfr_set_ui_2exp(eps_f.get(), 1, -ebits, MPFR_RNDN);
        mpfr_ui_sub(lo.get(), 1, eps_f.get(), MPFR_RNDD);
        mpfr_mul(lo.get(), lo.get(), x.get(), MPFR_RNDD);
        mpfr_add_ui(hi.get(), eps_f.get(), 1, MPFR_RNDU);
        mpfr_mul(hi.get(), hi.get(), x.get(), MPFR_RNDU);
        FInterval lo_pt(prec), hi_pt(prec);
        mpfr_set(lo_pt.lo().get(), lo.get(), MPFR_RNDD);
        mpfr_set(lo_pt.hi().get(), lo.get(), MPFR_RNDU);
        mpfr_set(hi_pt.lo().get(), hi.get(), MPFR_RNDD);
        mpfr_set(hi_pt.hi().get(), hi.get(), MPFR_RNDU);
        FInterval vol_lo = ball_volume_from_rsq(n, lo_pt, prec);
        FInterval vol_hi = ball_volume_from_rsq(n, hi_pt, prec);
        if (vol_lo.certainly_less(target) && target.certainly_less(vol_hi)) {
            FInterval lo_iv(prec), hi_iv(prec);
            mpfr_set(lo_iv.lo().get(), lo.get(), MPFR_RNDD);
            mpfr_set(lo_iv.hi().get(), lo.get(), MPFR_RNDU);
            return RadiusResult{lo_iv.lo_rat(), hi_pt.hi_rat()};
        }
    }
    throw ResourceError("target_radius: certification failed");
}

}  // namespace cyclat::lattice
