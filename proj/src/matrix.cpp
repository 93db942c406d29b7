#include "cyclat/matrix.hpp"

#include "cyclat/poly.hpp"

namespace cyclat {

MatQ to_rational(const MatZ& a) {
    MatQ r(a.rows(), a.cols(), Rat(0));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
    return r;
}

MatS to_scalar(const MatQ& a) {
    MatS r(a.rows(), a.cols(), AlgebraicScalar(Rat(0)));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = AlgebraicScalar(a(i, j));
    return r;
}

MatS to_scalar(const MatZ& a) { return to_scalar(to_rational(a)); }

Int det(const MatZ& a) {
    if (a.rows() != a.cols()) throw PreconditionError("det: square matrix required");
    size_t n = a.rows();
    if (n == 0) return 1;
    MatZ b = a;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (b(k, k) == 0) {
            size_t swap_row = n;
            for (size_t i = k + 1; i < n; ++i)
                if (b(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(b(k, j), b(swap_row, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int num = b(i, j) * b(k, k) - b(i, k) * b(k, j);
                Int q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (r != 0) throw FalsificationError("det: Bareiss division not exact");
                b(i, j) = q;
            }
        prev = b(k, k);
    }
    return sign > 0 ? b(n - 1, n - 1) : -b(n - 1, n - 1);
}

Rat det(const MatQ& a) {
    if (a.rows() != a.cols()) throw PreconditionError("det: square matrix required");
    size_t n = a.rows();
    if (n == 0) return Rat(1);
    Int d = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a(i, j).get_den().get_mpz_t());
    MatZ b(n, n, Int(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat scaled = a(i, j) * Rat(d);
            b(i, j) = scaled.get_num();
        }
    return make_rat(det(b), pow_int(d, n));
}

AlgebraicScalar det(const MatS& a) {
    if (a.rows() != a.cols()) throw PreconditionError("det: square matrix required");
    size_t n = a.rows();
    if (n == 0) return AlgebraicScalar(Rat(1));
    // Locate the tower; fall back to the rational path when everything is rational.
    unsigned e = 1;
    Rat D(1);
    bool tower = false;
    for (size_t i = 0; i < n && !tower; ++i)
        for (size_t j = 0; j < n && !tower; ++j)
            if (!a(i, j).is_rational()) {
                e = a(i, j).extension_degree();
                D = a(i, j).radicand();
                tower = true;
            }
    if (!tower) {
        MatQ q(n, n, Rat(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) q(i, j) = a(i, j).rational_value();
        return AlgebraicScalar(det(q));
    }

    Matrix<QPoly> b(n, n, QPoly{});
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            AlgebraicScalar s = a(i, j);
            AlgebraicScalar aligned = s + AlgebraicScalar(e, D, std::vector<Rat>(e, Rat(0)));
            QPoly p = aligned.coeffs();
            qpoly_trim(p);
            b(i, j) = p;
        }
    QPoly prev{Rat(1)};
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (b(k, k).empty()) {
            size_t swap_row = n;
            for (size_t i = k + 1; i < n; ++i)
                if (!b(i, k).empty()) {
                    swap_row = i;
                    break;
                }
            if (swap_row == n) return AlgebraicScalar(e, D, std::vector<Rat>(e, Rat(0)));
            for (size_t j = 0; j < n; ++j) std::swap(b(k, j), b(swap_row, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                QPoly num = qpoly_sub(qpoly_mul(b(i, j), b(k, k)), qpoly_mul(b(i, k), b(k, j)));
                b(i, j) = num.empty() ? num : qpoly_divexact(num, prev);
            }
        prev = b(k, k);
    }
    QPoly result = b(n - 1, n - 1);
    if (sign < 0)
        for (auto& c : result) c = -c;
    // Reduce mod X^e - D.
    QPoly modulus(e + 1, Rat(0));
    modulus[0] = -D;
    modulus[e] = Rat(1);
    QPoly q, r;
    qpoly_divrem(result, modulus, q, r);
    std::vector<Rat> coeffs(r.begin(), r.end());
    return AlgebraicScalar(e, D, std::move(coeffs));
}

MatZ hnf(const MatZ& a) {
    size_t r = a.rows(), c = a.cols();
    MatZ b = a;
    size_t row = 0;
    for (size_t col = 0; col < c && row < r; ++col) {
        // Clear everything below `row` in this column by gcd steps.
        while (true) {
            size_t piv = r;
            for (size_t i = row; i < r; ++i) {
                if (b(i, col) == 0) continue;
                if (piv == r || cmp(abs(b(i, col)), abs(b(piv, col))) < 0) piv = i;
            }
            if (piv == r) break;  // column is zero from `row` down
            if (piv != row)
                for (size_t j = 0; j < c; ++j) std::swap(b(row, j), b(piv, j));
            bool reduced_all = true;
            for (size_t i = row + 1; i < r; ++i) {
                if (b(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), b(i, col).get_mpz_t(), b(row, col).get_mpz_t());
                for (size_t j = 0; j < c; ++j) b(i, j) -= q * b(row, j);
                if (b(i, col) != 0) reduced_all = false;
            }
            if (reduced_all) break;
        }
        if (b(row, col) == 0) continue;
        if (b(row, col) < 0)
            for (size_t j = 0; j < c; ++j) b(row, j) = -b(row, j);
        for (size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), b(i, col).get_mpz_t(), b(row, col).get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < c; ++j) b(i, j) -= q * b(row, j);
        }
        ++row;
    }
    MatZ out(row, c, Int(0));
    for (size_t i = 0; i < row; ++i)
        for (size_t j = 0; j < c; ++j) out(i, j) = b(i, j);
    return out;
}

namespace {

void snf_swap_rows(MatZ& s, MatZ& u, size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < s.cols(); ++j) std::swap(s(a, j), s(b, j));
    for (size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
}

void snf_swap_cols(MatZ& s, MatZ& v, size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < s.rows(); ++i) std::swap(s(i, a), s(i, b));
    for (size_t i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
}

// row_a -= q * row_b
void snf_row_op(MatZ& s, MatZ& u, size_t a, size_t b, const Int& q) {
    for (size_t j = 0; j < s.cols(); ++j) s(a, j) -= q * s(b, j);
    for (size_t j = 0; j < u.cols(); ++j) u(a, j) -= q * u(b, j);
}

// col_a -= q * col_b
void snf_col_op(MatZ& s, MatZ& v, size_t a, size_t b, const Int& q) {
    for (size_t i = 0; i < s.rows(); ++i) s(i, a) -= q * s(i, b);
    for (size_t i = 0; i < v.rows(); ++i) v(i, a) -= q * v(i, b);
}

}  // namespace

SnfResult snf(const MatZ& a) {
    size_t r = a.rows(), c = a.cols();
    SnfResult res{a, MatZ::identity(r), MatZ::identity(c)};
    MatZ& s = res.S;
    MatZ& u = res.U;
    MatZ& v = res.V;
    size_t m = std::min(r, c);
    for (size_t k = 0; k < m; ++k) {
        while (true) {
            // Find the minimal nonzero entry in the trailing block.
            size_t pi = r, pj = c;
            for (size_t i = k; i < r; ++i)
                for (size_t j = k; j < c; ++j) {
                    if (s(i, j) == 0) continue;
                    if (pi == r || cmp(abs(s(i, j)), abs(s(pi, pj))) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == r) goto done;  // trailing block is zero
            snf_swap_rows(s, u, k, pi);
            snf_swap_cols(s, v, k, pj);
            bool clean = true;
            for (size_t i = k + 1; i < r; ++i) {
                if (s(i, k) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s(i, k).get_mpz_t(), s(k, k).get_mpz_t());
                snf_row_op(s, u, i, k, q);
                if (s(i, k) != 0) clean = false;
            }
            for (size_t j = k + 1; j < c; ++j) {
                if (s(k, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s(k, j).get_mpz_t(), s(k, k).get_mpz_t());
                snf_col_op(s, v, j, k, q);
                if (s(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the remaining block by the pivot.
            bool divisible = true;
            for (size_t i = k + 1; i < r && divisible; ++i)
                for (size_t j = k + 1; j < c && divisible; ++j)
                    if (s(i, j) % s(k, k) != 0) {
                        snf_row_op(s, u, k, i, Int(-1));  // row_k += row_i
                        divisible = false;
                    }
            if (divisible) break;
        }
        if (s(k, k) < 0) {
            for (size_t j = 0; j < c; ++j) s(k, j) = -s(k, j);
            for (size_t j = 0; j < r; ++j) u(k, j) = -u(k, j);
        }
    }
done:
    return res;
}

MatQ inverse(const MatQ& a) {
    if (a.rows() != a.cols()) throw PreconditionError("inverse: square matrix required");
    size_t n = a.rows();
    MatQ b = a;
    MatQ inv = MatQ::identity(n);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = n;
        for (size_t i = k; i < n; ++i)
            if (b(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv == n) throw FalsificationError("inverse: singular matrix");
        if (piv != k)
            for (size_t j = 0; j < n; ++j) {
                std::swap(b(k, j), b(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        Rat p = b(k, k);
        for (size_t j = 0; j < n; ++j) {
            b(k, j) /= p;
            inv(k, j) /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || b(i, k) == 0) continue;
            Rat f = b(i, k);
            for (size_t j = 0; j < n; ++j) {
                b(i, j) -= f * b(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

MatQ solve_left(const MatQ& a, const MatQ& b) { return mat_mul(b, inverse(a)); }

bool is_integral(const MatQ& a) {
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (a(i, j).get_den() != 1) return false;
    return true;
}

MatZ to_integer(const MatQ& a) {
    if (!is_integral(a)) throw PreconditionError("to_integer: matrix has denominators");
    MatZ r(a.rows(), a.cols(), Int(0));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).get_num();
    return r;
}

}  // namespace cyclat
