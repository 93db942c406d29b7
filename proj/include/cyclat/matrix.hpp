#pragma once

#include "cyclat/basics.hpp"
#include "cyclat/scalar.hpp"

#include <cstddef>
#include <vector>

namespace cyclat {

template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t r, size_t c) : rows_(r), cols_(c), d_(r * c) {}
    Matrix(size_t r, size_t c, const T& fill) : rows_(r), cols_(c), d_(r * c, fill) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t i, size_t j) { return d_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return d_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n, T(0));
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::vector<T> row(size_t i) const {
        return std::vector<T>(d_.begin() + i * cols_, d_.begin() + (i + 1) * cols_);
    }

  private:
    size_t rows_, cols_;
    std::vector<T> d_;
};

using MatZ = Matrix<Int>;
using MatQ = Matrix<Rat>;
using MatS = Matrix<AlgebraicScalar>;

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw PreconditionError("mat_mul: shape mismatch");
    Matrix<T> r(a.rows(), b.cols(), T(0));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            for (size_t j = 0; j < b.cols(); ++j) r(i, j) = r(i, j) + aik * b(k, j);
        }
    return r;
}

template <typename T>
Matrix<T> mat_transpose(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows(), T(0));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

MatQ to_rational(const MatZ& a);
MatS to_scalar(const MatQ& a);
MatS to_scalar(const MatZ& a);

// Fraction-free Bareiss determinant.
Int det(const MatZ& a);
Rat det(const MatQ& a);
// Determinant over a scalar tower: entries are lifted to Q[X], the
// determinant is computed fraction-free in Q[X] and reduced by X^e - D.
AlgebraicScalar det(const MatS& a);

// Row-style Hermite normal form of the row span: echelon, positive pivots,
// entries above each pivot reduced into [0, pivot). Zero rows are dropped.
MatZ hnf(const MatZ& a);

// Smith normal form S = U * A * V with U, V unimodular and the diagonal
// divisibility chain d1 | d2 | ...
struct SnfResult {
    MatZ S, U, V;
};
SnfResult snf(const MatZ& a);

MatQ inverse(const MatQ& a);  // throws FalsificationError when singular

// Solve X * A = B over Q (A square nonsingular).
MatQ solve_left(const MatQ& a, const MatQ& b);

bool is_integral(const MatQ& a);
MatZ to_integer(const MatQ& a);  // requires is_integral

}  // namespace cyclat
