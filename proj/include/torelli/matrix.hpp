#pragma once

#include <optional>
#include <vector>

#include "torelli/field.hpp"

namespace torelli {

using Vec = std::vector<Scalar>;

/// Dense field-homogeneous matrix, row-major.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), f_(Field::rational()) {}
    Matrix(size_t rows, size_t cols, const Field& f)
        : rows_(rows), cols_(cols), f_(f), e_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(size_t n, const Field& f);
    static Matrix from_rows(const std::vector<Vec>& rows, const Field& f);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field& field() const { return f_; }

    const Scalar& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
    void set(size_t i, size_t j, const Scalar& s);

    Vec row(size_t i) const;
    Vec col(size_t j) const;
    void set_row(size_t i, const Vec& v);

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    bool operator==(const Matrix& o) const;

    Vec apply(const Vec& v) const;           // M * v
    Vec apply_left(const Vec& v) const;      // v^T * M

    Matrix hstack(const Matrix& o) const;
    Matrix vstack(const Matrix& o) const;
    Matrix submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;
    bool is_zero() const;

private:
    size_t rows_, cols_;
    Field f_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix rref;
    std::vector<size_t> pivot_cols;
    size_t rank = 0;
};

/// Reduced row-echelon form with deterministic pivoting (first nonzero entry
/// scanning columns left-to-right, rows in order). Rational matrices go
/// through fraction-free Bareiss elimination internally.
RrefResult rref(const Matrix& m);

/// Basis of the right null space, from the RREF free-variable construction;
/// free columns in increasing order.
std::vector<Vec> kernel_basis(const Matrix& m);

struct SolveResult {
    std::optional<Vec> particular;  // free variables set to zero
    size_t nullity = 0;
};

/// Solves m*x = b; "no solution" is a value, not an error.
SolveResult solve(const Matrix& m, const Vec& b);

size_t rank_of(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws std::domain_error if singular
Scalar det(const Matrix& m);

// vector helpers
Scalar dot(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Scalar& s);
bool vec_is_zero(const Vec& a);
/// Returns lambda with a = lambda*b, if proportional (b != 0); nullopt otherwise.
std::optional<Scalar> proportionality(const Vec& a, const Vec& b);

}  // namespace torelli
