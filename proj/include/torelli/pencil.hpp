#pragma once

#include "torelli/binary_form.hpp"
#include "torelli/linmatrix.hpp"

namespace torelli {

/// Matrix pencil N(xi) = A xi0 + B xi1.
struct Pencil {
    Matrix A, B;

    Pencil(Matrix a, Matrix b);
    static Pencil zero(size_t rows, size_t cols, const Field& f);

    size_t rows() const { return A.rows(); }
    size_t cols() const { return A.cols(); }
    const Field& field() const { return A.field(); }

    Matrix eval(const Scalar& xi0, const Scalar& xi1) const;
    Pencil transpose() const { return Pencil(A.transpose(), B.transpose()); }
    Pencil left_mul(const Matrix& p) const { return Pencil(p * A, p * B); }
    Pencil right_mul(const Matrix& q) const { return Pencil(A * q, B * q); }
    Pencil block_diag(const Pencil& o) const;
    Pencil submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;
    bool operator==(const Pencil& o) const { return A == o.A && B == o.B; }

    /// det N(xi) as a binary form (square pencils).
    BinaryForm det_form() const;
};

/// Coefficient reshuffle between a 2 x n matrix of linear forms in z_0..z_n
/// and the n x (n+1) pencil N_{j,k} = sum_i a_{i,j,k} xi_i.
Pencil pencil_from_matrix(const LinMatrix& m);
LinMatrix matrix_from_pencil(const Pencil& n);

}  // namespace torelli
