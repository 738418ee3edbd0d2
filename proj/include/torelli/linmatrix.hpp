#pragma once

#include "torelli/matrix.hpp"

namespace torelli {

/// Matrix of linear forms in nvars variables; each entry is a coefficient
/// vector of length nvars.
class LinMatrix {
public:
    LinMatrix() : rows_(0), cols_(0), nvars_(0), f_(Field::rational()) {}
    LinMatrix(size_t rows, size_t cols, size_t nvars, const Field& f);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t nvars() const { return nvars_; }
    const Field& field() const { return f_; }

    const Vec& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
    void set(size_t i, size_t j, Vec form);

    /// Scalar matrix of the x_k coefficients.
    Matrix coeff_slice(size_t k) const;
    /// Evaluates every entry at the given point.
    Matrix evaluate(const Vec& point) const;
    /// Row combination: L'(i,.) = sum_r P(i,r) L(r,.) for a scalar P.
    LinMatrix left_mul(const Matrix& p) const;
    /// Column combination with a scalar matrix on the right.
    LinMatrix right_mul(const Matrix& q) const;
    /// Coordinate substitution x = T x' (coefficient vectors map by T^T).
    LinMatrix substitute(const Matrix& t) const;
    LinMatrix reduce_mod(const Field& fp) const;

    Vec row_form_sum(size_t i) const;
    bool operator==(const LinMatrix& o) const;

private:
    size_t rows_, cols_, nvars_;
    Field f_;
    std::vector<Vec> e_;
};

}  // namespace torelli
