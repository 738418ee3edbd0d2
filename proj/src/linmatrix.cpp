#include "torelli/linmatrix.hpp"

namespace torelli {

LinMatrix::LinMatrix(size_t rows, size_t cols, size_t nvars, const Field& f)
    : rows_(rows), cols_(cols), nvars_(nvars), f_(f), e_(rows * cols, Vec(nvars, Scalar::zero(f))) {}

void LinMatrix::set(size_t i, size_t j, Vec form) {
    if (form.size() != nvars_) throw std::invalid_argument("linear form has wrong variable count");
    for (const auto& s : form)
        if (!(s.field() == f_)) throw FieldMismatch("mixed-field linear form entry");
    e_[i * cols_ + j] = std::move(form);
}

Matrix LinMatrix::coeff_slice(size_t k) const {
    Matrix m(rows_, cols_, f_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j)[k]);
    return m;
}

Matrix LinMatrix::evaluate(const Vec& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong size");
    Matrix m(rows_, cols_, f_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m.set(i, j, dot(at(i, j), point));
    return m;
}

LinMatrix LinMatrix::left_mul(const Matrix& p) const {
    if (p.cols() != rows_) throw std::invalid_argument("left_mul shape mismatch");
    LinMatrix r(p.rows(), cols_, nvars_, f_);
    for (size_t i = 0; i < p.rows(); ++i)
        for (size_t j = 0; j < cols_; ++j) {
            Vec acc(nvars_, Scalar::zero(f_));
            for (size_t k = 0; k < rows_; ++k)
                if (!p.at(i, k).is_zero()) acc = vec_add(acc, vec_scale(at(k, j), p.at(i, k)));
            r.set(i, j, std::move(acc));
        }
    return r;
}

LinMatrix LinMatrix::right_mul(const Matrix& q) const {
    if (q.rows() != cols_) throw std::invalid_argument("right_mul shape mismatch");
    LinMatrix r(rows_, q.cols(), nvars_, f_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < q.cols(); ++j) {
            Vec acc(nvars_, Scalar::zero(f_));
            for (size_t k = 0; k < cols_; ++k)
                if (!q.at(k, j).is_zero()) acc = vec_add(acc, vec_scale(at(i, k), q.at(k, j)));
            r.set(i, j, std::move(acc));
        }
    return r;
}

LinMatrix LinMatrix::substitute(const Matrix& t) const {
    if (t.rows() != nvars_ || t.cols() != nvars_) throw std::invalid_argument("substitution shape mismatch");
    Matrix tt = t.transpose();
    LinMatrix r(rows_, cols_, nvars_, f_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.set(i, j, tt.apply(at(i, j)));
    return r;
}

LinMatrix LinMatrix::reduce_mod(const Field& fp) const {
    LinMatrix r(rows_, cols_, nvars_, fp);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            Vec v;
            v.reserve(nvars_);
            for (const auto& s : at(i, j)) v.push_back(s.reduce_mod(fp));
            r.set(i, j, std::move(v));
        }
    return r;
}

Vec LinMatrix::row_form_sum(size_t i) const {
    Vec acc(nvars_, Scalar::zero(f_));
    for (size_t j = 0; j < cols_; ++j) acc = vec_add(acc, at(i, j));
    return acc;
}

bool LinMatrix::operator==(const LinMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && nvars_ == o.nvars_ && f_ == o.f_ && e_ == o.e_;
}

}  // namespace torelli
