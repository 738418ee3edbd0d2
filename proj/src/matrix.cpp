#include "torelli/matrix.hpp"

#include <algorithm>

namespace torelli {

Matrix Matrix::identity(size_t n, const Field& f) {
    Matrix m(n, n, f);
    for (size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, const Field& f) {
    size_t nc = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), nc, f);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw std::invalid_argument("ragged rows");
        for (size_t j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void Matrix::set(size_t i, size_t j, const Scalar& s) {
    if (!(s.field() == f_)) throw FieldMismatch("mixed-field matrix entry");
    e_[i * cols_ + j] = s;
}

Vec Matrix::row(size_t i) const {
    return Vec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
}

Vec Matrix::col(size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

void Matrix::set_row(size_t i, const Vec& v) {
    if (v.size() != cols_) throw std::invalid_argument("row size mismatch");
    for (size_t j = 0; j < cols_; ++j) set(i, j, v[j]);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, f_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in matrix product");
    if (!(f_ == o.f_)) throw FieldMismatch("mixed-field matrix product");
    Matrix r(rows_, o.cols_, f_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.set(i, j, r.at(i, j) + a * o.at(k, j));
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    Matrix r(rows_, cols_, f_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    Matrix r(rows_, cols_, f_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix r(rows_, cols_, f_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && f_ == o.f_ && e_ == o.e_;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector size mismatch");
    Vec r(rows_, Scalar::zero(f_));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

Vec Matrix::apply_left(const Vec& v) const {
    if (v.size() != rows_) throw std::invalid_argument("vector size mismatch");
    Vec r(cols_, Scalar::zero(f_));
    for (size_t i = 0; i < rows_; ++i) {
        if (v[i].is_zero()) continue;
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[j] += v[i] * at(i, j);
    }
    return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix r(rows_, cols_ + o.cols_, f_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
        for (size_t j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
    }
    return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("vstack col mismatch");
    Matrix r(rows_ + o.rows_, cols_, f_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (size_t i = 0; i < o.rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
    return r;
}

Matrix Matrix::submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Matrix r(nr, nc, f_);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) r.set(i, j, at(r0 + i, c0 + j));
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

namespace {

// Plain Gauss-Jordan over the field; used for F_p and as the final
// normalization step after Bareiss.
RrefResult rref_field(const Matrix& m) {
    RrefResult out;
    Matrix a = m;
    const Field f = m.field();
    size_t cur = 0;
    for (size_t c = 0; c < a.cols() && cur < a.rows(); ++c) {
        size_t piv = a.rows();
        for (size_t r = cur; r < a.rows(); ++r)
            if (!a.at(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv == a.rows()) continue;
        if (piv != cur) {
            Vec t = a.row(piv);
            a.set_row(piv, a.row(cur));
            a.set_row(cur, t);
        }
        Scalar inv = a.at(cur, c).inv();
        Vec prow = a.row(cur);
        for (auto& x : prow) x = x * inv;
        a.set_row(cur, prow);
        for (size_t r = 0; r < a.rows(); ++r) {
            if (r == cur || a.at(r, c).is_zero()) continue;
            Scalar factor = a.at(r, c);
            Vec rr = a.row(r);
            for (size_t j = 0; j < a.cols(); ++j) rr[j] = rr[j] - factor * prow[j];
            a.set_row(r, rr);
        }
        out.pivot_cols.push_back(c);
        ++cur;
    }
    out.rref = a;
    out.rank = out.pivot_cols.size();
    return out;
}

// Fraction-free Gauss-Jordan (Bareiss): all intermediate entries stay
// integral, divisions by the previous pivot are exact.
RrefResult rref_bareiss(const Matrix& m) {
    const size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<mpz_class>> z(nr, std::vector<mpz_class>(nc));
    for (size_t i = 0; i < nr; ++i) {
        mpz_class l = 1;
        for (size_t j = 0; j < nc; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).rat().get_den().get_mpz_t());
        for (size_t j = 0; j < nc; ++j) {
            const mpq_class& q = m.at(i, j).rat();
            z[i][j] = q.get_num() * (l / q.get_den());
        }
    }

    RrefResult out;
    std::vector<size_t> pivot_row;
    mpz_class prev = 1;
    size_t cur = 0;
    for (size_t c = 0; c < nc && cur < nr; ++c) {
        size_t piv = nr;
        for (size_t r = cur; r < nr; ++r)
            if (z[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == nr) continue;
        if (piv != cur) std::swap(z[piv], z[cur]);
        const mpz_class pv = z[cur][c];
        for (size_t r = 0; r < nr; ++r) {
            if (r == cur) continue;
            const mpz_class factor = z[r][c];
            for (size_t j = 0; j < nc; ++j) {
                mpz_class num = pv * z[r][j] - factor * z[cur][j];
                mpz_class quo, rem;
                mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) throw std::logic_error("Bareiss exactness violated");
                z[r][j] = quo;
            }
        }
        prev = pv;
        out.pivot_cols.push_back(c);
        pivot_row.push_back(cur);
        ++cur;
    }

    Matrix r(nr, nc, Field::rational());
    for (size_t k = 0; k < out.pivot_cols.size(); ++k) {
        size_t i = pivot_row[k];
        const mpz_class pv = z[i][out.pivot_cols[k]];
        for (size_t j = 0; j < nc; ++j) {
            mpq_class q(z[i][j], pv);
            q.canonicalize();
            r.set(i, j, Scalar::rational(q));
        }
    }
    out.rref = r;
    out.rank = out.pivot_cols.size();
    return out;
}

}  // namespace

RrefResult rref(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        RrefResult out;
        out.rref = m;
        return out;
    }
    return m.field().is_rational() ? rref_bareiss(m) : rref_field(m);
}

std::vector<Vec> kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    const Field f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        Vec v(m.cols(), Scalar::zero(f));
        v[fc] = Scalar::one(f);
        for (size_t k = 0; k < r.pivot_cols.size(); ++k) v[r.pivot_cols[k]] = -r.rref.at(k, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

SolveResult solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("rhs size mismatch");
    Matrix aug = m.hstack(Matrix::from_rows(
        [&] {
            std::vector<Vec> col(m.rows());
            for (size_t i = 0; i < m.rows(); ++i) col[i] = {b[i]};
            return col;
        }(),
        m.field()));
    RrefResult r = rref(aug);
    SolveResult out;
    bool inconsistent = !r.pivot_cols.empty() && r.pivot_cols.back() == m.cols();
    if (inconsistent) {
        out.nullity = m.cols() - (r.rank - 1);
        return out;
    }
    Vec x(m.cols(), Scalar::zero(m.field()));
    for (size_t k = 0; k < r.pivot_cols.size(); ++k) x[r.pivot_cols[k]] = r.rref.at(k, m.cols());
    out.particular = std::move(x);
    out.nullity = m.cols() - r.rank;
    return out;
}

size_t rank_of(const Matrix& m) { return rref(m).rank; }

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    RrefResult r = rref(m.hstack(Matrix::identity(m.rows(), m.field())));
    for (size_t k = 0; k < m.rows(); ++k)
        if (k >= r.pivot_cols.size() || r.pivot_cols[k] != k) throw std::domain_error("singular matrix");
    return r.rref.submatrix(0, m.rows(), m.rows(), m.rows());
}

Scalar det(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    const Field f = m.field();
    Matrix a = m;
    Scalar d = Scalar::one(f);
    size_t n = m.rows();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t r = c; r < n; ++r)
            if (!a.at(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv == n) return Scalar::zero(f);
        if (piv != c) {
            Vec t = a.row(piv);
            a.set_row(piv, a.row(c));
            a.set_row(c, t);
            d = -d;
        }
        d = d * a.at(c, c);
        Scalar inv = a.at(c, c).inv();
        for (size_t r = c + 1; r < n; ++r) {
            if (a.at(r, c).is_zero()) continue;
            Scalar factor = a.at(r, c) * inv;
            for (size_t j = c; j < n; ++j) a.set(r, j, a.at(r, j) - factor * a.at(c, j));
        }
    }
    return d;
}

Scalar dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("dot size mismatch");
    Scalar s = Scalar::zero(a[0].field());
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Vec& a, const Scalar& s) {
    Vec r(a);
    for (auto& x : r) x = x * s;
    return r;
}

bool vec_is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::optional<Scalar> proportionality(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.empty()) return std::nullopt;
    size_t k = a.size();
    for (size_t i = 0; i < a.size(); ++i)
        if (!b[i].is_zero()) {
            k = i;
            break;
        }
    if (k == a.size()) return std::nullopt;  // b = 0
    Scalar lambda = a[k] / b[k];
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != lambda * b[i]) return std::nullopt;
    return lambda;
}

}  // namespace torelli
