#include "torelli/projgeom.hpp"

#include <algorithm>
#include <functional>

namespace torelli {

namespace {

Vec normalize_coords(Vec c, const Field& f) {
    if (c.empty()) throw std::invalid_argument("empty coordinate vector");
    bool all_zero = std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); });
    if (all_zero) throw std::invalid_argument("the zero vector is not a projective point");
    if (f.is_prime()) {
        for (const auto& s : c)
            if (!s.is_zero()) {
                Scalar inv = s.inv();
                for (auto& x : c) x = x * inv;
                return c;
            }
    }
    // over Q: clear denominators, divide by gcd, first nonzero positive
    mpz_class l = 1;
    for (const auto& s : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rat().get_den().get_mpz_t());
    std::vector<mpz_class> z(c.size());
    mpz_class g = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        const mpq_class& q = c[i].rat();
        z[i] = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
    }
    for (auto& x : z) x /= g;
    for (auto& x : z) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : z) y = -y;
        break;
    }
    for (size_t i = 0; i < c.size(); ++i) c[i] = Scalar::rational(mpq_class(z[i]));
    return c;
}

}  // namespace

ProjPoint::ProjPoint(size_t n, Vec coords) : n_(n) {
    if (coords.size() != n + 1) throw std::invalid_argument("point of P_n needs n+1 coordinates");
    f_ = coords[0].field();
    for (const auto& s : coords)
        if (!(s.field() == f_)) throw FieldMismatch("mixed-field point");
    c_ = normalize_coords(std::move(coords), f_);
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = 0; i <= n_; ++i) {
        int c = c_[i].cmp(o.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string ProjPoint::str() const {
    std::string s = "(";
    for (size_t i = 0; i <= n_; ++i) {
        if (i) s += ":";
        s += c_[i].str();
    }
    return s + ")";
}

bool incident(const ProjPoint& x, const ProjPoint& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch in incidence pairing");
    return dot(x.coords(), y.coords()).is_zero();
}

int span_dim(const std::vector<ProjPoint>& pts) {
    if (pts.empty()) throw std::invalid_argument("span of an empty set");
    Matrix m(pts.size(), pts[0].dim() + 1, pts[0].field());
    for (size_t i = 0; i < pts.size(); ++i) m.set_row(i, pts[i].coords());
    return static_cast<int>(rank_of(m)) - 1;
}

Arrangement::Arrangement(size_t n, std::vector<ProjPoint> pts) : n_(n), pts_(std::move(pts)) {
    if (pts_.empty()) throw std::invalid_argument("arrangement needs at least one point");
    f_ = pts_[0].field();
    for (const auto& p : pts_) {
        if (p.dim() != n_) throw std::invalid_argument("point dimension mismatch in arrangement");
        if (!(p.field() == f_)) throw FieldMismatch("mixed-field arrangement");
    }
    for (size_t i = 0; i < pts_.size(); ++i)
        for (size_t j = i + 1; j < pts_.size(); ++j)
            if (pts_[i] == pts_[j])
                throw std::invalid_argument("duplicate point in arrangement: " + pts_[i].str());
    span_dim_ = span_dim(pts_);
}

bool Arrangement::contains(const ProjPoint& p) const {
    return index_of(p).has_value();
}

std::optional<size_t> Arrangement::index_of(const ProjPoint& p) const {
    for (size_t i = 0; i < pts_.size(); ++i)
        if (pts_[i] == p) return i;
    return std::nullopt;
}

Matrix Arrangement::coordinate_matrix() const {
    Matrix m(pts_.size(), n_ + 1, f_);
    for (size_t i = 0; i < pts_.size(); ++i) m.set_row(i, pts_[i].coords());
    return m;
}

bool general_position(const Arrangement& z) {
    const size_t n = z.n();
    const size_t l = z.size();
    const size_t k = std::min(l, n + 1);
    // every subset of size <= n+1 independent <=> every k-subset independent
    std::vector<size_t> idx(k);
    std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) -> bool {
        if (pos == k) {
            std::vector<ProjPoint> sub;
            sub.reserve(k);
            for (size_t i : idx) sub.push_back(z[i]);
            return span_dim(sub) == static_cast<int>(k) - 1;
        }
        for (size_t i = start; i + (k - pos) <= l; ++i) {
            idx[pos] = i;
            if (!rec(pos + 1, i + 1)) return false;
        }
        return true;
    };
    return rec(0, 0);
}

std::vector<std::pair<size_t, size_t>> quadratic_monomials(size_t n) {
    std::vector<std::pair<size_t, size_t>> mons;
    for (size_t j = 0; j <= n; ++j)
        for (size_t i = 0; i <= j; ++i) mons.emplace_back(i, j);
    return mons;
}

QuadricSpace quadric_space(const Arrangement& z) {
    const size_t n = z.n();
    auto mons = quadratic_monomials(n);
    Matrix m(z.size(), mons.size(), z.field());
    for (size_t r = 0; r < z.size(); ++r) {
        const Vec& c = z[r].coords();
        for (size_t k = 0; k < mons.size(); ++k) m.set(r, k, c[mons[k].first] * c[mons[k].second]);
    }
    QuadricSpace out;
    out.monomials = mons.size();
    out.basis = kernel_basis(m);
    out.dim = out.basis.size();
    return out;
}

std::vector<SecantDefect> secant_defects(const Arrangement& z) {
    const size_t n = z.n();
    const size_t l = z.size();
    if (l < n + 1) throw std::invalid_argument("secant_defects needs at least n+1 points");
    std::vector<SecantDefect> out;
    std::vector<size_t> idx(n + 1);
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
        if (pos == n + 1) {
            std::vector<ProjPoint> sub;
            for (size_t i : idx) sub.push_back(z[i]);
            int d = span_dim(sub);
            if (d <= static_cast<int>(n) - 1) out.push_back({idx, d});
            return;
        }
        for (size_t i = start; i + (n + 1 - pos) <= l; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

ProjPoint reduce_point_mod_p(const ProjPoint& pt, const Field& fp) {
    Vec c;
    c.reserve(pt.dim() + 1);
    bool all_zero = true;
    for (const auto& s : pt.coords()) {
        Scalar r = s.reduce_mod(fp);
        all_zero = all_zero && r.is_zero();
        c.push_back(r);
    }
    if (all_zero) throw BadPrime("point " + pt.str() + " reduces to zero mod " + std::to_string(fp.p));
    return ProjPoint(pt.dim(), std::move(c));
}

Arrangement reduce_mod_p(const Arrangement& z, uint64_t p) {
    Field fp = Field::prime(p);
    if (!z.field().is_rational()) throw BadPrime("reduce_mod_p expects a rational arrangement");
    std::vector<ProjPoint> pts;
    pts.reserve(z.size());
    for (const auto& pt : z.points()) pts.push_back(reduce_point_mod_p(pt, fp));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j])
                throw BadPrime("points " + z[i].str() + " and " + z[j].str() + " collide mod " + std::to_string(p));
    Arrangement out(z.n(), std::move(pts));
    if (out.span() < z.span())
        throw BadPrime("span drops from " + std::to_string(z.span()) + " to " + std::to_string(out.span()) +
                       " mod " + std::to_string(p));
    return out;
}

LinearSubspace::LinearSubspace(size_t n, const std::vector<Vec>& spanning, const Field& f) : n_(n), f_(f) {
    if (spanning.empty()) throw std::invalid_argument("empty spanning set");
    Matrix m(spanning.size(), n + 1, f);
    for (size_t i = 0; i < spanning.size(); ++i) {
        if (spanning[i].size() != n + 1) throw std::invalid_argument("spanning vector size mismatch");
        m.set_row(i, spanning[i]);
    }
    RrefResult r = rref(m);
    basis_ = r.rref.submatrix(0, 0, r.rank, n + 1);
}

LinearSubspace LinearSubspace::from_points(size_t n, const std::vector<ProjPoint>& pts) {
    std::vector<Vec> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) rows.push_back(p.coords());
    return LinearSubspace(n, rows, pts[0].field());
}

bool LinearSubspace::contains_vec(const Vec& v) const {
    Matrix m = basis_.vstack(Matrix::from_rows({v}, f_));
    return rank_of(m) == rank();
}

bool LinearSubspace::contains(const ProjPoint& p) const {
    return contains_vec(p.coords());
}

LinearSubspace LinearSubspace::sum(const LinearSubspace& o) const {
    std::vector<Vec> rows;
    for (size_t i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
    for (size_t i = 0; i < o.basis_.rows(); ++i) rows.push_back(o.basis_.row(i));
    return LinearSubspace(n_, rows, f_);
}

LinearSubspace LinearSubspace::intersect(const LinearSubspace& o) const {
    // x = alpha^T U = beta^T W; solve [U^T | -W^T] (alpha; beta) = 0
    const size_t ru = rank(), rw = o.rank();
    Matrix sys(n_ + 1, ru + rw, f_);
    for (size_t i = 0; i <= n_; ++i) {
        for (size_t j = 0; j < ru; ++j) sys.set(i, j, basis_.at(j, i));
        for (size_t j = 0; j < rw; ++j) sys.set(i, ru + j, -o.basis_.at(j, i));
    }
    auto ker = kernel_basis(sys);
    if (ker.empty()) {
        // zero intersection: represent as an empty-rank subspace via a zero
        // basis matrix (rank 0)
        LinearSubspace out = *this;
        out.basis_ = Matrix(0, n_ + 1, f_);
        return out;
    }
    std::vector<Vec> rows;
    for (const auto& k : ker) {
        Vec alpha(k.begin(), k.begin() + ru);
        Vec x(n_ + 1, Scalar::zero(f_));
        for (size_t j = 0; j < ru; ++j)
            if (!alpha[j].is_zero()) x = vec_add(x, vec_scale(basis_.row(j), alpha[j]));
        rows.push_back(x);
    }
    return LinearSubspace(n_, rows, f_);
}

bool LinearSubspace::operator==(const LinearSubspace& o) const {
    return n_ == o.n_ && f_ == o.f_ && basis_ == o.basis_;
}

}  // namespace torelli
