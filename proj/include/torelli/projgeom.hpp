#pragma once

#include <optional>

#include "torelli/matrix.hpp"

namespace torelli {

/// Point of P_n (or P^n), stored as a canonical primitive representative:
/// over Q integer coordinates with gcd 1 and first nonzero entry positive,
/// over F_p first nonzero entry 1.
class ProjPoint {
public:
    ProjPoint(size_t n, Vec coords);  // normalizes

    size_t dim() const { return n_; }
    const Field& field() const { return f_; }
    const Vec& coords() const { return c_; }
    const Scalar& operator[](size_t i) const { return c_[i]; }

    bool operator==(const ProjPoint& o) const { return n_ == o.n_ && f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const;

    std::string str() const;

private:
    size_t n_;
    Field f_;
    Vec c_;
};

/// x in H_y, with the pairing fixed as sum_i x_i y_i.
bool incident(const ProjPoint& x, const ProjPoint& y);

int span_dim(const std::vector<ProjPoint>& pts);

/// Ordered list of distinct dual points z_1..z_l.
class Arrangement {
public:
    Arrangement(size_t n, std::vector<ProjPoint> pts);

    size_t n() const { return n_; }
    size_t size() const { return pts_.size(); }
    const Field& field() const { return f_; }
    const ProjPoint& operator[](size_t i) const { return pts_[i]; }
    const std::vector<ProjPoint>& points() const { return pts_; }
    int span() const { return span_dim_; }
    bool nondegenerate() const { return span_dim_ == static_cast<int>(n_); }
    bool contains(const ProjPoint& p) const;
    std::optional<size_t> index_of(const ProjPoint& p) const;
    Matrix coordinate_matrix() const;  // l x (n+1), points as rows

private:
    size_t n_;
    Field f_;
    std::vector<ProjPoint> pts_;
    int span_dim_;
};

bool general_position(const Arrangement& z);

struct QuadricSpace {
    size_t dim;
    /// Basis vectors in the fixed degrevlex order of quadratic monomials
    /// z_i z_j (grouped by max index j ascending, then i ascending).
    std::vector<Vec> basis;
    size_t monomials;  // (n+1)(n+2)/2
};

QuadricSpace quadric_space(const Arrangement& z);

/// Monomial index pairs (i <= j) in the fixed order used by quadric_space.
std::vector<std::pair<size_t, size_t>> quadratic_monomials(size_t n);

struct SecantDefect {
    std::vector<size_t> subset;  // indices into Z, size n+1
    int span_dim;                // <= n-1
};

/// All (n+1)-subsets of Z lying in a hyperplane, with their span dimension.
std::vector<SecantDefect> secant_defects(const Arrangement& z);

struct BadPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Entrywise reduction of the primitive integer representatives; throws
/// BadPrime if points collide or the span drops.
Arrangement reduce_mod_p(const Arrangement& z, uint64_t p);
ProjPoint reduce_point_mod_p(const ProjPoint& pt, const Field& fp);

/// Row-space subspace of k^(n+1), projective dimension rank-1.
class LinearSubspace {
public:
    LinearSubspace() : n_(0), f_(Field::rational()), basis_(0, 1, f_) {}
    LinearSubspace(size_t n, const std::vector<Vec>& spanning, const Field& f);
    static LinearSubspace from_points(size_t n, const std::vector<ProjPoint>& pts);

    size_t ambient() const { return n_; }
    const Field& field() const { return f_; }
    const Matrix& basis() const { return basis_; }  // RREF rows
    size_t rank() const { return basis_.rows(); }
    int proj_dim() const { return static_cast<int>(rank()) - 1; }

    bool contains(const ProjPoint& p) const;
    bool contains_vec(const Vec& v) const;
    LinearSubspace intersect(const LinearSubspace& o) const;
    LinearSubspace sum(const LinearSubspace& o) const;
    bool operator==(const LinearSubspace& o) const;

private:
    size_t n_;
    Field f_;
    Matrix basis_;
};

}  // namespace torelli
