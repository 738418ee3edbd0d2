#pragma once

#include <vector>

#include "torelli/field.hpp"

namespace torelli {

/// Dense univariate polynomial over a field. Coefficient i belongs to t^i;
/// the coefficient vector carries no trailing zeros.
class Poly {
public:
    explicit Poly(const Field& f) : f_(f) {}
    static Poly from_coeffs(const Field& f, std::vector<Scalar> c);
    static Poly constant(const Scalar& s);
    static Poly monomial(const Field& f, size_t deg, const Scalar& c);
    static Poly x(const Field& f) { return monomial(f, 1, Scalar::one(f)); }

    const Field& field() const { return f_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Scalar coeff(size_t i) const { return i < c_.size() ? c_[i] : Scalar::zero(f_); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar leading() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Scalar& s) const;
    bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }

    std::pair<Poly, Poly> divrem(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divrem(d).first; }
    Poly operator%(const Poly& d) const { return divrem(d).second; }
    bool divides(const Poly& num) const;

    Poly derivative() const;
    Poly monic() const;
    Scalar eval(const Scalar& at) const;
    Poly pow(size_t e) const;
    std::string str(const std::string& var = "t") const;

private:
    Field f_;
    std::vector<Scalar> c_;
    void trim();
};

Poly poly_gcd(const Poly& a, const Poly& b);  // monic gcd
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod);
Poly poly_powmod(const Poly& a, const mpz_class& e, const Poly& mod);

struct PolyFactor {
    Poly factor;  // monic
    size_t multiplicity;
    bool certified_irreducible;
};

/// Full factorization over F_p; over Q squarefree + rational roots +
/// bounded Kronecker factor search (uncertified leftovers flagged).
std::vector<PolyFactor> factor_univariate(const Poly& f);

/// Squarefree decomposition: list of (squarefree part, multiplicity).
std::vector<std::pair<Poly, size_t>> squarefree_decomposition(const Poly& f);

}  // namespace torelli
