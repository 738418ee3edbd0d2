#pragma once

#include "torelli/poly.hpp"

namespace torelli {

/// Homogeneous binary form sum_i c_i xi0^(d-i) xi1^i. Normalized forms have
/// first nonzero coefficient 1.
struct BinaryForm {
    Field f;
    std::vector<Scalar> c;  // degree = c.size() - 1

    explicit BinaryForm(const Field& fld) : f(fld), c{Scalar::zero(fld)} {}
    BinaryForm(const Field& fld, std::vector<Scalar> coeffs);

    size_t degree() const { return c.size() - 1; }
    bool is_zero() const;
    Scalar eval(const Scalar& xi0, const Scalar& xi1) const;
    BinaryForm normalized() const;
    BinaryForm operator*(const BinaryForm& o) const;
    bool operator==(const BinaryForm& o) const { return f == o.f && c == o.c; }
    /// True if this = lambda * o for some nonzero lambda.
    bool proportional(const BinaryForm& o) const;

    /// Dehomogenization f(1, t) as a polynomial in t.
    Poly dehomogenize() const;
    /// Inverse of dehomogenize at the stated degree.
    static BinaryForm homogenize(const Poly& p, size_t degree);

    std::string str() const;
};

struct BinaryFactor {
    BinaryForm factor;  // normalized
    size_t multiplicity;
    bool certified_irreducible;
};

/// Factors f into irreducibles over the base field (squarefree decomposition,
/// rational roots and bounded factor search over Q; full factorization over
/// F_p). Factors that resist splitting come back with
/// certified_irreducible = false.
std::vector<BinaryFactor> factor_binary_form(const BinaryForm& f);

}  // namespace torelli
