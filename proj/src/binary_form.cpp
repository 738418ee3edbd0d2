#include "torelli/binary_form.hpp"

#include <algorithm>

namespace torelli {

BinaryForm::BinaryForm(const Field& fld, std::vector<Scalar> coeffs) : f(fld), c(std::move(coeffs)) {
    if (c.empty()) throw std::invalid_argument("binary form needs coefficients");
    for (const auto& s : c)
        if (!(s.field() == fld)) throw FieldMismatch("mixed-field binary form");
}

bool BinaryForm::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); });
}

Scalar BinaryForm::eval(const Scalar& xi0, const Scalar& xi1) const {
    const size_t d = degree();
    Scalar r = Scalar::zero(f);
    Scalar p0 = Scalar::one(f);
    std::vector<Scalar> pow1(d + 1, Scalar::one(f));
    for (size_t i = 1; i <= d; ++i) pow1[i] = pow1[i - 1] * xi1;
    for (size_t i = d + 1; i-- > 0;) {
        // p0 = xi0^(d-i) built up as i decreases
        r += c[i] * p0 * pow1[i];
        if (i > 0) p0 = p0 * xi0;
    }
    return r;
}

BinaryForm BinaryForm::normalized() const {
    for (const auto& s : c)
        if (!s.is_zero()) {
            BinaryForm r = *this;
            Scalar inv = s.inv();
            for (auto& x : r.c) x = x * inv;
            return r;
        }
    throw std::domain_error("cannot normalize the zero form");
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    std::vector<Scalar> r(c.size() + o.c.size() - 1, Scalar::zero(f));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return BinaryForm(f, std::move(r));
}

bool BinaryForm::proportional(const BinaryForm& o) const {
    if (degree() != o.degree()) return false;
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return normalized() == o.normalized();
}

Poly BinaryForm::dehomogenize() const {
    return Poly::from_coeffs(f, c);
}

BinaryForm BinaryForm::homogenize(const Poly& p, size_t degree) {
    if (p.deg() > static_cast<int>(degree)) throw std::invalid_argument("degree too small to homogenize");
    std::vector<Scalar> c(degree + 1, Scalar::zero(p.field()));
    for (int i = 0; i <= p.deg(); ++i) c[i] = p.coeff(i);
    return BinaryForm(p.field(), std::move(c));
}

std::string BinaryForm::str() const {
    std::string s;
    const size_t d = degree();
    for (size_t i = 0; i <= d; ++i) {
        if (c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += c[i].str();
        if (d - i > 0) s += "*xi0" + (d - i > 1 ? "^" + std::to_string(d - i) : "");
        if (i > 0) s += "*xi1" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
}

std::vector<BinaryFactor> factor_binary_form(const BinaryForm& form) {
    if (form.is_zero()) throw std::domain_error("factorization of the zero form");
    const Field fld = form.f;
    std::vector<BinaryFactor> out;

    // strip xi0 and xi1 powers
    std::vector<Scalar> c = form.c;
    size_t xi1_mult = 0, xi0_mult = 0;
    while (c.size() > 1 && c.front().is_zero()) {
        c.erase(c.begin());
        ++xi1_mult;
    }
    while (c.size() > 1 && c.back().is_zero()) {
        c.pop_back();
        ++xi0_mult;
    }
    Scalar one = Scalar::one(fld), zero = Scalar::zero(fld);
    if (xi0_mult > 0) out.push_back({BinaryForm(fld, {one, zero}), xi0_mult, true});
    if (xi1_mult > 0) out.push_back({BinaryForm(fld, {zero, one}), xi1_mult, true});

    if (c.size() > 1) {
        const size_t d = c.size() - 1;
        Poly p = Poly::from_coeffs(fld, c);
        for (const auto& pf : factor_univariate(p)) {
            BinaryForm g = BinaryForm::homogenize(pf.factor, static_cast<size_t>(pf.factor.deg()));
            out.push_back({g.normalized(), pf.multiplicity, pf.certified_irreducible});
        }
        (void)d;
    }
    return out;
}

}  // namespace torelli
