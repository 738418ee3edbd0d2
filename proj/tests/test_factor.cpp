#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "torelli/binary_form.hpp"

using namespace torelli;
using namespace tu;

namespace {

BinaryForm bf(const Field& f, std::initializer_list<long> cs) {
    Vec v;
    for (long c : cs) v.push_back(Scalar::integer(f, c));
    return BinaryForm(f, v);
}

// multiply factors back and compare up to scalar
void check_product(const BinaryForm& f, const std::vector<BinaryFactor>& factors) {
    BinaryForm prod(f.f, {Scalar::one(f.f)});
    size_t deg = 0;
    for (const auto& fac : factors) {
        for (size_t i = 0; i < fac.multiplicity; ++i) prod = prod * fac.factor;
        deg += fac.multiplicity * fac.factor.degree();
    }
    CHECK(deg == f.degree());
    CHECK(prod.proportional(f));
}

}  // namespace

TEST_CASE("factor_binary_form basic shapes") {
    Field q = Field::rational();
    // xi0*xi1
    auto f1 = bf(q, {0, 1, 0});
    auto r1 = factor_binary_form(f1);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].multiplicity == 1);
    CHECK(r1[1].multiplicity == 1);
    check_product(f1, r1);

    // (xi0 - xi1)^3 = xi0^3 - 3 xi0^2 xi1 + 3 xi0 xi1^2 - xi1^3
    auto f2 = bf(q, {1, -3, 3, -1});
    auto r2 = factor_binary_form(f2);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].multiplicity == 3);
    CHECK(r2[0].factor.degree() == 1);
    check_product(f2, r2);
}

TEST_CASE("xi0^2 + xi1^2: irreducible over Q, split over F_5") {
    Field q = Field::rational();
    auto f = bf(q, {1, 0, 1});
    auto r = factor_binary_form(f);
    REQUIRE(r.size() == 1);
    CHECK(r[0].factor.degree() == 2);
    CHECK(r[0].multiplicity == 1);
    CHECK(r[0].certified_irreducible);

    Field f5 = Field::prime(5);
    auto g = bf(f5, {1, 0, 1});
    auto rg = factor_binary_form(g);
    REQUIRE(rg.size() == 2);
    CHECK(rg[0].factor.degree() == 1);
    CHECK(rg[1].factor.degree() == 1);
    check_product(g, rg);
    // the roots are t = +-2: factors xi0 + 2 xi1 and xi0 - 2 xi1 up to order
    BinaryForm a = bf(f5, {1, 2}), b = bf(f5, {1, 3});
    bool match = (rg[0].factor == a && rg[1].factor == b) || (rg[0].factor == b && rg[1].factor == a);
    CHECK(match);
}

TEST_CASE("squarefree decomposition over Q and F_p") {
    Field q = Field::rational();
    // t^2 (t-1)^3 (t+2)
    Poly t = Poly::x(q);
    Poly f = t.pow(2) * (t - Poly::constant(Scalar::rational(1))).pow(3) * (t + Poly::constant(Scalar::rational(2)));
    auto sq = squarefree_decomposition(f);
    size_t total = 0;
    for (auto& [g, m] : sq) total += m * g.deg();
    CHECK(total == static_cast<size_t>(f.deg()));

    Field f3 = Field::prime(3);
    Poly t3 = Poly::x(f3);
    // (t^3 - t) has p-th power behavior built in at p=3 for t^3 factor shapes
    Poly g = (t3.pow(3) - t3) * (t3 - Poly::constant(Scalar::one(f3))).pow(3);
    auto sq3 = squarefree_decomposition(g);
    Poly prod = Poly::constant(Scalar::one(f3));
    for (auto& [part, m] : sq3) prod = prod * part.pow(m);
    CHECK(prod == g.monic());
}

TEST_CASE("random factecomposition reassembles over F_p") {
    std::mt19937_64 rng(41);
    Field f = Field::prime(11);
    std::uniform_int_distribution<long> d(0, 10);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Scalar> cs;
        size_t deg = 2 + static_cast<size_t>(trial % 6);
        for (size_t i = 0; i <= deg; ++i) cs.push_back(Scalar::integer(f, d(rng)));
        BinaryForm form(f, cs);
        if (form.is_zero()) continue;
        auto factors = factor_binary_form(form);
        check_product(form, factors);
        for (auto& fac : factors) CHECK(fac.certified_irreducible);
    }
}

TEST_CASE("kronecker search splits quartics over Q") {
    Field q = Field::rational();
    // (t^2+1)(t^2-2) has no rational roots, two irreducible quadratic factors
    Poly t = Poly::x(q);
    Poly f = (t * t + Poly::constant(Scalar::rational(1))) * (t * t - Poly::constant(Scalar::rational(2)));
    auto factors = factor_univariate(f);
    REQUIRE(factors.size() == 2);
    CHECK(factors[0].factor.deg() == 2);
    CHECK(factors[1].factor.deg() == 2);
    CHECK(factors[0].certified_irreducible);
    CHECK(factors[1].certified_irreducible);

    // product with a repeated linear factor
    Poly g = (t - Poly::constant(Scalar::rational(3))).pow(2) * (t * t + Poly::constant(Scalar::rational(1)));
    auto gf = factor_univariate(g);
    size_t deg = 0;
    bool saw_mult2 = false;
    for (auto& fac : gf) {
        deg += fac.multiplicity * fac.factor.deg();
        saw_mult2 = saw_mult2 || fac.multiplicity == 2;
    }
    CHECK(deg == 4);
    CHECK(saw_mult2);
}

TEST_CASE("random rational products reassemble") {
    std::mt19937_64 rng(43);
    Field q = Field::rational();
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        // product of random linear and quadratic forms
        BinaryForm prod(q, {Scalar::one(q)});
        for (int i = 0; i < 3; ++i) {
            long a = d(rng), b = d(rng);
            if (a == 0 && b == 0) a = 1;
            prod = prod * bf(q, {a, b});
        }
        auto factors = factor_binary_form(prod);
        check_product(prod, factors);
    }
}
