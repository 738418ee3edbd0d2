#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "torelli/kronecker.hpp"

using namespace torelli;
using namespace tu;

namespace {

BinaryForm bf(const Field& f, std::initializer_list<long> cs) {
    Vec v;
    for (long c : cs) v.push_back(Scalar::integer(f, c));
    return BinaryForm(f, v).normalized();
}

struct Inventory {
    std::vector<size_t> right, left;
    std::vector<std::pair<BinaryForm, std::vector<size_t>>> regular;
};

Inventory inventory_of(const KroneckerForm& kf) {
    Inventory inv;
    inv.right = kf.right_minimal;
    inv.left = kf.left_minimal;
    for (const auto& rb : kf.regular) inv.regular.emplace_back(rb.factor, rb.chains);
    return inv;
}

bool same_inventory(const Inventory& a, const Inventory& b) {
    if (a.right != b.right || a.left != b.left) return false;
    if (a.regular.size() != b.regular.size()) return false;
    for (size_t i = 0; i < a.regular.size(); ++i) {
        if (!(a.regular[i].first == b.regular[i].first)) return false;
        if (a.regular[i].second != b.regular[i].second) return false;
    }
    return true;
}

void sort_regular(Inventory& inv) {
    std::sort(inv.regular.begin(), inv.regular.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        for (size_t i = 0; i < x.first.c.size(); ++i) {
            int c = x.first.c[i].cmp(y.first.c[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
}

void check_transform(const Pencil& n, const KroneckerForm& kf) {
    Pencil lhs = n.left_mul(kf.P).right_mul(kf.Q);
    CHECK(lhs == kf.canonical);
    CHECK(!det(kf.P).is_zero());
    CHECK(!det(kf.Q).is_zero());
}

}  // namespace

TEST_CASE("pencil/matrix round trip") {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int t = 0; t < 200; ++t) {
        size_t n = 2 + t % 4;
        LinMatrix m(2, n, n + 1, Field::rational());
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < n; ++j) {
                Vec form(n + 1, Scalar::rational(0));
                for (auto& x : form) x = Scalar::rational(d(rng));
                m.set(i, j, form);
            }
        CHECK(matrix_from_pencil(pencil_from_matrix(m)) == m);
    }

    // Hankel model of the conic
    LinMatrix h(2, 2, 3, Field::rational());
    h.set(0, 0, qvec({0, 1, 0}));
    h.set(0, 1, qvec({0, 0, 1}));
    h.set(1, 0, qvec({1, 0, 0}));
    h.set(1, 1, qvec({0, 1, 0}));
    Pencil n = pencil_from_matrix(h);
    CHECK(n.rows() == 2);
    CHECK(n.cols() == 3);
    // N[0][k]: row 0 of pencil corresponds to column 0 of h
    CHECK(n.A.at(0, 1) == Scalar::rational(1));  // xi0 coeff from M[0][0] = z_1
    CHECK(n.B.at(0, 0) == Scalar::rational(1));  // xi1 coeff from M[1][0] = z_0
}

TEST_CASE("canonical singular block maps to itself") {
    for (size_t d = 1; d <= 4; ++d) {
        Pencil n = singular_right_block(d, Field::rational());
        auto kf = kronecker_form(n);
        CHECK(kf.right_minimal == std::vector<size_t>{d});
        CHECK(kf.left_minimal.empty());
        CHECK(kf.regular.empty());
        CHECK(kf.canonical == n);
        check_transform(n, kf);
    }
}

TEST_CASE("diagonal regular pencil with distinct factors") {
    Field q = Field::rational();
    Pencil n = regular_block_for_form(bf(q, {1, -1})).block_diag(regular_block_for_form(bf(q, {1, -2})));
    auto kf = kronecker_form(n);
    CHECK(kf.right_minimal.empty());
    CHECK(kf.left_minimal.empty());
    REQUIRE(kf.regular.size() == 2);
    CHECK(kf.regular[0].factor == bf(q, {1, -2}));
    CHECK(kf.regular[1].factor == bf(q, {1, -1}));
    CHECK(kf.regular[0].chains == std::vector<size_t>{1});
    check_transform(n, kf);
}

TEST_CASE("scrambled canonical pencils recover their inventory") {
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<long> coin(0, 3);
    for (int trial = 0; trial < 40; ++trial) {
        Field f = (trial % 3 == 2) ? Field::prime(11) : Field::rational();
        Inventory inv;
        size_t rows = 0, cols = 0;
        if (coin(rng) != 0) {
            size_t d = static_cast<size_t>(coin(rng));
            inv.right.push_back(d);
            rows += d;
            cols += d + 1;
        }
        if (coin(rng) == 0) {
            size_t e = static_cast<size_t>(coin(rng)) % 2;
            inv.left.push_back(e);
            rows += e + 1;
            cols += e;
        }
        std::vector<std::pair<BinaryForm, std::vector<size_t>>> pool;
        pool.emplace_back(bf(f, {1, -1}), std::vector<size_t>{});
        pool.emplace_back(bf(f, {1, 1}), std::vector<size_t>{});
        pool.emplace_back(bf(f, {0, 1}), std::vector<size_t>{});   // xi1
        pool.emplace_back(bf(f, {1, 0}), std::vector<size_t>{});   // xi0
        if (f.is_rational()) pool.emplace_back(bf(f, {1, 0, 1}), std::vector<size_t>{});  // irreducible quadratic
        for (auto& [p, chains] : pool) {
            int picks = static_cast<int>(coin(rng)) - 1;
            for (int i = 0; i < picks; ++i) {
                size_t r = 1 + static_cast<size_t>(coin(rng)) % 2;
                chains.push_back(r);
                rows += r * p.degree();
                cols += r * p.degree();
            }
            std::sort(chains.begin(), chains.end(), std::greater<size_t>());
            if (!chains.empty()) inv.regular.emplace_back(p, chains);
        }
        if (rows == 0 || rows > 8 || cols > 9) continue;
        sort_regular(inv);

        Pencil c = assemble_canonical(inv.right, inv.left, inv.regular, f);
        Matrix pbar = random_invertible(rng, c.rows(), f);
        Matrix qbar = random_invertible(rng, c.cols(), f);
        Pencil scrambled = c.left_mul(pbar).right_mul(qbar);

        auto kf = kronecker_form(scrambled);
        Inventory got = inventory_of(kf);
        CHECK(same_inventory(inv, got));
        CHECK(kf.canonical == c);
        check_transform(scrambled, kf);
    }
}

TEST_CASE("zero pencil decomposes into trivial singular blocks") {
    Pencil z = Pencil::zero(2, 3, Field::rational());
    auto kf = kronecker_form(z);
    CHECK(kf.right_minimal == std::vector<size_t>{0, 0, 0});
    CHECK(kf.left_minimal == std::vector<size_t>{0, 0});
    CHECK(kf.regular.empty());
}

TEST_CASE("jordan structure within one eigenvalue") {
    Field q = Field::rational();
    // companion of (t-3)^2 as one Jordan chain, plus a simple (t-3) block
    BinaryForm p = bf(q, {1, -3});
    Pencil n = assemble_canonical({}, {}, {{p, {2, 1}}}, q);
    std::mt19937_64 rng(83);
    Matrix pbar = random_invertible(rng, 3, q);
    Matrix qbar = random_invertible(rng, 3, q);
    auto kf = kronecker_form(n.left_mul(pbar).right_mul(qbar));
    REQUIRE(kf.regular.size() == 1);
    CHECK(kf.regular[0].factor == p);
    CHECK(kf.regular[0].chains == std::vector<size_t>{2, 1});
    CHECK(kf.regular[0].size == 3);
}
