#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "torelli/matrix.hpp"

using namespace torelli;
using namespace tu;

namespace {

// brute-force rank via minor expansion, the independent oracle
Scalar minor_det(const Matrix& m, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
    const size_t k = rows.size();
    if (k == 1) return m.at(rows[0], cols[0]);
    Scalar acc = Scalar::zero(m.field());
    std::vector<size_t> subrows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < k; ++j) {
        std::vector<size_t> subcols;
        for (size_t t = 0; t < k; ++t)
            if (t != j) subcols.push_back(cols[t]);
        Scalar term = m.at(rows[0], cols[j]) * minor_det(m, subrows, subcols);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

size_t rank_by_minors(const Matrix& m) {
    size_t best = 0;
    const size_t maxk = std::min(m.rows(), m.cols());
    for (size_t k = 1; k <= maxk; ++k) {
        bool found = false;
        std::vector<size_t> rows(k), cols(k);
        std::function<void(size_t, size_t)> pick_cols = [&](size_t pos, size_t start) {
            if (found) return;
            if (pos == k) {
                if (!minor_det(m, rows, cols).is_zero()) found = true;
                return;
            }
            for (size_t c = start; c < m.cols(); ++c) {
                cols[pos] = c;
                pick_cols(pos + 1, c + 1);
            }
        };
        std::function<void(size_t, size_t)> pick_rows = [&](size_t pos, size_t start) {
            if (found) return;
            if (pos == k) {
                pick_cols(0, 0);
                return;
            }
            for (size_t r = start; r < m.rows(); ++r) {
                rows[pos] = r;
                pick_rows(pos + 1, r + 1);
            }
        };
        pick_rows(0, 0);
        if (found) best = k;
    }
    return best;
}

Matrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, const Field& f) {
    std::uniform_int_distribution<long> d(-6, 6);
    Matrix m(r, c, f);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.set(i, j, Scalar::integer(f, d(rng)));
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic and normalization") {
    CHECK(Scalar::rational(2, 6) == Scalar::rational(1, 3));
    CHECK(Scalar::rational(-1, -3) == Scalar::rational(1, 3));
    CHECK(Scalar::parse("-7/2", Field::rational()).str() == "-7/2");
    Field f11 = Field::prime(11);
    CHECK(Scalar::integer(f11, -1) == Scalar::residue(10, f11));
    CHECK((Scalar::residue(3, f11) / Scalar::residue(4, f11)) * Scalar::residue(4, f11) == Scalar::residue(3, f11));
    CHECK_THROWS_AS(Scalar::residue(1, f11) / Scalar::residue(0, f11), DivisionByZero);
    CHECK_THROWS_AS(Scalar::rational(1) + Scalar::residue(1, f11), FieldMismatch);
    CHECK_THROWS(Field::prime(10));
}

TEST_CASE("rref identity and proportional rows") {
    Matrix id = Matrix::identity(2, Field::rational());
    auto r = rref(id);
    CHECK(r.rref == id);
    CHECK(r.pivot_cols == std::vector<size_t>{0, 1});
    CHECK(r.rank == 2);

    Matrix m = qmat({{1, 2}, {2, 4}});
    auto r2 = rref(m);
    CHECK(r2.rank == 1);
    CHECK(r2.rref.at(0, 0) == Scalar::rational(1));
    CHECK(r2.rref.at(0, 1) == Scalar::rational(2));
    CHECK(r2.rref.at(1, 0).is_zero());
    CHECK(r2.rref.at(1, 1).is_zero());
}

TEST_CASE("rref rank agrees with minor-expansion oracle over F_11") {
    std::mt19937_64 rng(7);
    Field f = Field::prime(11);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = random_matrix(rng, 5, 8, f);
        CHECK(rref(m).rank == rank_by_minors(m));
    }
}

TEST_CASE("rref is idempotent and rank is transpose-invariant") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 12; ++trial) {
        Field f = (trial % 2) ? Field::prime(7) : Field::rational();
        Matrix m = random_matrix(rng, 3 + trial % 4, 4 + trial % 3, f);
        auto r = rref(m);
        CHECK(rref(r.rref).rref == r.rref);
        CHECK(r.rank == rref(m.transpose()).rank);
    }
}

TEST_CASE("kernel basis annihilation and count") {
    Matrix id = Matrix::identity(3, Field::rational());
    CHECK(kernel_basis(id).empty());

    Matrix row = qmat({{1, 1, 1}});
    auto k = kernel_basis(row);
    REQUIRE(k.size() == 2);
    for (auto& v : k) CHECK(dot(row.row(0), v).is_zero());

    std::mt19937_64 rng(17);
    Field f7 = Field::prime(7);
    for (int trial = 0; trial < 8; ++trial) {
        Matrix m = random_matrix(rng, 4, 7, f7);
        auto ker = kernel_basis(m);
        CHECK(ker.size() == 7 - rref(m).rank);
        for (auto& v : ker) CHECK(vec_is_zero(m.apply(v)));
        // independence
        Matrix km = Matrix::from_rows(ker, f7);
        CHECK(rank_of(km) == ker.size());
    }
}

TEST_CASE("solve: identity, underdetermined, random consistent") {
    Matrix id = Matrix::identity(3, Field::rational());
    Vec b = qvec({3, -1, 2});
    auto s = solve(id, b);
    REQUIRE(s.particular);
    CHECK(*s.particular == b);
    CHECK(s.nullity == 0);

    Matrix m = qmat({{1, 1}});
    auto s2 = solve(m, qvec({1}));
    REQUIRE(s2.particular);
    CHECK(s2.nullity == 1);
    CHECK(dot(m.row(0), *s2.particular) == Scalar::rational(1));

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Field f = (trial % 2) ? Field::prime(11) : Field::rational();
        Matrix a = random_matrix(rng, 4, 5, f);
        Vec x0(5, Scalar::zero(f));
        std::uniform_int_distribution<long> d(-4, 4);
        for (auto& v : x0) v = Scalar::integer(f, d(rng));
        Vec rhs = a.apply(x0);
        auto sol = solve(a, rhs);
        REQUIRE(sol.particular);
        CHECK(a.apply(*sol.particular) == rhs);
    }

    // inconsistent
    Matrix bad = qmat({{1, 0}, {1, 0}});
    auto s3 = solve(bad, qvec({1, 2}));
    CHECK(!s3.particular);
}

TEST_CASE("bareiss path matches plain field elimination") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = random_matrix(rng, 4, 6, Field::rational());
        auto r = rref(m);
        // re-run through the prime-field-style path by scaling: compare
        // against an independently computed RREF via solve-based probes
        for (auto& v : kernel_basis(m)) CHECK(vec_is_zero(m.apply(v)));
        CHECK(r.rank == rank_by_minors(m));
    }
}

TEST_CASE("matrix inverse and det") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 6; ++trial) {
        Field f = (trial % 2) ? Field::prime(13) : Field::rational();
        Matrix m = random_invertible(rng, 4, f);
        Matrix inv = inverse(m);
        CHECK(m * inv == Matrix::identity(4, f));
        CHECK(!det(m).is_zero());
    }
    CHECK(det(qmat({{2, 0}, {0, 3}})) == Scalar::rational(6));
}
