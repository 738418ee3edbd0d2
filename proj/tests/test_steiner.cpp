#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "torelli/steiner.hpp"

using namespace torelli;
using namespace tu;

namespace {

Arrangement example_no() {
    return qarr({{1, 1, 0, 0}, {0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}, {0, 0, 1, 0}, {1, 0, 1, 1}});
}

Arrangement example_no2() {
    return qarr({{1, 1, 0, 0},
                 {0, 1, 0, 0},
                 {1, 0, 1, 0},
                 {0, 0, 0, 1},
                 {1, 0, 0, 1},
                 {0, 0, 1, 0},
                 {1, 2, 0, 0},
                 {0, 0, 1, 1},
                 {1, 0, 1, 1}});
}

Vec form(std::initializer_list<long> xs) { return qvec(xs); }

// printed 3x6 matrix of the seven-point example
LinMatrix printed_no_matrix() {
    LinMatrix m(3, 6, 4, Field::rational());
    m.set(0, 0, form({1, 1, 0, 0}));
    m.set(0, 1, form({0, -1, 0, 0}));
    m.set(0, 2, form({0, 0, 0, 0}));
    m.set(0, 3, form({0, 0, 0, 1}));
    m.set(0, 4, form({0, 0, 0, 0}));
    m.set(0, 5, form({0, 0, 1, 0}));
    m.set(1, 0, form({0, 0, 0, 0}));
    m.set(1, 1, form({0, 0, 0, 0}));
    m.set(1, 2, form({1, 0, 1, 0}));
    m.set(1, 3, form({0, 0, 0, 1}));
    m.set(1, 4, form({0, 0, 0, 0}));
    m.set(1, 5, form({0, 0, 0, 0}));
    m.set(2, 0, form({0, 0, 0, 0}));
    m.set(2, 1, form({0, 0, 0, 0}));
    m.set(2, 2, form({0, 0, 0, 0}));
    m.set(2, 3, form({0, 0, 0, 0}));
    m.set(2, 4, form({1, 0, 0, 1}));
    m.set(2, 5, form({0, 0, 1, 0}));
    return m;
}

// printed 5x8 matrix of the nine-point example (its own column order)
LinMatrix printed_no2_matrix() {
    LinMatrix m(5, 8, 4, Field::rational());
    auto row = [&](size_t i, std::initializer_list<Vec> forms) {
        size_t j = 0;
        for (const auto& f : forms) m.set(i, j++, f);
    };
    Vec z = form({0, 0, 0, 0});
    row(0, {form({1, 1, 0, 0}), z, form({0, -1, 0, 0}), z, form({0, 0, 0, 1}), z, form({0, 0, 1, 0}), z});
    row(1, {z, form({1, 2, 0, 0}), form({0, -2, 0, 0}), z, form({0, 0, 0, 1}), z, form({0, 0, 1, 0}), z});
    row(2, {z, z, z, form({1, 0, 1, 0}), form({0, 0, 0, 1}), z, z, z});
    row(3, {z, z, z, z, z, form({1, 0, 0, 1}), form({0, 0, 1, 0}), z});
    row(4, {form({1, 1, 0, 0}), z, form({0, -1, 0, 0}), z, z, z, z, form({0, 0, 1, 1})});
    return m;
}

// extract the scalar matrix beta' from a printed Steiner-shaped matrix whose
// column i is a multiple of the canonical form of `pt`
Matrix extract_beta(const LinMatrix& m, const std::vector<ProjPoint>& col_points) {
    Matrix beta(m.rows(), m.cols(), m.field());
    for (size_t i = 0; i < m.cols(); ++i) {
        const Vec f = col_points[i].coords();
        size_t k = 0;
        while (f[k].is_zero()) ++k;
        for (size_t j = 0; j < m.rows(); ++j) {
            const Vec& e = m.at(j, i);
            Scalar lambda = e[k] / f[k];
            CHECK(e == vec_scale(f, lambda));
            beta.set(j, i, lambda);
        }
    }
    return beta;
}

// row equivalence of two Steiner matrices over matching column points
void check_row_equivalent(const SteinerMatrix& built, const LinMatrix& printed,
                          const std::vector<ProjPoint>& printed_cols) {
    REQUIRE(built.a() == printed.rows());
    REQUIRE(built.b() == printed.cols());
    // match built columns to printed columns by point identity
    Matrix printed_beta = extract_beta(printed, printed_cols);
    Matrix ours(built.a(), built.b(), printed.field());
    for (size_t i = 0; i < built.b(); ++i) {
        size_t src = built.b();
        for (size_t t = 0; t < built.b(); ++t)
            if (built.points[t] == printed_cols[i]) src = t;
        REQUIRE(src < built.b());
        for (size_t j = 0; j < built.a(); ++j) ours.set(j, i, built.beta.at(j, src));
    }
    auto r1 = rref(ours), r2 = rref(printed_beta);
    CHECK(r1.rank == built.a());
    CHECK(r1.rref == r2.rref);
}

}  // namespace

TEST_CASE("build_steiner on the P_2 simplex plus unit point") {
    Arrangement z = qarr({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    SteinerMatrix m = build_steiner(z);
    REQUIRE(m.a() == 1);
    REQUIRE(m.b() == 3);
    CHECK(m.mat.at(0, 0) == form({1, 0, 0}));
    CHECK(m.mat.at(0, 1) == form({0, 1, 0}));
    CHECK(m.mat.at(0, 2) == form({0, 0, 1}));
    CHECK(m.mat.row_form_sum(0) == form({1, 1, 1}));
    CHECK(verify_steiner(m).ok());
}

TEST_CASE("example NO: row-equivalent to the printed 3x6 matrix") {
    Arrangement z = example_no();
    SteinerMatrix m = build_steiner(z);
    REQUIRE(m.a() == 3);
    REQUIRE(m.b() == 6);
    CHECK(m.order == std::vector<size_t>{0, 1, 2, 3, 4, 5, 6});
    // row sums give f_7 = x_0 + x_2 + x_3
    for (size_t j = 0; j < 3; ++j) CHECK(m.mat.row_form_sum(j) == form({1, 0, 1, 1}));

    std::vector<ProjPoint> cols;
    for (size_t i = 0; i < 6; ++i) cols.push_back(z[i]);
    check_row_equivalent(m, printed_no_matrix(), cols);
    CHECK(verify_steiner(m).ok());
}

TEST_CASE("example NO2: row-equivalent to the printed 5x8 matrix") {
    Arrangement z = example_no2();
    SteinerMatrix m = build_steiner(z);
    REQUIRE(m.a() == 5);
    REQUIRE(m.b() == 8);
    std::vector<ProjPoint> printed_cols = {qpt({1, 1, 0, 0}), qpt({1, 2, 0, 0}), qpt({0, 1, 0, 0}),
                                           qpt({1, 0, 1, 0}), qpt({0, 0, 0, 1}), qpt({1, 0, 0, 1}),
                                           qpt({0, 0, 1, 0}), qpt({0, 0, 1, 1})};
    check_row_equivalent(m, printed_no2_matrix(), printed_cols);
}

TEST_CASE("verify_steiner on random arrangements, with corruption detection") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 8; ++t) {
        size_t n = 2 + t % 3;
        size_t l = n + 2 + t % 3;
        Arrangement z = random_arrangement(rng, n, l);
        SteinerMatrix m = build_steiner(z);
        CHECK(verify_steiner(m).ok());

        if (m.a() > 0) {
            SteinerMatrix bad = m;
            Vec e = bad.mat.at(0, 0);
            e[0] += Scalar::rational(1);
            bad.mat.set(0, 0, e);
            CHECK(!verify_steiner(bad).ok());
        }
    }
}

TEST_CASE("l = n+1 gives the flagged zero-row matrix") {
    Arrangement z = qarr({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    SteinerMatrix m = build_steiner(z);
    CHECK(m.zero_rows);
    CHECK(m.a() == 0);
    CHECK(m.b() == 2);
}

TEST_CASE("hilbert_data") {
    auto h = hilbert_data(7, 3);
    CHECK(h.rank == 3);
    CHECK(h.c1 == 3);
    CHECK(h.slope == Scalar::rational(1));
    CHECK(h.chi_at(0) == Scalar::rational(6));

    auto h2 = hilbert_data(4, 3);
    CHECK(h2.rank == 3);
    CHECK(h2.c1 == 0);

    auto h3 = hilbert_data(9, 3);
    CHECK(h3.rank == 3);
    CHECK(h3.c1 == 5);
    CHECK(h3.slope == Scalar::rational(5, 3));
}

TEST_CASE("degenerate_split") {
    // four points on a line in P_2
    Arrangement z = qarr({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}});
    auto d = degenerate_split(z);
    CHECK(d.trivial_summands == 1);
    CHECK(d.sub.n() == 1);
    CHECK(d.sub_steiner.a() == 2);
    CHECK(d.sub_steiner.b() == 3);

    // P_2 simplex inside P_3 plus an extra coplanar point
    Arrangement z2 = qarr({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 0}});
    auto d2 = degenerate_split(z2);
    CHECK(d2.trivial_summands == 1);
    CHECK(d2.sub.n() == 2);

    // adapted ambient matrix uses only the first k+1 variables
    std::mt19937_64 rng(53);
    for (int t = 0; t < 5; ++t) {
        Arrangement plane = random_arrangement(rng, 2, 5);
        // embed in P_3 with last coordinate a fixed combination
        std::vector<ProjPoint> emb;
        for (const auto& p : plane.points()) {
            Vec c = p.coords();
            Vec e{c[0], c[1], c[2], c[0] + c[1]};
            emb.emplace_back(3, e);
        }
        Arrangement ez(3, emb);
        if (ez.span() != 2) continue;
        auto ds = degenerate_split(ez);
        CHECK(ds.trivial_summands == 1);
        for (size_t i = 0; i < ds.ambient.rows(); ++i)
            for (size_t j = 0; j < ds.ambient.cols(); ++j) CHECK(ds.ambient.at(i, j)[3].is_zero());
        CHECK(verify_steiner(ds.sub_steiner).ok());
    }

    CHECK_THROWS(degenerate_split(example_no()));
}
