#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace torelli;
using namespace tu;

namespace {

// the seven points of the L_0-line + plane configuration used throughout
Arrangement example_no() {
    return qarr({{1, 1, 0, 0}, {0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}, {0, 0, 1, 0}, {1, 0, 1, 1}});
}

}  // namespace

TEST_CASE("point normalization is canonical") {
    CHECK(qpt({2, 4, 6}) == qpt({1, 2, 3}));
    CHECK(qpt({-1, 2, -3}) == qpt({1, -2, 3}));
    ProjPoint half(2, {Scalar::rational(1, 2), Scalar::rational(1, 3), Scalar::rational(0)});
    CHECK(half == qpt({3, 2, 0}));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int t = 0; t < 10; ++t) {
        Vec v = qvec({d(rng), d(rng), d(rng), d(rng)});
        if (vec_is_zero(v)) continue;
        ProjPoint p(3, v);
        for (int s = 0; s < 50; ++s) {
            long num = 0, den = 0;
            while (num == 0) num = d(rng);
            while (den == 0) den = d(rng);
            Scalar lambda = Scalar::rational(num, den);
            Vec w = vec_scale(v, lambda);
            CHECK(ProjPoint(3, w) == p);
        }
    }

    Field f7 = Field::prime(7);
    ProjPoint fp(2, fvec({3, 5, 1}, f7));
    CHECK(fp.coords()[0] == Scalar::one(f7));
}

TEST_CASE("incidence pairing") {
    CHECK(incident(qpt({1, 0, 0}), qpt({0, 1, 0})));
    CHECK(!incident(qpt({1, 1, 1}), qpt({1, 1, 1})));
    CHECK_THROWS(incident(qpt({1, 0}), qpt({1, 0, 0})));

    // for each z_i of the fixture, incident(x, z_i) iff f_i(x) = 0
    Arrangement no = example_no();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 100; ++t) {
        Vec x = qvec({d(rng), d(rng), d(rng), d(rng)});
        if (vec_is_zero(x)) continue;
        ProjPoint xp(3, x);
        for (const auto& z : no.points()) {
            bool pair_vanish = dot(xp.coords(), z.coords()).is_zero();
            CHECK(incident(xp, z) == pair_vanish);
        }
    }
}

TEST_CASE("span dimension and nondegeneracy") {
    CHECK(qarr({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).span() == 2);
    CHECK(qarr({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}).span() == 1);
    CHECK(example_no().span() == 3);
    CHECK(example_no().nondegenerate());
}

TEST_CASE("general position") {
    CHECK(general_position(qarr({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})));
    CHECK(!general_position(qarr({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}})));

    // brute force agreement on random sets of 6 points in P_3
    std::mt19937_64 rng(19);
    for (int t = 0; t < 6; ++t) {
        Arrangement z = random_arrangement(rng, 3, 6);
        bool brute = true;
        for (size_t a = 0; a < 6 && brute; ++a)
            for (size_t b = a + 1; b < 6 && brute; ++b)
                for (size_t c = b + 1; c < 6 && brute; ++c)
                    for (size_t d = c + 1; d < 6 && brute; ++d) {
                        std::vector<ProjPoint> sub{z[a], z[b], z[c], z[d]};
                        if (span_dim(sub) < 3) brute = false;
                    }
        CHECK(general_position(z) == brute);
    }
}

TEST_CASE("quadric space dimensions") {
    // 5 points in P_2: at least one conic through them
    std::mt19937_64 rng(23);
    Arrangement five = random_arrangement(rng, 2, 5);
    CHECK(quadric_space(five).dim >= 1);

    // enough generic points kill all quadrics
    for (int t = 0; t < 4; ++t) {
        Arrangement z = random_arrangement(rng, 2, 8, -7, 7);
        auto qs = quadric_space(z);
        auto verify_rank = [&] {
            auto mons = quadratic_monomials(2);
            Matrix m(z.size(), mons.size(), z.field());
            for (size_t r = 0; r < z.size(); ++r)
                for (size_t k = 0; k < mons.size(); ++k)
                    m.set(r, k, z[r].coords()[mons[k].first] * z[r].coords()[mons[k].second]);
            return rank_of(m);
        };
        CHECK(qs.dim + verify_rank() == qs.monomials);
    }

    // the fixture lies on at least one quadric (the union of its two parts)
    CHECK(quadric_space(example_no()).dim >= 1);

    // each basis element really vanishes on all points
    Arrangement no = example_no();
    auto qs = quadric_space(no);
    auto mons = quadratic_monomials(3);
    for (const auto& quad : qs.basis)
        for (const auto& z : no.points()) {
            Scalar acc = Scalar::rational(0);
            for (size_t k = 0; k < mons.size(); ++k)
                acc += quad[k] * z.coords()[mons[k].first] * z.coords()[mons[k].second];
            CHECK(acc.is_zero());
        }
}

TEST_CASE("secant defects") {
    // collinear triple in P_2 is reported
    Arrangement z = qarr({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    auto defects = secant_defects(z);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].subset == std::vector<size_t>{0, 1, 2});
    CHECK(defects[0].span_dim == 1);

    // general position: none
    std::mt19937_64 rng(31);
    for (int t = 0; t < 4; ++t) {
        Arrangement g = random_arrangement(rng, 2, 6, -9, 9);
        if (!general_position(g)) continue;
        CHECK(secant_defects(g).empty());
    }
}

TEST_CASE("reduce_mod_p") {
    Arrangement simplex = qarr({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto rs = reduce_mod_p(simplex, 5);
    CHECK(rs.size() == 3);
    CHECK(rs.span() == 2);

    // forced collision: (1:1:0) and (1:1+p:0) mod p
    Arrangement coll = qarr({{1, 1, 0}, {1, 8, 0}, {0, 0, 1}});
    CHECK_THROWS_AS(reduce_mod_p(coll, 7), BadPrime);

    auto no11 = reduce_mod_p(example_no(), 11);
    CHECK(no11.size() == 7);
    CHECK(no11.span() == 3);

    // span never grows after reduction
    std::mt19937_64 rng(37);
    for (int t = 0; t < 6; ++t) {
        Arrangement z = random_arrangement(rng, 3, 6);
        try {
            auto zp = reduce_mod_p(z, 11);
            CHECK(zp.span() <= z.span());
        } catch (const BadPrime&) {
        }
    }
}

TEST_CASE("linear subspaces") {
    LinearSubspace line = LinearSubspace::from_points(3, {qpt({1, 1, 0, 0}), qpt({0, 1, 0, 0})});
    CHECK(line.proj_dim() == 1);
    CHECK(line.contains(qpt({2, 1, 0, 0})));
    CHECK(!line.contains(qpt({0, 0, 1, 0})));

    LinearSubspace plane = LinearSubspace::from_points(3, {qpt({1, 0, 1, 0}), qpt({0, 0, 0, 1}), qpt({0, 0, 1, 0})});
    CHECK(plane.proj_dim() == 2);
    auto meet = line.intersect(plane);
    CHECK(meet.proj_dim() == 0);
    CHECK(meet.contains(qpt({1, 0, 0, 0})));
    CHECK(line.sum(plane).proj_dim() == 3);
}
