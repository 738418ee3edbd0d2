#pragma once

#include <random>

#include "torelli/projgeom.hpp"

namespace tu {

using namespace torelli;

inline Vec qvec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.push_back(Scalar::rational(x));
    return v;
}

inline Vec fvec(std::initializer_list<long> xs, const Field& f) {
    Vec v;
    for (long x : xs) v.push_back(Scalar::integer(f, x));
    return v;
}

inline ProjPoint qpt(std::initializer_list<long> xs) {
    return ProjPoint(xs.size() - 1, qvec(xs));
}

inline ProjPoint fpt(std::initializer_list<long> xs, const Field& f) {
    return ProjPoint(xs.size() - 1, fvec(xs, f));
}

inline Arrangement qarr(std::initializer_list<std::initializer_list<long>> pts) {
    std::vector<ProjPoint> v;
    size_t n = 0;
    for (auto& p : pts) {
        v.push_back(qpt(p));
        n = p.size() - 1;
    }
    return Arrangement(n, v);
}

inline Matrix qmat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vec> r;
    for (auto& row : rows) r.push_back(qvec(row));
    return Matrix::from_rows(r, Field::rational());
}

inline Matrix fmat(std::initializer_list<std::initializer_list<long>> rows, const Field& f) {
    std::vector<Vec> r;
    for (auto& row : rows) r.push_back(fvec(row, f));
    return Matrix::from_rows(r, f);
}

// random nondegenerate rational arrangement with small entries
inline Arrangement random_arrangement(std::mt19937_64& rng, size_t n, size_t l, long lo = -4, long hi = 4) {
    std::uniform_int_distribution<long> d(lo, hi);
    while (true) {
        std::vector<ProjPoint> pts;
        bool ok = true;
        for (size_t i = 0; i < l && ok; ++i) {
            for (int attempt = 0;; ++attempt) {
                if (attempt > 200) {
                    ok = false;
                    break;
                }
                Vec v;
                bool nz = false;
                for (size_t k = 0; k <= n; ++k) {
                    long x = d(rng);
                    nz = nz || x != 0;
                    v.push_back(Scalar::rational(x));
                }
                if (!nz) continue;
                ProjPoint p(n, v);
                bool dup = false;
                for (auto& q : pts) dup = dup || q == p;
                if (!dup) {
                    pts.push_back(p);
                    break;
                }
            }
        }
        if (!ok) continue;
        Arrangement z(n, pts);
        if (z.nondegenerate()) return z;
    }
}

inline Matrix random_invertible(std::mt19937_64& rng, size_t n, const Field& f, long lo = -3, long hi = 3) {
    std::uniform_int_distribution<long> d(lo, hi);
    while (true) {
        Matrix m(n, n, f);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m.set(i, j, Scalar::integer(f, d(rng)));
        if (!det(m).is_zero()) return m;
    }
}

}  // namespace tu
