#pragma once

#include <random>

#include "test_util.hpp"
#include "torelli/kw.hpp"

namespace tu {

using namespace torelli;

// KW variety of type (d; parts) built from a canonical skeleton pushed
// through a random small invertible change of coordinates
inline KWVariety random_kw(std::mt19937_64& rng, size_t n, size_t d, const std::vector<size_t>& parts,
                           const Field& f = Field::rational()) {
    size_t total = d;
    for (size_t ni : parts) total += ni;
    if (total != n) throw std::invalid_argument("type does not sum to n");
    Matrix t = random_invertible(rng, n + 1, f, -2, 2);

    if (d == 0) {
        ProjPoint y(n, t.col(0));
        std::vector<LinearSubspace> spaces;
        size_t off = 1;
        for (size_t ni : parts) {
            std::vector<Vec> rows{t.col(0)};
            for (size_t i = 0; i < ni; ++i) rows.push_back(t.col(off + i));
            spaces.emplace_back(n, rows, f);
            off += ni;
        }
        return make_kw_point(n, y, spaces);
    }

    Matrix cc(n + 1, d + 1, f);
    for (size_t k = 0; k <= d; ++k)
        for (size_t i = 0; i <= n; ++i) cc.set(i, k, t.at(i, k));
    CurveData curve{d, cc};
    std::vector<std::pair<std::pair<Scalar, Scalar>, LinearSubspace>> kwparts;
    size_t off = d + 1;
    long param = 1;
    for (size_t ni : parts) {
        std::pair<Scalar, Scalar> p{Scalar::one(f), Scalar::integer(f, param++)};
        std::vector<Vec> rows{curve.at(p.first, p.second).coords()};
        for (size_t i = 0; i < ni; ++i) rows.push_back(t.col(off + i));
        kwparts.emplace_back(p, LinearSubspace(n, rows, f));
        off += ni;
    }
    return make_kw_curve(n, curve, kwparts);
}

// points of Z sampled on the components of Y; keeps each part spanned when
// span_parts is set, avoids the distinguished point, keeps Z nondegenerate
inline Arrangement sample_on_kw(std::mt19937_64& rng, const KWVariety& y, size_t curve_points,
                                size_t extra_per_part = 1, bool include_attachments = false) {
    const Field f = y.f;
    std::uniform_int_distribution<long> d(-5, 5);
    for (int attempt = 0; attempt < 300; ++attempt) {
        std::vector<ProjPoint> pts;
        auto push_unique = [&](const ProjPoint& p) {
            for (const auto& q : pts)
                if (q == p) return false;
            if (y.distinguished && *y.distinguished == p) return false;
            pts.push_back(p);
            return true;
        };
        bool ok = true;
        if (y.d > 0 && y.curve) {
            // curve points always avoid the attachment points
            size_t got = 0;
            for (int tries = 0; got < curve_points && tries < 100; ++tries) {
                Scalar s = Scalar::one(f), t = Scalar::integer(f, d(rng));
                ProjPoint cand = y.curve->at(s, t);
                bool is_att = false;
                for (const auto& part : y.parts) is_att = is_att || (part.attachment && *part.attachment == cand);
                if (is_att) continue;
                if (push_unique(cand)) ++got;
            }
            ok = ok && got == curve_points;
        }
        for (const auto& part : y.parts) {
            size_t want = part.ni + 1 + extra_per_part;
            std::vector<ProjPoint> mine;
            if (include_attachments && part.attachment && push_unique(*part.attachment))
                mine.push_back(*part.attachment);
            for (int tries = 0; mine.size() < want && tries < 400; ++tries) {
                Vec v(y.n + 1, Scalar::zero(f));
                for (size_t i = 0; i < part.space.basis().rows(); ++i) {
                    long c = d(rng);
                    if (c) v = vec_add(v, vec_scale(part.space.basis().row(i), Scalar::integer(f, c)));
                }
                if (vec_is_zero(v)) continue;
                ProjPoint cand(y.n, v);
                bool is_att = part.attachment && *part.attachment == cand;
                if (is_att && !include_attachments) continue;
                if (push_unique(cand)) mine.push_back(cand);
            }
            if (mine.size() < want || span_dim(mine) != static_cast<int>(part.ni)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Arrangement z(y.n, pts);
        if (!z.nondegenerate()) continue;
        return z;
    }
    throw std::runtime_error("sample_on_kw failed to produce a nondegenerate arrangement");
}

}  // namespace tu
