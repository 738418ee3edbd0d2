#include "torelli/steiner.hpp"

namespace torelli {

namespace {

// small deterministic generator for the reproducible "random" rank probes
struct SplitMix64 {
    uint64_t s;
    explicit SplitMix64(uint64_t seed) : s(seed) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

}  // namespace

SteinerMatrix build_steiner(const Arrangement& z) {
    const size_t n = z.n();
    const size_t l = z.size();
    if (l <= n) throw std::invalid_argument("build_steiner: need at least n+1 points");
    if (!z.nondegenerate())
        throw std::invalid_argument("build_steiner: degenerate arrangement (span " + std::to_string(z.span()) +
                                    " < " + std::to_string(n) + "); use degenerate_split");
    const Field f = z.field();

    // relation space {beta : sum beta_i z_i = 0} = ker of the (n+1) x l
    // coordinate-column matrix
    Matrix cols = z.coordinate_matrix().transpose();
    auto relations = kernel_basis(cols);

    // choose the dropped point: last one whose coefficient is not identically
    // zero across the relation space, preferring the last point of the input
    std::vector<size_t> order(l);
    for (size_t i = 0; i < l; ++i) order[i] = i;
    if (!relations.empty()) {
        auto movable = [&](size_t i) {
            for (const auto& r : relations)
                if (!r[i].is_zero()) return true;
            return false;
        };
        if (!movable(l - 1)) {
            size_t pick = l;
            for (size_t i = 0; i < l; ++i)
                if (movable(i)) {
                    pick = i;
                    break;
                }
            if (pick == l) throw std::logic_error("nonempty relation space with no movable point");
            order.erase(order.begin() + static_cast<long>(pick));
            order.push_back(pick);
        }
    }
    std::vector<ProjPoint> pts;
    pts.reserve(l);
    for (size_t i : order) pts.push_back(z[i]);
    Arrangement zz(n, pts);

    SteinerMatrix out{LinMatrix(l - n - 1, l - 1, n + 1, f), zz, order, Matrix(l - n - 1, l - 1, f),
                      l == n + 1};
    if (l == n + 1) return out;

    // particular relation with beta_l = -1 plus the kernel among z_1..z_{l-1}
    Matrix head(n + 1, l - 1, f);
    for (size_t j = 0; j + 1 < l; ++j)
        for (size_t i = 0; i <= n; ++i) head.set(i, j, zz[j][i]);
    SolveResult sol = solve(head, zz[l - 1].coords());
    if (!sol.particular) throw std::logic_error("dropped point not in the span of the others");
    auto ker = kernel_basis(head);

    std::vector<Vec> rows;
    rows.push_back(*sol.particular);
    for (const auto& k : ker) rows.push_back(vec_add(*sol.particular, k));
    out.beta = Matrix::from_rows(rows, f);

    for (size_t j = 0; j < out.a(); ++j)
        for (size_t i = 0; i + 1 < l; ++i) out.mat.set(j, i, vec_scale(zz[i].coords(), out.beta.at(j, i)));
    return out;
}

VerifySteinerReport verify_steiner(const SteinerMatrix& m) {
    VerifySteinerReport rep;
    const size_t l = m.points.size();
    const size_t n = m.points.n();
    const Field f = m.points.field();

    rep.column_divisibility = true;
    for (size_t i = 0; i + 1 < l; ++i) {
        const Vec fi = m.points[i].coords();
        for (size_t j = 0; j < m.a(); ++j) {
            const Vec& e = m.mat.at(j, i);
            Vec expect = vec_scale(fi, m.beta.at(j, i));
            if (e != expect) {
                rep.column_divisibility = false;
                rep.violations.push_back("entry (" + std::to_string(j) + "," + std::to_string(i) +
                                         ") is not beta * f_i");
            } else if (!vec_is_zero(e) && !proportionality(e, fi)) {
                rep.column_divisibility = false;
                rep.violations.push_back("entry (" + std::to_string(j) + "," + std::to_string(i) +
                                         ") not proportional to f_i");
            }
        }
    }

    rep.row_relations = true;
    for (size_t j = 0; j < m.a(); ++j) {
        Vec acc(n + 1, Scalar::zero(f));
        for (size_t i = 0; i + 1 < l; ++i) acc = vec_add(acc, vec_scale(m.points[i].coords(), m.beta.at(j, i)));
        if (acc != m.dropped().coords()) {
            rep.row_relations = false;
            rep.violations.push_back("row " + std::to_string(j) + " does not encode a relation onto z_l");
        }
        if (m.mat.row_form_sum(j) != m.dropped().coords()) {
            rep.row_relations = false;
            rep.violations.push_back("row-sum of row " + std::to_string(j) + " differs from f_l");
        }
    }

    // generic rank at 5 reproducible rational probe points
    SplitMix64 rng(0x5741u);
    size_t best = 0;
    for (int probe = 0; probe < 5; ++probe) {
        Vec pt(n + 1, Scalar::zero(f));
        for (size_t k = 0; k <= n; ++k) {
            long v = static_cast<long>(rng.next() % 2001) - 1000;
            pt[k] = Scalar::integer(f, v);
        }
        best = std::max(best, rank_of(m.mat.evaluate(pt)));
    }
    rep.generic_rank = best;
    rep.generic_rank_ok = best == m.a();
    if (!rep.generic_rank_ok)
        rep.violations.push_back("generic rank " + std::to_string(best) + " below expected " +
                                 std::to_string(m.a()));
    return rep;
}

Scalar ResolutionData::chi_at(long t) const {
    Scalar x = Scalar::rational(t);
    Scalar r = Scalar::rational(0);
    for (size_t i = hilbert_coeffs.size(); i-- > 0;) r = r * x + hilbert_coeffs[i];
    return r;
}

ResolutionData hilbert_data(size_t l, size_t n) {
    if (l < n + 1) throw std::invalid_argument("hilbert_data needs l >= n+1");
    if (n == 0) throw std::invalid_argument("hilbert_data needs n >= 1");
    // chi(t) = (l-1) C(n+t, n) - (l-n-1) C(n+t-1, n)
    const Field q = Field::rational();
    auto binom_poly = [&](long shift) {
        // prod_{i=1..n} (t + shift + i) / n!
        Vec c{Scalar::one(q)};
        for (size_t i = 1; i <= n; ++i) {
            Vec nc(c.size() + 1, Scalar::zero(q));
            Scalar root = Scalar::rational(shift + static_cast<long>(i));
            for (size_t k = 0; k < c.size(); ++k) {
                nc[k] += c[k] * root;
                nc[k + 1] += c[k];
            }
            c = std::move(nc);
        }
        Scalar fact = Scalar::one(q);
        for (size_t i = 2; i <= n; ++i) fact *= Scalar::rational(static_cast<long>(i));
        for (auto& x : c) x /= fact;
        return c;
    };
    Vec full = binom_poly(0), shifted = binom_poly(-1);
    Scalar cl = Scalar::rational(static_cast<long>(l) - 1);
    Scalar ca = Scalar::rational(static_cast<long>(l) - static_cast<long>(n) - 1);
    Vec chi(n + 1, Scalar::zero(q));
    for (size_t i = 0; i <= n; ++i) chi[i] = cl * full[i] - ca * shifted[i];

    ResolutionData out{n, static_cast<long>(l) - static_cast<long>(n) - 1, Scalar::rational(0), chi};
    out.slope = Scalar::rational(out.c1) / Scalar::rational(static_cast<long>(n));
    return out;
}

DegenerateSplit degenerate_split(const Arrangement& z) {
    const size_t n = z.n();
    const int k = z.span();
    if (k == static_cast<int>(n))
        throw std::invalid_argument("degenerate_split: arrangement is nondegenerate, nothing to split");
    if (k < 1) throw std::invalid_argument("degenerate_split: a single point spans no hyperplanes");
    const Field f = z.field();

    // adapted basis: span rows first, completed by unit vectors on free columns
    RrefResult r = rref(z.coordinate_matrix());
    std::vector<Vec> basis_cols;
    for (size_t i = 0; i < r.rank; ++i) basis_cols.push_back(r.rref.row(i));
    std::vector<bool> pivot(n + 1, false);
    for (size_t c : r.pivot_cols) pivot[c] = true;
    for (size_t c = 0; c <= n; ++c)
        if (!pivot[c]) {
            Vec e(n + 1, Scalar::zero(f));
            e[c] = Scalar::one(f);
            basis_cols.push_back(e);
        }
    Matrix b(n + 1, n + 1, f);  // columns are the basis vectors
    for (size_t j = 0; j <= n; ++j)
        for (size_t i = 0; i <= n; ++i) b.set(i, j, basis_cols[j][i]);
    Matrix g = inverse(b);  // z' = G z

    std::vector<ProjPoint> sub_pts;
    for (const auto& p : z.points()) {
        Vec np = g.apply(p.coords());
        Vec trunc(np.begin(), np.begin() + k + 1);
        for (size_t i = k + 1; i <= n; ++i)
            if (!np[i].is_zero()) throw std::logic_error("adapted coordinates leak outside the span");
        sub_pts.emplace_back(static_cast<size_t>(k), std::move(trunc));
    }
    Arrangement sub(static_cast<size_t>(k), sub_pts);

    DegenerateSplit out{g,
                        inverse(g).transpose(),
                        sub,
                        build_steiner(sub),
                        n - static_cast<size_t>(k),
                        LinMatrix()};
    // ambient matrix: same entries, padded with zero coefficients on x_{k+1..n}
    const SteinerMatrix& sm = out.sub_steiner;
    LinMatrix amb(sm.a(), sm.b(), n + 1, f);
    for (size_t i = 0; i < sm.a(); ++i)
        for (size_t j = 0; j < sm.b(); ++j) {
            Vec e(n + 1, Scalar::zero(f));
            const Vec& src = sm.mat.at(i, j);
            for (size_t t = 0; t < src.size(); ++t) e[t] = src[t];
            amb.set(i, j, std::move(e));
        }
    out.ambient = amb;
    return out;
}

}  // namespace torelli
