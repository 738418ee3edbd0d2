#include "torelli/kw.hpp"

#include <algorithm>

namespace torelli {

// ---------------------------------------------------------------------------
// CurveData
// ---------------------------------------------------------------------------

ProjPoint CurveData::at(const Scalar& s, const Scalar& t) const {
    const Field f = coeff.field();
    Vec mono(degree + 1, Scalar::zero(f));
    Vec spow(degree + 1, Scalar::one(f)), tpow(degree + 1, Scalar::one(f));
    for (size_t i = 1; i <= degree; ++i) {
        spow[i] = spow[i - 1] * s;
        tpow[i] = tpow[i - 1] * t;
    }
    for (size_t k = 0; k <= degree; ++k) mono[k] = spow[k] * tpow[degree - k];
    Vec c = coeff.apply(mono);
    return ProjPoint(coeff.rows() - 1, c);
}

LinearSubspace CurveData::span() const {
    std::vector<Vec> rows;
    for (size_t k = 0; k <= degree; ++k) rows.push_back(coeff.col(k));
    return LinearSubspace(coeff.rows() - 1, rows, coeff.field());
}

std::optional<std::pair<Scalar, Scalar>> CurveData::parameter_of(const ProjPoint& p) const {
    const Field f = coeff.field();
    SolveResult sol = solve(coeff, p.coords());
    if (!sol.particular) return std::nullopt;
    const Vec& x = *sol.particular;
    Scalar s = Scalar::zero(f), t = Scalar::zero(f);
    if (!x[0].is_zero()) {
        // x_k = s^k t^(d-k) up to scale, t != 0
        s = x.size() > 1 ? x[1] : Scalar::zero(f);
        t = x[0];
    } else {
        s = Scalar::one(f);
        t = Scalar::zero(f);
    }
    if (s.is_zero() && t.is_zero()) return std::nullopt;
    if (at(s, t) == p) return std::make_pair(s, t);
    return std::nullopt;
}

std::vector<size_t> KWVariety::type_parts() const {
    std::vector<size_t> out;
    for (const auto& p : parts) out.push_back(p.ni);
    for (const auto& c : conjugate) out.push_back(c.size);
    return out;
}

bool rank1_contains(const LinMatrix& m, const ProjPoint& p) {
    Matrix v = m.evaluate(p.coords());
    return rank_of(v) <= 1;
}

// ---------------------------------------------------------------------------
// forward construction: witness -> KW variety
// ---------------------------------------------------------------------------

namespace {

// deterministic complement of <inside> in the row space of sub
std::vector<Vec> complement_in(const LinearSubspace& sub, const Vec& inside) {
    std::vector<Vec> picked{inside};
    std::vector<Vec> out;
    for (size_t i = 0; i < sub.basis().rows(); ++i) {
        Vec cand = sub.basis().row(i);
        std::vector<Vec> trial = picked;
        trial.push_back(cand);
        if (rank_of(Matrix::from_rows(trial, sub.field())) > picked.size()) {
            picked.push_back(cand);
            out.push_back(cand);
        }
    }
    return out;
}

BinaryForm binary_power(const BinaryForm& p, size_t r) {
    BinaryForm g = p;
    for (size_t i = 1; i < r; ++i) g = g * p;
    return g;
}

}  // namespace

KWVariety kw_from_witness(const Arrangement& z, const ProjPoint& y, const WitnessB& w) {
    const size_t n = z.n();
    const Field f = z.field();

    LinMatrix mw(2, n, n + 1, f);
    for (size_t j = 0; j < n; ++j) {
        mw.set(0, j, w.h[j]);
        mw.set(1, j, w.g[j]);
    }
    Pencil pen = pencil_from_matrix(mw);
    KroneckerForm kf = kronecker_form(pen);

    if (!kf.left_minimal.empty() || kf.right_minimal.size() != 1)
        throw KWInconsistent("witness pencil is not injective-generic");
    const size_t d = kf.right_minimal[0];

    KWVariety out;
    out.n = n;
    out.f = f;
    out.d = d;
    out.m = LinMatrix();
    out.warnings = kf.warnings;

    const Matrix& q = kf.Q;  // original coords of canonical point w: z = Q w

    if (d > 0) {
        Matrix cc(n + 1, d + 1, f);
        for (size_t k = 0; k <= d; ++k) {
            Scalar sign = (k % 2) ? -Scalar::one(f) : Scalar::one(f);
            for (size_t i = 0; i <= n; ++i) cc.set(i, k, q.at(i, k) * sign);
        }
        out.curve = CurveData{d, cc};
        if (!(out.curve->at(Scalar::one(f), Scalar::zero(f)) == y))
            throw KWInconsistent("unstable point is not on the extracted curve part");
    } else {
        out.distinguished = ProjPoint(n, q.col(0));
        if (!(*out.distinguished == y))
            throw KWInconsistent("distinguished point does not match the unstable point");
    }

    // regular blocks: one linear part (or conjugate block) per factor
    size_t col = d + 1;
    for (const auto& rb : kf.regular) {
        std::vector<Vec> block_cols;
        for (size_t t = 0; t < rb.size; ++t) block_cols.push_back(q.col(col + t));
        col += rb.size;

        const bool rational_linear = rb.certified_irreducible && rb.factor.degree() == 1 && !rb.degraded;
        bool jordan = false;
        for (size_t r : rb.chains) jordan = jordan || r > 1;

        if (rational_linear) {
            KWLinearPart part;
            part.ni = rb.size;
            if (d > 0) {
                // factor c0 xi0 + c1 xi1 attaches at parameter (-c1 : c0)
                Scalar c0 = rb.factor.c[0], c1 = rb.factor.c[1];
                ProjPoint att = out.curve->at(-c1, c0);
                part.attachment = att;
                std::vector<Vec> rows = block_cols;
                rows.push_back(att.coords());
                part.space = LinearSubspace(n, rows, f);
            } else {
                std::vector<Vec> rows = block_cols;
                rows.push_back(out.distinguished->coords());
                part.space = LinearSubspace(n, rows, f);
            }
            if (part.space.proj_dim() != static_cast<int>(part.ni))
                throw KWInconsistent("linear part has unexpected dimension");
            if (jordan)
                out.warnings.push_back("nontrivial Jordan block over " + rb.factor.str() +
                                       "; rank-1 locus is a proper subvariety of the cone");
            out.parts.push_back(std::move(part));
        } else {
            KWConjugateBlock cb;
            cb.factor = rb.factor;
            cb.size = rb.size;
            cb.block_space = LinearSubspace(n, block_cols, f);
            out.conjugate.push_back(std::move(cb));
            out.warnings.push_back("factor " + rb.factor.str() +
                                   " of degree " + std::to_string(rb.factor.degree()) +
                                   " kept at factor level; conjugate parts live in the rank-1 locus");
        }
    }

    if (d == 0 && out.s() < 2)
        throw KWInconsistent("d = 0 with a single linear part contradicts set-theoretic nondegeneracy");

    out.m = matrix_from_kw(out, y);
    for (const auto& zp : z.points())
        if (!rank1_contains(out.m, zp))
            throw KWInconsistent("arrangement point " + zp.str() + " escapes the rank-1 locus");
    return out;
}

KWVariety kw_from_unstable(const Arrangement& z, const ProjPoint& y) {
    UnstableResult r = is_unstable_sections(z, y);
    if (!r.unstable) throw std::invalid_argument("kw_from_unstable: point is not unstable");
    return kw_from_witness(z, y, *r.witness_b);
}

// ---------------------------------------------------------------------------
// converse construction
// ---------------------------------------------------------------------------

LinMatrix matrix_from_kw(const KWVariety& y, const ProjPoint& pt) {
    const size_t n = y.n;
    const Field f = y.f;
    std::vector<Vec> basis_cols;
    Pencil pencil = Pencil::zero(0, 0, f);

    if (y.d > 0) {
        if (!y.curve) throw std::invalid_argument("curve part missing");
        auto param = y.curve->parameter_of(pt);
        if (!param) throw std::invalid_argument("y is not on the curve part");
        for (const auto& p : y.parts)
            if (p.attachment && *p.attachment == pt)
                throw std::invalid_argument("y must avoid the attachment points");

        // reparametrize so pt = phi(1:0)
        Scalar sy = param->first, ty = param->second;
        Scalar u0 = Scalar::zero(f), u1 = Scalar::one(f);
        if (sy.is_zero()) {
            u0 = Scalar::one(f);
            u1 = Scalar::zero(f);
        }
        const size_t d = y.d;
        // phi'(s,t) = phi(sy*s + u0*t, ty*s + u1*t): expand in binary forms
        Matrix cc(n + 1, d + 1, f);
        BinaryForm l1(f, {sy, u0});  // sy*s + u0*t with (xi0, xi1) = (s, t)
        BinaryForm l2(f, {ty, u1});
        for (size_t k = 0; k <= d; ++k) {
            BinaryForm term(f, {Scalar::one(f)});
            for (size_t i = 0; i < k; ++i) term = term * l1;
            for (size_t i = 0; i < d - k; ++i) term = term * l2;
            // term coefficient of s^j t^(d-j) is c[d-j]
            for (size_t j = 0; j <= d; ++j) {
                Scalar coef = term.c[d - j];
                if (coef.is_zero()) continue;
                for (size_t i = 0; i <= n; ++i)
                    cc.set(i, j, cc.at(i, j) + y.curve->coeff.at(i, k) * coef);
            }
        }
        CurveData curve2{d, cc};
        if (!(curve2.at(Scalar::one(f), Scalar::zero(f)) == pt))
            throw std::logic_error("curve reparametrization failed");

        for (size_t k = 0; k <= d; ++k) {
            Vec col = cc.col(k);
            if (k % 2) col = vec_scale(col, -Scalar::one(f));
            basis_cols.push_back(col);
        }
        pencil = singular_right_block(d, f);

        for (const auto& part : y.parts) {
            if (!part.attachment) throw std::invalid_argument("attachment point missing on a linear part");
            auto ap = curve2.parameter_of(*part.attachment);
            if (!ap) throw std::invalid_argument("attachment point is not on the curve");
            Scalar si = ap->first, ti = ap->second;
            if (ti.is_zero()) throw std::invalid_argument("y must avoid the attachment points");
            for (const auto& w : complement_in(part.space, part.attachment->coords())) basis_cols.push_back(w);
            // diagonal block of the factor with root (si : ti)
            Pencil blk(Matrix::identity(part.ni, f).scaled(ti), Matrix::identity(part.ni, f).scaled(-si));
            pencil = pencil.block_diag(blk);
        }
    } else {
        if (!y.distinguished) throw std::invalid_argument("distinguished point missing");
        if (!(*y.distinguished == pt)) throw std::invalid_argument("y must be the distinguished point");
        basis_cols.push_back(y.distinguished->coords());
        pencil = Pencil::zero(0, 1, f);  // the L_0 singular column
        long a = 0;
        for (const auto& part : y.parts) {
            for (const auto& w : complement_in(part.space, y.distinguished->coords())) basis_cols.push_back(w);
            // factor xi0 - a*xi1 has root (a : 1); the xi0-coefficient stays 1
            Pencil blk(Matrix::identity(part.ni, f), Matrix::identity(part.ni, f).scaled(Scalar::integer(f, -a)));
            pencil = pencil.block_diag(blk);
            ++a;
        }
    }

    for (const auto& cb : y.conjugate) {
        size_t copies = cb.size / cb.factor.degree();
        if (copies * cb.factor.degree() != cb.size)
            throw std::invalid_argument("conjugate block size not a multiple of the factor degree");
        for (size_t i = 0; i < cb.block_space.basis().rows(); ++i) basis_cols.push_back(cb.block_space.basis().row(i));
        for (size_t i = 0; i < copies; ++i) pencil = pencil.block_diag(regular_block_for_form(cb.factor));
    }

    if (basis_cols.size() != n + 1) throw std::invalid_argument("KW data does not fill the ambient space");
    Matrix b(n + 1, n + 1, f);
    for (size_t j = 0; j <= n; ++j)
        for (size_t i = 0; i <= n; ++i) b.set(i, j, basis_cols[j][i]);
    Matrix binv = inverse(b);  // throws if the parts overlap the curve span

    LinMatrix mc = matrix_from_pencil(pencil);
    return mc.substitute(binv);
}

// ---------------------------------------------------------------------------
// validation and membership
// ---------------------------------------------------------------------------

KWValidation kw_validate(const KWVariety& y) {
    KWValidation out;
    auto fail = [&](const std::string& msg) {
        out.ok = false;
        out.violations.push_back(msg);
    };
    const size_t n = y.n;
    const Field f = y.f;

    size_t total = y.d;
    for (size_t ni : y.type_parts()) total += ni;
    if (total != n) fail("type does not sum to n: d + sum n_i = " + std::to_string(total));
    for (size_t ni : y.type_parts())
        if (ni < 1 || ni > n - 1) fail("part dimension " + std::to_string(ni) + " outside [1, n-1]");

    if (y.m.rows() != 2 || y.m.cols() != n) fail("rank-1 model has wrong shape");

    std::vector<ProjPoint> structural;

    if (y.d > 0) {
        if (!y.curve) {
            fail("curve part missing");
            return out;
        }
        if (rank_of(y.curve->coeff) != y.d + 1) fail("curve does not span a P_d");
        LinearSubspace cspan = y.curve->span();
        for (size_t i = 0; i < y.parts.size(); ++i) {
            const auto& part = y.parts[i];
            if (!part.attachment) {
                fail("linear part " + std::to_string(i + 1) + " has no attachment point");
                continue;
            }
            if (!y.curve->parameter_of(*part.attachment))
                fail("attachment of part " + std::to_string(i + 1) + " is not on the curve");
            LinearSubspace meet = cspan.intersect(part.space);
            if (meet.proj_dim() != 0 || !meet.contains(*part.attachment))
                fail("span(C) does not meet part " + std::to_string(i + 1) + " exactly at its attachment");
            structural.push_back(*part.attachment);
        }
        for (size_t i = 0; i < y.parts.size(); ++i)
            for (size_t j = i + 1; j < y.parts.size(); ++j)
                if (y.parts[i].space.intersect(y.parts[j].space).proj_dim() >= 0)
                    fail("linear parts " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " are not disjoint");
        // sample curve points
        long c = 0;
        size_t want = y.d + 3;
        structural.push_back(y.curve->at(Scalar::one(f), Scalar::zero(f)));
        structural.push_back(y.curve->at(Scalar::zero(f), Scalar::one(f)));
        while (structural.size() < want + y.parts.size()) {
            ++c;
            structural.push_back(y.curve->at(Scalar::one(f), Scalar::integer(f, c)));
            if (f.is_prime() && static_cast<uint64_t>(c) + 1 >= f.p) break;
        }
    } else {
        if (!y.distinguished) {
            fail("distinguished point missing");
            return out;
        }
        if (y.s() < 2) fail("d = 0 needs at least two parts");
        for (size_t i = 0; i < y.parts.size(); ++i) {
            if (!y.parts[i].space.contains(*y.distinguished))
                fail("part " + std::to_string(i + 1) + " misses the distinguished point");
            for (size_t j = i + 1; j < y.parts.size(); ++j) {
                LinearSubspace meet = y.parts[i].space.intersect(y.parts[j].space);
                if (meet.proj_dim() != 0 || !meet.contains(*y.distinguished))
                    fail("parts " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " do not meet exactly at the distinguished point");
            }
        }
        structural.push_back(*y.distinguished);
    }

    for (const auto& part : y.parts)
        for (size_t i = 0; i < part.space.basis().rows(); ++i)
            structural.emplace_back(n, part.space.basis().row(i));

    for (const auto& p : structural)
        if (!rank1_contains(y.m, p)) fail("structural point " + p.str() + " violates rank M <= 1");

    for (const auto& cb : y.conjugate)
        out.skipped.push_back("component-level checks skipped for conjugate factor " + cb.factor.str());
    return out;
}

KWMembership kw_membership(const KWVariety& y, const ProjPoint& p) {
    KWMembership out;
    out.member = rank1_contains(y.m, p);
    if (y.d > 0 && y.curve) {
        auto param = y.curve->parameter_of(p);
        if (param) {
            out.component = "curve";
            out.curve_param = param;
            return out;
        }
    }
    if (y.d == 0 && y.distinguished && *y.distinguished == p) {
        out.component = "distinguished";
        return out;
    }
    for (size_t i = 0; i < y.parts.size(); ++i)
        if (y.parts[i].space.contains(p)) {
            out.component = "L" + std::to_string(i + 1);
            return out;
        }
    if (out.member) out.component = "rank-1 locus (conjugate region)";
    return out;
}

// ---------------------------------------------------------------------------
// rational normal curve interpolation
// ---------------------------------------------------------------------------

std::optional<CurveData> rnc_through(const std::vector<ProjPoint>& pts) {
    if (pts.size() < 4) return std::nullopt;
    const size_t d = pts.size() - 3;
    const size_t n = pts[0].dim();
    const Field f = pts[0].field();
    if (span_dim(pts) != static_cast<int>(d)) return std::nullopt;

    // coordinates inside the span
    LinearSubspace span = LinearSubspace::from_points(n, pts);
    Matrix basis = span.basis();  // (d+1) x (n+1)
    Matrix bt = basis.transpose();
    std::vector<Vec> local;
    for (const auto& p : pts) {
        SolveResult s = solve(bt, p.coords());
        if (!s.particular) return std::nullopt;
        local.push_back(*s.particular);
    }

    // frame: G e_j = local[j], G(1:...:1) = local[d+1]
    Matrix g(d + 1, d + 1, f);
    {
        Matrix cols(d + 1, d + 1, f);
        for (size_t j = 0; j <= d; ++j)
            for (size_t i = 0; i <= d; ++i) cols.set(i, j, local[j][i]);
        SolveResult lam = solve(cols, local[d + 1]);
        if (!lam.particular) return std::nullopt;
        for (size_t j = 0; j <= d; ++j) {
            if ((*lam.particular)[j].is_zero()) return std::nullopt;  // frame degenerates
            for (size_t i = 0; i <= d; ++i) g.set(i, j, cols.at(i, j) * (*lam.particular)[j]);
        }
    }
    SolveResult zs = solve(g, local[d + 2]);
    if (!zs.particular) return std::nullopt;
    Vec w = *zs.particular;
    for (const auto& x : w)
        if (x.is_zero()) return std::nullopt;
    for (size_t i = 0; i <= d; ++i)
        for (size_t j = i + 1; j <= d; ++j)
            if (w[i] == w[j]) return std::nullopt;  // coincident parameters

    // phi_i(s,t) = prod_{j != i} (t - a_j s), a_j = -1/w_j
    std::vector<Scalar> a(d + 1);
    for (size_t i = 0; i <= d; ++i) a[i] = -w[i].inv();
    Matrix frame_cols(d + 1, d + 1, f);
    for (size_t i = 0; i <= d; ++i) {
        BinaryForm prod(f, {Scalar::one(f)});
        for (size_t j = 0; j <= d; ++j) {
            if (j == i) continue;
            prod = prod * BinaryForm(f, {-a[j], Scalar::one(f)});
        }
        // coefficient of s^k t^(d-k) is prod.c[d-k]
        for (size_t k = 0; k <= d; ++k) frame_cols.set(i, k, prod.c[d - k]);
    }
    // ambient coefficients: columns mapped through G then the span basis
    Matrix ambient(n + 1, d + 1, f);
    for (size_t k = 0; k <= d; ++k) {
        Vec loc = g.apply(frame_cols.col(k));
        Vec amb = bt.apply(loc);
        for (size_t i = 0; i <= n; ++i) ambient.set(i, k, amb[i]);
    }
    CurveData curve{d, ambient};
    for (const auto& p : pts)
        if (!curve.parameter_of(p)) return std::nullopt;
    return curve;
}

// ---------------------------------------------------------------------------
// explicit assembly
// ---------------------------------------------------------------------------

KWVariety make_kw_curve(size_t n, const CurveData& c,
                        const std::vector<std::pair<std::pair<Scalar, Scalar>, LinearSubspace>>& parts) {
    KWVariety out;
    out.n = n;
    out.f = c.coeff.field();
    out.d = c.degree;
    out.curve = c;
    for (const auto& [param, space] : parts) {
        KWLinearPart part;
        part.attachment = c.at(param.first, param.second);
        part.ni = static_cast<size_t>(space.proj_dim());
        part.space = space;
        out.parts.push_back(part);
    }
    // pick a model point on the curve away from the attachments
    const Field f = out.f;
    std::optional<ProjPoint> pick;
    auto try_param = [&](const Scalar& s, const Scalar& t) {
        if (pick) return;
        ProjPoint cand = c.at(s, t);
        for (const auto& p : out.parts)
            if (p.attachment && *p.attachment == cand) return;
        pick = cand;
    };
    try_param(Scalar::one(f), Scalar::zero(f));
    try_param(Scalar::zero(f), Scalar::one(f));
    for (long t = 1; !pick && t < 100; ++t) {
        try_param(Scalar::one(f), Scalar::integer(f, t));
        if (f.is_prime() && static_cast<uint64_t>(t) + 1 >= f.p) break;
    }
    if (!pick) throw std::invalid_argument("no free curve point available for the model");
    out.m = matrix_from_kw(out, *pick);
    return out;
}

KWVariety make_kw_point(size_t n, const ProjPoint& y, const std::vector<LinearSubspace>& parts) {
    KWVariety out;
    out.n = n;
    out.f = y.field();
    out.d = 0;
    out.distinguished = y;
    for (const auto& space : parts) {
        KWLinearPart part;
        part.ni = static_cast<size_t>(space.proj_dim());
        part.space = space;
        out.parts.push_back(part);
    }
    out.m = matrix_from_kw(out, y);
    return out;
}

}  // namespace torelli
