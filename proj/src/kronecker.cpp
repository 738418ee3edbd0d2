#include "torelli/kronecker.hpp"

#include <algorithm>

namespace torelli {

// ---------------------------------------------------------------------------
// Pencil
// ---------------------------------------------------------------------------

Pencil::Pencil(Matrix a, Matrix b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() != B.rows() || A.cols() != B.cols() || !(A.field() == B.field()))
        throw std::invalid_argument("pencil parts must share shape and field");
}

Pencil Pencil::zero(size_t rows, size_t cols, const Field& f) {
    return Pencil(Matrix(rows, cols, f), Matrix(rows, cols, f));
}

Matrix Pencil::eval(const Scalar& xi0, const Scalar& xi1) const {
    return A.scaled(xi0) + B.scaled(xi1);
}

Pencil Pencil::block_diag(const Pencil& o) const {
    const Field f = field();
    Pencil r = Pencil::zero(rows() + o.rows(), cols() + o.cols(), f);
    for (size_t i = 0; i < rows(); ++i)
        for (size_t j = 0; j < cols(); ++j) {
            r.A.set(i, j, A.at(i, j));
            r.B.set(i, j, B.at(i, j));
        }
    for (size_t i = 0; i < o.rows(); ++i)
        for (size_t j = 0; j < o.cols(); ++j) {
            r.A.set(rows() + i, cols() + j, o.A.at(i, j));
            r.B.set(rows() + i, cols() + j, o.B.at(i, j));
        }
    return r;
}

Pencil Pencil::submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
    return Pencil(A.submatrix(r0, c0, nr, nc), B.submatrix(r0, c0, nr, nc));
}

namespace {

// chart sample points (1,0), (0,1), (1,1), (1,-1), (1,2), ...
std::vector<std::pair<Scalar, Scalar>> probe_points(const Field& f, size_t count) {
    std::vector<std::pair<Scalar, Scalar>> pts;
    pts.emplace_back(Scalar::one(f), Scalar::zero(f));
    if (pts.size() < count) pts.emplace_back(Scalar::zero(f), Scalar::one(f));
    long c = 1;
    while (pts.size() < count) {
        pts.emplace_back(Scalar::one(f), Scalar::integer(f, c));
        if (pts.size() < count && f.is_rational()) pts.emplace_back(Scalar::one(f), Scalar::integer(f, -c));
        ++c;
        if (f.is_prime() && static_cast<uint64_t>(c) >= f.p)
            throw std::domain_error("field too small for pencil probing");
    }
    return pts;
}

Poly lagrange_interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
    const Field f = xs[0].field();
    Poly acc(f);
    for (size_t i = 0; i < xs.size(); ++i) {
        Poly basis = Poly::constant(Scalar::one(f));
        Scalar denom = Scalar::one(f);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * Poly::from_coeffs(f, {-xs[j], Scalar::one(f)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + basis.scaled(ys[i] / denom);
    }
    return acc;
}

}  // namespace

BinaryForm Pencil::det_form() const {
    if (rows() != cols()) throw std::invalid_argument("det_form of non-square pencil");
    const Field f = field();
    const size_t s = rows();
    if (s == 0) return BinaryForm(f, {Scalar::one(f)});
    if (f.is_prime() && f.p < s + 1) throw std::domain_error("field too small for determinant interpolation");
    std::vector<Scalar> xs, ys;
    for (size_t j = 0; j <= s; ++j) {
        Scalar t = Scalar::integer(f, static_cast<long>(j));
        xs.push_back(t);
        ys.push_back(det(eval(Scalar::one(f), t)));
    }
    Poly d = lagrange_interpolate(xs, ys);
    return BinaryForm::homogenize(d, s);
}

Pencil pencil_from_matrix(const LinMatrix& m) {
    if (m.rows() != 2) throw std::invalid_argument("pencil_from_matrix expects a 2-row matrix of forms");
    const size_t n = m.cols(), nv = m.nvars();
    Matrix a(n, nv, m.field()), b(n, nv, m.field());
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < nv; ++k) {
            a.set(j, k, m.at(0, j)[k]);
            b.set(j, k, m.at(1, j)[k]);
        }
    return Pencil(std::move(a), std::move(b));
}

LinMatrix matrix_from_pencil(const Pencil& n) {
    LinMatrix m(2, n.rows(), n.cols(), n.field());
    for (size_t j = 0; j < n.rows(); ++j) {
        Vec f0(n.cols(), Scalar::zero(n.field())), f1 = f0;
        for (size_t k = 0; k < n.cols(); ++k) {
            f0[k] = n.A.at(j, k);
            f1[k] = n.B.at(j, k);
        }
        m.set(0, j, std::move(f0));
        m.set(1, j, std::move(f1));
    }
    return m;
}

// ---------------------------------------------------------------------------
// canonical blocks
// ---------------------------------------------------------------------------

Pencil singular_right_block(size_t eps, const Field& f) {
    Pencil p = Pencil::zero(eps, eps + 1, f);
    for (size_t i = 0; i < eps; ++i) {
        p.A.set(i, i, Scalar::one(f));
        p.B.set(i, i + 1, Scalar::one(f));
    }
    return p;
}

Pencil singular_left_block(size_t eta, const Field& f) {
    return singular_right_block(eta, f).transpose();
}

Pencil regular_block_for_form(const BinaryForm& gamma) {
    const Field f = gamma.f;
    const size_t k = gamma.degree();
    if (k == 0 || gamma.is_zero()) throw std::invalid_argument("regular block needs a positive-degree form");
    BinaryForm g = gamma.normalized();
    bool pure_xi0 = true;
    for (size_t i = 1; i <= k; ++i)
        if (!g.c[i].is_zero()) pure_xi0 = false;
    if (pure_xi0) {
        // gamma = xi0^k: xi0*I + xi1*E (subdiagonal shift)
        Pencil p = Pencil::zero(k, k, f);
        for (size_t i = 0; i < k; ++i) p.A.set(i, i, Scalar::one(f));
        for (size_t i = 0; i + 1 < k; ++i) p.B.set(i + 1, i, Scalar::one(f));
        return p;
    }
    if (g.c[k].is_zero()) throw std::invalid_argument("regular block form must be xi0^k or coprime to xi0");
    Poly q = g.dehomogenize().monic();
    // xi1*I - xi0*C(q)
    Pencil p = Pencil::zero(k, k, f);
    for (size_t i = 0; i < k; ++i) p.B.set(i, i, Scalar::one(f));
    for (size_t i = 0; i + 1 < k; ++i) p.A.set(i + 1, i, -Scalar::one(f));
    for (size_t i = 0; i < k; ++i) p.A.set(i, k - 1, q.coeff(i));
    return p;
}

Pencil assemble_canonical(const std::vector<size_t>& right_minimal, const std::vector<size_t>& left_minimal,
                          const std::vector<std::pair<BinaryForm, std::vector<size_t>>>& regular, const Field& f) {
    Pencil c = Pencil::zero(0, 0, f);
    for (size_t eps : right_minimal) c = c.block_diag(singular_right_block(eps, f));
    for (size_t eta : left_minimal) c = c.block_diag(singular_left_block(eta, f));
    for (const auto& [p, chains] : regular) {
        for (size_t r : chains) {
            BinaryForm gamma = p.normalized();
            for (size_t i = 1; i < r; ++i) gamma = gamma * p.normalized();
            c = c.block_diag(regular_block_for_form(gamma));
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// kronecker_form
// ---------------------------------------------------------------------------

namespace {

size_t normal_rank(const Pencil& n) {
    const size_t bound = std::min(n.rows(), n.cols());
    if (bound == 0) return 0;
    size_t best = 0;
    for (const auto& [x0, x1] : probe_points(n.field(), bound + 1)) {
        best = std::max(best, rank_of(n.eval(x0, x1)));
        if (best == bound) break;
    }
    return best;
}

struct MinRightSolution {
    size_t delta;
    std::vector<Vec> x;  // x_0..x_delta, each of length cols
};

// smallest-degree polynomial solution of N(xi) x(xi) = 0
MinRightSolution find_min_right(const Pencil& n) {
    const Field f = n.field();
    const size_t m = n.rows(), q = n.cols();
    for (size_t delta = 0; delta <= q; ++delta) {
        Matrix sys((delta + 2) * m, (delta + 1) * q, f);
        // coefficient of xi0^(delta+1-i) xi1^i: A x_i + B x_{i-1}
        for (size_t i = 0; i <= delta + 1; ++i)
            for (size_t r = 0; r < m; ++r) {
                size_t row = i * m + r;
                if (i <= delta)
                    for (size_t c = 0; c < q; ++c) sys.set(row, i * q + c, n.A.at(r, c));
                if (i >= 1)
                    for (size_t c = 0; c < q; ++c) sys.set(row, (i - 1) * q + c, n.B.at(r, c));
            }
        auto ker = kernel_basis(sys);
        if (!ker.empty()) {
            MinRightSolution sol;
            sol.delta = delta;
            for (size_t i = 0; i <= delta; ++i)
                sol.x.emplace_back(ker[0].begin() + i * q, ker[0].begin() + (i + 1) * q);
            return sol;
        }
    }
    throw std::logic_error("no minimal right solution for a rank-deficient pencil");
}

// greedy completion of independent columns to a basis by unit vectors
Matrix complete_to_basis(const std::vector<Vec>& cols, size_t dim, const Field& f) {
    std::vector<Vec> chosen = cols;
    Matrix probe = Matrix::from_rows(chosen, f);  // rows = vectors
    size_t r = chosen.empty() ? 0 : rank_of(probe);
    if (r != chosen.size()) throw std::logic_error("columns to complete are dependent");
    for (size_t e = 0; e < dim && chosen.size() < dim; ++e) {
        Vec unit(dim, Scalar::zero(f));
        unit[e] = Scalar::one(f);
        std::vector<Vec> trial = chosen;
        trial.push_back(unit);
        if (rank_of(Matrix::from_rows(trial, f)) > chosen.size()) chosen.push_back(unit);
    }
    if (chosen.size() != dim) throw std::logic_error("basis completion failed");
    Matrix b(dim, dim, f);
    for (size_t j = 0; j < dim; ++j)
        for (size_t i = 0; i < dim; ++i) b.set(i, j, chosen[j][i]);
    return b;
}

struct ExtractAllResult {
    Matrix P, Q;
    std::vector<size_t> eps;
    Pencil rest;
    ExtractAllResult(const Field& f) : P(0, 0, f), Q(0, 0, f), rest(Pencil::zero(0, 0, f)) {}
};

Matrix embed_identity(const Matrix& local, size_t offset, size_t total) {
    Matrix g = Matrix::identity(total, local.field());
    for (size_t i = 0; i < local.rows(); ++i)
        for (size_t j = 0; j < local.cols(); ++j) g.set(offset + i, offset + j, local.at(i, j));
    return g;
}

// Extracts all right singular blocks (minimal indices first); afterwards
// P * work * Q = blockdiag(L_eps..., rest) with rest of full column normal rank.
ExtractAllResult extract_right_all(const Pencil& work) {
    const Field f = work.field();
    ExtractAllResult out(f);
    out.P = Matrix::identity(work.rows(), f);
    out.Q = Matrix::identity(work.cols(), f);
    out.rest = work;
    size_t ro = 0, co = 0;  // accumulated offsets

    while (out.rest.cols() > normal_rank(out.rest)) {
        const Pencil& n = out.rest;
        const size_t m = n.rows(), q = n.cols();
        MinRightSolution sol = find_min_right(n);
        const size_t d = sol.delta;

        Matrix qloc = complete_to_basis(sol.x, q, f);
        Matrix ploc = Matrix::identity(m, f);
        if (d > 0) {
            std::vector<Vec> us;
            for (size_t i = 1; i <= d; ++i) us.push_back(n.A.apply(sol.x[i]));
            ploc = complete_to_basis(us, m, f);
        }
        Pencil w1 = n.left_mul(inverse(ploc)).right_mul(qloc);

        // flip the raw leading block into the canonical L_d
        Matrix pf = Matrix::identity(m, f), qf = Matrix::identity(q, f);
        if (d > 0) {
            for (size_t r = 0; r < d; ++r) {
                for (size_t j = 0; j < d; ++j) pf.set(r, j, Scalar::zero(f));
                pf.set(r, d - 1 - r, Scalar::integer(f, (r % 2) ? -1 : 1));
            }
            for (size_t j = 0; j <= d; ++j) {
                for (size_t i = 0; i <= d; ++i) qf.set(i, j, Scalar::zero(f));
                qf.set(d - j, j, Scalar::integer(f, (j % 2) ? -1 : 1));
            }
            w1 = w1.left_mul(pf).right_mul(qf);
        }

        Matrix ptot = pf * inverse(ploc);
        Matrix qtot = qloc * qf;

        // clear the coupling block via L V + W R = -X
        if (d > 0 && q > d + 1) {
            const size_t rr = m - d, cc = q - d - 1;
            Pencil rpart = w1.submatrix(d, d + 1, rr, cc);
            Pencil xpart = w1.submatrix(0, d + 1, d, cc);
            // unknowns: V ((d+1) x cc) then W (d x rr)
            const size_t nv = (d + 1) * cc, nw = d * rr;
            Matrix sys(2 * d * cc, nv + nw, f);
            Vec rhs(2 * d * cc, Scalar::zero(f));
            auto vidx = [&](size_t i, size_t j) { return i * cc + j; };
            auto widx = [&](size_t i, size_t j) { return nv + i * rr + j; };
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < cc; ++j) {
                    size_t r0 = 2 * (i * cc + j);      // xi0 coefficient
                    size_t r1 = r0 + 1;                // xi1 coefficient
                    // (L V)_A = V row i ; (L V)_B = V row i+1
                    sys.set(r0, vidx(i, j), Scalar::one(f));
                    sys.set(r1, vidx(i + 1, j), Scalar::one(f));
                    for (size_t t = 0; t < rr; ++t) {
                        sys.set(r0, widx(i, t), rpart.A.at(t, j));
                        sys.set(r1, widx(i, t), rpart.B.at(t, j));
                    }
                    rhs[r0] = -xpart.A.at(i, j);
                    rhs[r1] = -xpart.B.at(i, j);
                }
            SolveResult sres = solve(sys, rhs);
            if (!sres.particular) throw std::logic_error("coupling elimination unsolvable");
            Matrix pe = Matrix::identity(m, f), qe = Matrix::identity(q, f);
            for (size_t i = 0; i < d; ++i)
                for (size_t t = 0; t < rr; ++t) pe.set(i, d + t, (*sres.particular)[widx(i, t)]);
            for (size_t i = 0; i <= d; ++i)
                for (size_t j = 0; j < cc; ++j) qe.set(i, d + 1 + j, (*sres.particular)[vidx(i, j)]);
            w1 = w1.left_mul(pe).right_mul(qe);
            ptot = pe * ptot;
            qtot = qtot * qe;
        }

        out.P = embed_identity(ptot, ro, out.P.rows()) * out.P;
        out.Q = out.Q * embed_identity(qtot, co, out.Q.cols());
        out.eps.push_back(d);
        ro += d;
        co += d + 1;
        out.rest = w1.submatrix(d, d + 1, m - d, q - d - 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// regular part (Weierstrass)
// ---------------------------------------------------------------------------

Matrix poly_of_matrix(const Poly& q, const Matrix& s) {
    const Field f = s.field();
    Matrix r(s.rows(), s.rows(), f);
    for (int i = q.deg(); i >= 0; --i) {
        r = r * s;
        Scalar c = q.coeff(static_cast<size_t>(i));
        for (size_t d = 0; d < s.rows(); ++d) r.set(d, d, r.at(d, d) + c);
    }
    return r;
}

// binary form composed with a linear substitution (xi0,xi1) -> (a xi0 + b xi1,
// c xi0 + d xi1), computed by evaluation/interpolation
BinaryForm subst_binary(const BinaryForm& g, const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
    const Field f = g.f;
    const size_t k = g.degree();
    if (f.is_prime() && f.p < k + 1) throw std::domain_error("field too small for form substitution");
    std::vector<Scalar> xs, ys;
    for (size_t j = 0; j <= k; ++j) {
        Scalar t = Scalar::integer(f, static_cast<long>(j));
        xs.push_back(t);
        ys.push_back(g.eval(a + b * t, c + d * t));
    }
    return BinaryForm::homogenize(lagrange_interpolate(xs, ys), k);
}

struct CyclicPiece {
    Vec gen;
    Poly minpoly;  // monic, in the chart variable
};

// Greedy cyclic decomposition of W = ker(tau(S)^mult) under S: repeatedly
// pick the candidate with the largest Krylov dimension relative to the
// accumulated span, adjust it so its annihilator holds exactly, and record
// its chain.
std::vector<CyclicPiece> primary_cyclic(const Matrix& s, const Poly& tau, size_t mult) {
    const Field f = s.field();
    const size_t dim = s.rows();
    Matrix taum = poly_of_matrix(tau, s);
    Matrix qm = Matrix::identity(dim, f);
    for (size_t i = 0; i < mult; ++i) qm = qm * taum;
    auto wbasis = kernel_basis(qm);
    const size_t wdim = wbasis.size();

    std::vector<CyclicPiece> pieces;
    std::vector<Vec> span;  // accumulated Krylov vectors

    auto rank_with = [&](const std::vector<Vec>& base, const Vec* extra) {
        std::vector<Vec> rows = base;
        if (extra) rows.push_back(*extra);
        if (rows.empty()) return static_cast<size_t>(0);
        return rank_of(Matrix::from_rows(rows, f));
    };

    while (span.size() < wdim) {
        // candidate with the largest relative Krylov dimension
        size_t best_k = 0;
        Vec best;
        std::vector<Vec> best_krylov;
        for (const auto& w0 : wbasis) {
            std::vector<Vec> kry;
            Vec v = w0;
            std::vector<Vec> ctx = span;
            size_t k = 0;
            while (true) {
                if (rank_with(ctx, &v) == ctx.size()) break;  // v dependent: stop
                ctx.push_back(v);
                kry.push_back(v);
                ++k;
                v = s.apply(v);
            }
            if (k > best_k) {
                best_k = k;
                best = w0;
                best_krylov = kry;
            }
        }
        if (best_k == 0) throw std::logic_error("cyclic decomposition stalled");

        // relative minpoly: S^k w = (span part) + sum c_j S^j w
        Vec top = s.apply(best_krylov.back());
        std::vector<Vec> cols;
        for (const auto& u : span) cols.push_back(u);
        for (const auto& u : best_krylov) cols.push_back(u);
        Matrix cm(dim, cols.size(), f);
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < dim; ++i) cm.set(i, j, cols[j][i]);
        SolveResult dep = solve(cm, top);
        if (!dep.particular) throw std::logic_error("Krylov dependence missing");
        std::vector<Scalar> g(best_k + 1, Scalar::zero(f));
        g[best_k] = Scalar::one(f);
        for (size_t j = 0; j < best_k; ++j) g[j] = -(*dep.particular)[span.size() + j];
        Poly minpoly = Poly::from_coeffs(f, g);

        // lift adjustment: make minpoly(S) * (best - correction) vanish exactly,
        // correction in the accumulated cyclic module
        Vec gen = best;
        if (!span.empty()) {
            Matrix gs = poly_of_matrix(minpoly, s);
            Vec target = gs.apply(best);
            if (!vec_is_zero(target)) {
                std::vector<Vec> corr_cols;
                for (const auto& piece : pieces) {
                    Vec v = piece.gen;
                    for (int j = 0; j < piece.minpoly.deg(); ++j) {
                        corr_cols.push_back(gs.apply(v));
                        v = s.apply(v);
                    }
                }
                Matrix ccm(dim, corr_cols.size(), f);
                for (size_t j = 0; j < corr_cols.size(); ++j)
                    for (size_t i = 0; i < dim; ++i) ccm.set(i, j, corr_cols[j][i]);
                SolveResult lift = solve(ccm, target);
                if (!lift.particular) throw std::logic_error("cyclic lift adjustment unsolvable");
                size_t off = 0;
                for (const auto& piece : pieces) {
                    Vec v = piece.gen;
                    for (int j = 0; j < piece.minpoly.deg(); ++j) {
                        gen = vec_sub(gen, vec_scale(v, (*lift.particular)[off + j]));
                        v = s.apply(v);
                    }
                    off += piece.minpoly.deg();
                }
                if (!vec_is_zero(poly_of_matrix(minpoly, s).apply(gen)))
                    throw std::logic_error("cyclic lift failed to annihilate");
            }
        }

        Vec v = gen;
        for (size_t j = 0; j < best_k; ++j) {
            span.push_back(v);
            v = s.apply(v);
        }
        pieces.push_back({gen, minpoly});
    }
    return pieces;
}

Vec krylov_column_stack(const Matrix& s, const Vec& gen, size_t k, Matrix& into, size_t col0) {
    Vec v = gen;
    for (size_t j = 0; j < k; ++j) {
        for (size_t i = 0; i < v.size(); ++i) into.set(i, col0 + j, v[i]);
        v = s.apply(v);
    }
    return v;
}

struct WeierstrassResult {
    Matrix P, Q;
    Pencil canonical;
    std::vector<RegularBlock> blocks;
    bool degraded = false;
    std::vector<std::string> warnings;
    WeierstrassResult(const Field& f) : P(0, 0, f), Q(0, 0, f), canonical(Pencil::zero(0, 0, f)) {}
};

WeierstrassResult weierstrass(const Pencil& r) {
    const Field f = r.field();
    const size_t s = r.rows();
    WeierstrassResult out(f);
    out.P = Matrix::identity(s, f);
    out.Q = Matrix::identity(s, f);
    out.canonical = Pencil::zero(0, 0, f);
    if (s == 0) return out;

    BinaryForm d = r.det_form();
    if (d.is_zero()) throw std::logic_error("regular part with vanishing determinant");

    // chart: xi = alpha*eta0 + xistar*eta1 with det r(xistar) != 0
    auto probes = probe_points(f, std::min<size_t>(s + 2, f.is_prime() ? f.p + 1 : s + 2));
    std::optional<std::pair<Scalar, Scalar>> star;
    for (const auto& [x0, x1] : probes)
        if (!d.eval(x0, x1).is_zero()) {
            star = {x0, x1};
            break;
        }
    if (!star) throw std::domain_error("no invertible chart point found (field too small)");
    std::optional<std::pair<Scalar, Scalar>> alpha;
    for (const auto& [x0, x1] : probes)
        if (!(x0 * star->second - x1 * star->first).is_zero()) {
            alpha = {x0, x1};
            break;
        }
    const Scalar u = star->first, v = star->second, a0 = alpha->first, a1 = alpha->second;

    Matrix bprime = r.eval(u, v);
    Matrix aprime = r.eval(a0, a1);
    Matrix sm = inverse(bprime) * aprime;

    // canonical factor order
    auto factors = factor_binary_form(d);
    std::sort(factors.begin(), factors.end(), [](const BinaryFactor& x, const BinaryFactor& y) {
        if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
        for (size_t i = 0; i < x.factor.c.size(); ++i) {
            int c = x.factor.c[i].cmp(y.factor.c[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });

    struct PlannedBlock {
        BinaryForm gamma;   // xi-side form of the block
        Vec gen;            // chart-side generator
        Poly minpoly;       // chart-side minpoly
    };
    std::vector<PlannedBlock> plan;

    for (const auto& fac : factors) {
        const size_t e = fac.factor.degree();
        // chart polynomial tau(mu) with tau(mu)=0 iff mu an eigenvalue of S
        // belonging to this factor: q(lambda) = p(alpha + lambda*xistar),
        // tau(mu) = q(-mu) normalized monic
        std::vector<Scalar> xs, ys;
        for (size_t j = 0; j <= e; ++j) {
            Scalar t = Scalar::integer(f, static_cast<long>(j));
            xs.push_back(t);
            ys.push_back(fac.factor.eval(a0 + t * u, a1 + t * v));
        }
        Poly q = lagrange_interpolate(xs, ys);
        std::vector<Scalar> tc(q.deg() + 1, Scalar::zero(f));
        for (int i = 0; i <= q.deg(); ++i) tc[i] = (i % 2) ? -q.coeff(i) : q.coeff(i);
        Poly tau = Poly::from_coeffs(f, tc).monic();
        if (tau.deg() != static_cast<int>(e)) throw std::logic_error("chart polynomial degree drop");

        auto pieces = primary_cyclic(sm, tau, fac.multiplicity);
        size_t total = 0;
        RegularBlock rb;
        rb.factor = fac.factor.normalized();
        rb.certified_irreducible = fac.certified_irreducible;
        for (const auto& piece : pieces) {
            const size_t k = static_cast<size_t>(piece.minpoly.deg());
            total += k;
            BinaryForm gamma(f);
            bool power_of_tau = fac.certified_irreducible && k % e == 0;
            if (power_of_tau) {
                size_t rr = k / e;
                Poly check = tau.pow(rr);
                power_of_tau = check == piece.minpoly;
                if (power_of_tau) {
                    gamma = rb.factor;
                    for (size_t i = 1; i < rr; ++i) gamma = gamma * rb.factor;
                    rb.chains.push_back(rr);
                }
            }
            if (!power_of_tau) {
                // transport the chart minpoly back to a xi-side form:
                // G(eta) = homogenized g(-eta1/eta0), gamma = G(chart^-1 xi)
                std::vector<Scalar> gc(k + 1, Scalar::zero(f));
                for (size_t i = 0; i <= k; ++i) gc[i] = (i % 2) ? -piece.minpoly.coeff(i) : piece.minpoly.coeff(i);
                BinaryForm geta(f, gc);
                gamma = subst_binary(geta, v, -u, -a1, a0).normalized();
                rb.chains.push_back(k);
                rb.degraded = true;
                out.degraded = true;
                out.warnings.push_back("unsplit factor kept at chain level: " + rb.factor.str());
            }
            plan.push_back({gamma, piece.gen, piece.minpoly});
        }
        rb.size = total;
        if (total != e * fac.multiplicity && !rb.degraded) throw std::logic_error("primary component size mismatch");
        out.blocks.push_back(std::move(rb));
    }

    // assemble canonical pencil, T1 (chart side of r), T2 (chart side of canonical)
    Matrix t1(s, s, f), t2(s, s, f);
    Pencil creg = Pencil::zero(0, 0, f);
    size_t col = 0;
    for (const auto& pb : plan) {
        const size_t k = static_cast<size_t>(pb.minpoly.deg());
        krylov_column_stack(sm, pb.gen, k, t1, col);

        Pencil kblock = regular_block_for_form(pb.gamma);
        Matrix bk = kblock.eval(u, v);
        Matrix ak = kblock.eval(a0, a1);
        Matrix sk = inverse(bk) * ak;
        Vec e0(k, Scalar::zero(f));
        e0[0] = Scalar::one(f);
        Matrix tk(k, k, f);
        {
            Vec vv = e0;
            for (size_t j = 0; j < k; ++j) {
                for (size_t i = 0; i < k; ++i) tk.set(i, j, vv[i]);
                vv = sk.apply(vv);
            }
        }
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) t2.set(col + i, col + j, tk.at(i, j));
        creg = creg.block_diag(kblock);
        col += k;
    }
    if (col != s) throw std::logic_error("regular block sizes do not fill the pencil");

    Matrix cb = creg.eval(u, v);
    out.P = cb * t2 * inverse(t1) * inverse(bprime);
    out.Q = t1 * inverse(t2);
    out.canonical = creg;

    Pencil check = r.left_mul(out.P).right_mul(out.Q);
    if (!(check == creg)) throw std::logic_error("Weierstrass transform verification failed");
    return out;
}

}  // namespace

KroneckerForm kronecker_form(const Pencil& n) {
    const Field f = n.field();
    KroneckerForm kf;
    kf.P = Matrix::identity(n.rows(), f);
    kf.Q = Matrix::identity(n.cols(), f);

    // phase 1: right singular blocks
    ExtractAllResult right = extract_right_all(n);
    kf.P = right.P;
    kf.Q = right.Q;
    kf.right_minimal = right.eps;
    size_t ro = 0, co = 0;
    for (size_t e : right.eps) {
        ro += e;
        co += e + 1;
    }

    // phase 2: left singular blocks via the transpose
    ExtractAllResult left = extract_right_all(right.rest.transpose());
    kf.left_minimal = left.eps;
    kf.P = embed_identity(left.Q.transpose(), ro, n.rows()) * kf.P;
    kf.Q = kf.Q * embed_identity(left.P.transpose(), co, n.cols());
    for (size_t e : left.eps) {
        ro += e + 1;
        co += e;
    }
    Pencil reg = left.rest.transpose();

    // phase 3: regular part
    if (reg.rows() != reg.cols()) throw std::logic_error("non-square pencil after singular extraction");
    WeierstrassResult w = weierstrass(reg);
    kf.P = embed_identity(w.P, ro, n.rows()) * kf.P;
    kf.Q = kf.Q * embed_identity(w.Q, co, n.cols());
    kf.regular = w.blocks;
    kf.degraded = w.degraded;
    kf.warnings = w.warnings;

    // assemble and verify
    Pencil canonical = Pencil::zero(0, 0, f);
    for (size_t e : kf.right_minimal) canonical = canonical.block_diag(singular_right_block(e, f));
    for (size_t e : kf.left_minimal) canonical = canonical.block_diag(singular_left_block(e, f));
    canonical = canonical.block_diag(w.canonical);
    kf.canonical = canonical;

    Pencil check = n.left_mul(kf.P).right_mul(kf.Q);
    if (!(check == kf.canonical)) throw std::logic_error("canonical form verification failed");
    return kf;
}

}  // namespace torelli
