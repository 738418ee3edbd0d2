#include "torelli/unstable.hpp"

#include <thread>

namespace torelli {

std::vector<Vec> point_cutting_forms(const ProjPoint& y) {
    const size_t n = y.dim();
    const Field f = y.field();
    size_t pi = 0;
    while (y[pi].is_zero()) ++pi;
    std::vector<Vec> h;
    h.reserve(n);
    for (size_t j = 0; j <= n; ++j) {
        if (j == pi) continue;
        Vec form(n + 1, Scalar::zero(f));
        form[j] = y[pi];
        form[pi] = -y[j];
        h.push_back(std::move(form));
    }
    return h;
}

UnstableResult is_unstable_matrix(const LinMatrix& m, const ProjPoint& y) {
    if (m.nvars() != y.dim() + 1) throw std::invalid_argument("matrix/point dimension mismatch");
    if (!(m.field() == y.field())) throw FieldMismatch("matrix/point field mismatch");
    const size_t a = m.rows(), b = m.cols(), nv = m.nvars();
    const Field f = m.field();

    // unknowns: v (b), then w (a); equations: coefficient of x_k in row j of
    // M*v - h_y*w
    Matrix sys(a * nv, a + b, f);
    for (size_t j = 0; j < a; ++j)
        for (size_t k = 0; k < nv; ++k) {
            size_t r = j * nv + k;
            for (size_t i = 0; i < b; ++i) sys.set(r, i, m.at(j, i)[k]);
            sys.set(r, b + j, -y[k]);
        }
    auto ker = kernel_basis(sys);
    UnstableResult out;
    out.dim = ker.size();
    out.unstable = !ker.empty();
    if (out.unstable) {
        WitnessA w;
        w.v.assign(ker[0].begin(), ker[0].begin() + b);
        w.w.assign(ker[0].begin() + b, ker[0].end());
        out.witness_a = std::move(w);
    }
    return out;
}

UnstableResult is_unstable_sections(const Arrangement& z, const ProjPoint& y, const std::vector<Vec>* h_override) {
    const size_t n = z.n();
    const Field f = z.field();
    if (y.dim() != n) throw std::invalid_argument("point dimension mismatch");
    if (z.contains(y)) throw std::invalid_argument("is_unstable_sections requires y outside Z");
    if (!z.nondegenerate()) throw std::invalid_argument("is_unstable_sections requires nondegenerate Z");

    std::vector<Vec> h = h_override ? *h_override : point_cutting_forms(y);
    if (h.size() != n) throw std::invalid_argument("need n forms cutting y");

    // unknowns g[t][k]: t-th form, coefficient of z_k
    const size_t unknowns = n * (n + 1);
    std::vector<Vec> rows;
    for (const auto& zp : z.points()) {
        Vec hv(n, Scalar::zero(f));
        for (size_t t = 0; t < n; ++t) hv[t] = dot(h[t], zp.coords());
        for (size_t t = 0; t < n; ++t)
            for (size_t u = t + 1; u < n; ++u) {
                // hv[t]*g_u(z) - hv[u]*g_t(z) = 0
                Vec row(unknowns, Scalar::zero(f));
                for (size_t k = 0; k <= n; ++k) {
                    row[u * (n + 1) + k] = hv[t] * zp[k];
                    row[t * (n + 1) + k] = row[t * (n + 1) + k] - hv[u] * zp[k];
                }
                rows.push_back(std::move(row));
            }
    }
    Matrix sys = Matrix::from_rows(rows, f);
    auto ker = kernel_basis(sys);

    UnstableResult out;
    out.dim = ker.size();
    out.unstable = out.dim >= 2;
    if (out.unstable) {
        Vec hflat;
        for (const auto& form : h) hflat.insert(hflat.end(), form.begin(), form.end());
        for (const auto& k : ker) {
            if (proportionality(k, hflat)) continue;
            WitnessB w;
            w.h = h;
            for (size_t t = 0; t < n; ++t) w.g.emplace_back(k.begin() + t * (n + 1), k.begin() + (t + 1) * (n + 1));
            out.witness_b = std::move(w);
            break;
        }
        if (!out.witness_b) throw std::logic_error("solution space >= 2 but no independent witness found");
    }
    return out;
}

bool verify_witness_a(const LinMatrix& m, const ProjPoint& y, const WitnessA& w) {
    if (w.v.size() != m.cols() || w.w.size() != m.rows()) return false;
    if (vec_is_zero(w.v)) return false;
    for (size_t j = 0; j < m.rows(); ++j) {
        Vec acc(m.nvars(), Scalar::zero(m.field()));
        for (size_t i = 0; i < m.cols(); ++i) acc = vec_add(acc, vec_scale(m.at(j, i), w.v[i]));
        if (acc != vec_scale(y.coords(), w.w[j])) return false;
    }
    return true;
}

bool verify_witness_b(const Arrangement& z, const ProjPoint& y, const WitnessB& w) {
    const size_t n = z.n();
    if (w.h.size() != n || w.g.size() != n) return false;
    // h must cut exactly y
    Matrix hm = Matrix::from_rows(w.h, z.field());
    auto ker = kernel_basis(hm);
    if (ker.size() != 1) return false;
    if (!proportionality(ker[0], y.coords())) return false;
    Vec hflat, gflat;
    for (const auto& form : w.h) hflat.insert(hflat.end(), form.begin(), form.end());
    for (const auto& form : w.g) gflat.insert(gflat.end(), form.begin(), form.end());
    if (proportionality(gflat, hflat)) return false;
    for (const auto& zp : z.points()) {
        Vec hv(n, Scalar::zero(z.field())), gv(n, Scalar::zero(z.field()));
        for (size_t t = 0; t < n; ++t) {
            hv[t] = dot(w.h[t], zp.coords());
            gv[t] = dot(w.g[t], zp.coords());
        }
        for (size_t t = 0; t < n; ++t)
            for (size_t u = t + 1; u < n; ++u)
                if (!(hv[t] * gv[u] - hv[u] * gv[t]).is_zero()) return false;
    }
    return true;
}

std::vector<ProjPoint> all_projective_points(size_t n, const Field& fp) {
    if (!fp.is_prime()) throw std::invalid_argument("point enumeration needs a prime field");
    const uint64_t p = fp.p;
    std::vector<ProjPoint> pts;
    for (size_t lead = 0; lead <= n; ++lead) {
        uint64_t count = 1;
        for (size_t i = lead + 1; i <= n; ++i) count *= p;
        for (uint64_t m = 0; m < count; ++m) {
            Vec c(n + 1, Scalar::zero(fp));
            c[lead] = Scalar::one(fp);
            uint64_t v = m;
            for (size_t i = n; i > lead; --i) {
                c[i] = Scalar::residue(v % p, fp);
                v /= p;
            }
            pts.emplace_back(n, std::move(c));
        }
    }
    return pts;
}

namespace {

// flat mod-p elimination for the scan hot loop
struct FpScanContext {
    uint64_t p;
    size_t a, b, nv;
    // coef[j][i][k]
    std::vector<uint64_t> coef;

    uint64_t c(size_t j, size_t i, size_t k) const { return coef[(j * b + i) * nv + k]; }

    size_t rank(std::vector<uint64_t>& s, size_t rows, size_t cols) const {
        size_t rk = 0;
        for (size_t col = 0; col < cols && rk < rows; ++col) {
            size_t piv = rows;
            for (size_t r = rk; r < rows; ++r)
                if (s[r * cols + col] != 0) {
                    piv = r;
                    break;
                }
            if (piv == rows) continue;
            if (piv != rk)
                for (size_t k = col; k < cols; ++k) std::swap(s[piv * cols + k], s[rk * cols + k]);
            uint64_t inv = invmod_u64(s[rk * cols + col], p);
            for (size_t r = rk + 1; r < rows; ++r) {
                uint64_t f = s[r * cols + col];
                if (!f) continue;
                uint64_t fac = mulmod_u64(f, inv, p);
                for (size_t k = col; k < cols; ++k) {
                    uint64_t sub = mulmod_u64(fac, s[rk * cols + k], p);
                    uint64_t& x = s[r * cols + k];
                    x = (x + p - sub) % p;
                }
            }
            ++rk;
        }
        return rk;
    }

    // kernel dimension of the test-A system at point y
    size_t dim_at(const uint64_t* y, std::vector<uint64_t>& scratch) const {
        const size_t rows = a * nv, cols = a + b;
        scratch.assign(rows * cols, 0);
        for (size_t j = 0; j < a; ++j)
            for (size_t k = 0; k < nv; ++k) {
                size_t r = j * nv + k;
                for (size_t i = 0; i < b; ++i) scratch[r * cols + i] = c(j, i, k);
                scratch[r * cols + b + j] = y[k] == 0 ? 0 : p - y[k];
            }
        return cols - rank(scratch, rows, cols);
    }
};

}  // namespace

std::vector<ScanEntry> scan_unstable(const LinMatrix& m, unsigned threads) {
    const Field f = m.field();
    if (!f.is_prime()) throw std::invalid_argument("scan_unstable runs over a prime field");
    const size_t n = m.nvars() - 1;
    const uint64_t p = f.p;

    FpScanContext ctx{p, m.rows(), m.cols(), m.nvars(), {}};
    ctx.coef.resize(ctx.a * ctx.b * ctx.nv);
    for (size_t j = 0; j < ctx.a; ++j)
        for (size_t i = 0; i < ctx.b; ++i)
            for (size_t k = 0; k < ctx.nv; ++k) ctx.coef[(j * ctx.b + i) * ctx.nv + k] = m.at(j, i)[k].res();

    // canonical enumeration without materializing Scalar points
    uint64_t total = 0;
    {
        uint64_t block = 1;
        for (size_t lead = n + 1; lead-- > 0;) {
            total += block;
            block *= p;
        }
    }
    auto coords_of = [&](uint64_t idx, uint64_t* out) {
        size_t lead = 0;
        uint64_t block = 1;
        for (size_t i = 0; i < n; ++i) block *= p;  // p^n for lead = 0
        while (idx >= block) {
            idx -= block;
            block /= p;
            ++lead;
        }
        for (size_t i = 0; i <= n; ++i) out[i] = 0;
        out[lead] = 1;
        uint64_t v = idx;
        for (size_t i = n; i > lead; --i) {
            out[i] = v % p;
            v /= p;
        }
    };

    unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, 16);
    std::vector<std::vector<std::pair<uint64_t, size_t>>> found(nthreads);

    auto work = [&](unsigned t) {
        std::vector<uint64_t> scratch;
        std::vector<uint64_t> y(n + 1);
        for (uint64_t idx = t; idx < total; idx += nthreads) {
            coords_of(idx, y.data());
            size_t d = ctx.dim_at(y.data(), scratch);
            if (d > 0) found[t].emplace_back(idx, d);
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::pair<uint64_t, size_t>> merged;
    for (auto& v : found) merged.insert(merged.end(), v.begin(), v.end());
    std::sort(merged.begin(), merged.end());

    std::vector<ScanEntry> out;
    out.reserve(merged.size());
    std::vector<uint64_t> y(n + 1);
    for (auto& [idx, d] : merged) {
        coords_of(idx, y.data());
        Vec c(n + 1, Scalar::zero(f));
        for (size_t i = 0; i <= n; ++i) c[i] = Scalar::residue(y[i], f);
        out.push_back({ProjPoint(n, std::move(c)), d});
    }
    return out;
}

}  // namespace torelli
