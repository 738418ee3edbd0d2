#include "torelli/torelli.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace torelli {

std::optional<mpq_class> rational_reconstruct(const mpz_class& residue, const mpz_class& modulus) {
    mpz_class bound;
    mpz_class half = modulus / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    if (bound < 1) return std::nullopt;
    mpz_class r0 = modulus, r1 = residue % modulus;
    if (r1 < 0) r1 += modulus;
    mpz_class s0 = 0, s1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
    }
    if (s1 == 0) return std::nullopt;
    mpz_class num = r1, den = s1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > bound) return std::nullopt;
    // verify num = den * residue (mod modulus)
    mpz_class check = (den * (residue % modulus) - num) % modulus;
    if (check != 0) return std::nullopt;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

namespace {

// ---------------------------------------------------------------------------
// candidate generation (layer 3)
// ---------------------------------------------------------------------------

struct CandidateSet {
    std::vector<ProjPoint> ordered;
    std::set<ProjPoint> seen;
    const Arrangement* z;
    size_t cap;

    void push(const ProjPoint& p) {
        if (ordered.size() >= cap) return;
        if (z->contains(p)) return;
        if (seen.insert(p).second) ordered.push_back(p);
    }
};

void bipartition_candidates(const Arrangement& z, CandidateSet& out) {
    const size_t l = z.size();
    if (l > 16) return;
    const uint32_t masks = 1u << (l - 1);
    for (uint32_t mask = 1; mask + 1 < masks; ++mask) {
        std::vector<ProjPoint> s{z[0]}, t;
        for (size_t i = 1; i < l; ++i)
            ((mask >> (i - 1)) & 1 ? s : t).push_back(z[i]);
        if (s.size() < 2 || t.size() < 2) continue;
        LinearSubspace u = LinearSubspace::from_points(z.n(), s);
        LinearSubspace w = LinearSubspace::from_points(z.n(), t);
        if (u.rank() + w.rank() != z.n() + 2) continue;  // intersection is a point iff ranks sum to n+2
        LinearSubspace meet = u.intersect(w);
        if (meet.proj_dim() != 0) continue;
        out.push(ProjPoint(z.n(), meet.basis().row(0)));
        if (out.ordered.size() >= out.cap) return;
    }
}

void line_candidates(const Arrangement& z, CandidateSet& out) {
    static const long ts[] = {1, -1, 2, -2, 3};
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < z.size(); ++j) {
            if (i == j) continue;
            for (long t : ts) {
                Vec v = vec_add(z[i].coords(), vec_scale(z[j].coords(), Scalar::integer(z.field(), t)));
                if (vec_is_zero(v)) continue;
                out.push(ProjPoint(z.n(), v));
                if (out.ordered.size() >= out.cap) return;
            }
        }
}

void rnc_candidates(const Arrangement& z, CandidateSet& out) {
    const size_t l = z.size();
    const Field f = z.field();
    size_t subsets_tried = 0;
    for (size_t d = 2; d <= std::min(z.n(), l >= 3 ? l - 3 : 0); ++d) {
        std::vector<size_t> idx(d + 3);
        std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
            if (out.ordered.size() >= out.cap || subsets_tried > 4000) return;
            if (pos == d + 3) {
                ++subsets_tried;
                std::vector<ProjPoint> sub;
                for (size_t i : idx) sub.push_back(z[i]);
                if (span_dim(sub) != static_cast<int>(d)) return;
                auto curve = rnc_through(sub);
                if (!curve) return;
                static const long ts[] = {0, 1, -1, 2, -2, 3};
                out.push(curve->at(Scalar::zero(f), Scalar::one(f)));
                out.push(curve->at(Scalar::one(f), Scalar::zero(f)));
                for (long t : ts) out.push(curve->at(Scalar::one(f), Scalar::integer(f, t)));
                return;
            }
            for (size_t i = start; i + (d + 3 - pos) <= l; ++i) {
                idx[pos] = i;
                rec(pos + 1, i + 1);
            }
        };
        rec(0, 0);
    }
}

// ---------------------------------------------------------------------------
// the complete conic layer for n = 2
// ---------------------------------------------------------------------------

Matrix conic_matrix(const Vec& quad, const Field& f) {
    // monomial order (0,0), (0,1), (1,1), (0,2), (1,2), (2,2)
    Matrix q(3, 3, f);
    auto mons = quadratic_monomials(2);
    Scalar half = Scalar::rational(1, 2);
    for (size_t k = 0; k < mons.size(); ++k) {
        auto [i, j] = mons[k];
        if (i == j)
            q.set(i, i, quad[k]);
        else {
            q.set(i, j, q.at(i, j) + quad[k] * half);
            q.set(j, i, q.at(j, i) + quad[k] * half);
        }
    }
    return q;
}

std::vector<ProjPoint> conic_candidate_points(const Arrangement& z, const Vec& quad) {
    const Field f = z.field();
    Matrix q = conic_matrix(quad, f);
    size_t rk = rank_of(q);
    std::vector<ProjPoint> candidates;

    if (rk == 3) {
        // rational parametrization through the base point z_0 on the conic:
        // x(d) = (d^T Q d) p - 2 (p^T Q d) d
        const Vec p = z[0].coords();
        // complete p to a basis with unit vectors
        std::vector<Vec> dirs;
        for (size_t e = 0; e < 3 && dirs.size() < 2; ++e) {
            Vec unit(3, Scalar::zero(f));
            unit[e] = Scalar::one(f);
            std::vector<Vec> trial{p};
            for (const auto& dd : dirs) trial.push_back(dd);
            trial.push_back(unit);
            if (rank_of(Matrix::from_rows(trial, f)) == trial.size()) dirs.push_back(unit);
        }
        auto second_point = [&](const Vec& d) -> std::optional<ProjPoint> {
            Scalar dqd = dot(d, q.apply(d));
            Scalar pqd = dot(p, q.apply(d));
            Vec x = vec_sub(vec_scale(p, dqd), vec_scale(d, pqd + pqd));
            if (vec_is_zero(x)) return std::nullopt;
            return ProjPoint(2, x);
        };
        for (long t = -12; t <= 12; ++t) {
            Vec d = vec_add(dirs[0], vec_scale(dirs[1], Scalar::integer(f, t)));
            if (auto cand = second_point(d)) candidates.push_back(*cand);
        }
        if (auto cand = second_point(dirs[1])) candidates.push_back(*cand);
    } else if (rk == 2) {
        // two lines through the kernel point
        auto ker = kernel_basis(q);
        if (ker.size() != 1) return {};
        Vec k = ker[0];
        std::vector<Vec> comp;
        for (size_t e = 0; e < 3 && comp.size() < 2; ++e) {
            Vec unit(3, Scalar::zero(f));
            unit[e] = Scalar::one(f);
            std::vector<Vec> trial{k};
            for (const auto& dd : comp) trial.push_back(dd);
            trial.push_back(unit);
            if (rank_of(Matrix::from_rows(trial, f)) == trial.size()) comp.push_back(unit);
        }
        // restricted binary quadratic q(sigma u + tau w)
        Scalar a = dot(comp[0], q.apply(comp[0]));
        Scalar b = dot(comp[0], q.apply(comp[1]));
        Scalar c = dot(comp[1], q.apply(comp[1]));
        BinaryForm bin(f, {a, b + b, c});
        auto factors = factor_binary_form(bin);
        for (const auto& fac : factors) {
            if (fac.factor.degree() != 1) continue;  // conjugate pair: no rational lines
            // root (sigma : tau) = (-c1 : c0)
            Scalar c0 = fac.factor.c[0], c1 = fac.factor.c[1];
            Vec v = vec_add(vec_scale(comp[0], -c1), vec_scale(comp[1], c0));
            for (long t = -8; t <= 8; ++t) {
                Vec x = vec_add(v, vec_scale(k, Scalar::integer(f, t)));
                if (!vec_is_zero(x)) candidates.push_back(ProjPoint(2, x));
            }
            candidates.push_back(ProjPoint(2, k));
        }
    } else {
        return {};  // double line cannot contain a nondegenerate Z
    }

    std::vector<ProjPoint> out;
    for (const auto& cand : candidates) {
        if (z.contains(cand)) continue;
        bool dup = false;
        for (const auto& p : out) dup = dup || p == cand;
        if (!dup) out.push_back(cand);
    }
    return out;
}

// ---------------------------------------------------------------------------
// scan layer
// ---------------------------------------------------------------------------

std::optional<ProjPoint> lift_coords(const std::vector<mpz_class>& residues, const mpz_class& modulus) {
    Vec coords;
    for (const auto& r : residues) {
        auto q = rational_reconstruct(r, modulus);
        if (!q) return std::nullopt;
        coords.push_back(Scalar::rational(*q));
    }
    if (std::all_of(coords.begin(), coords.end(), [](const Scalar& s) { return s.is_zero(); })) return std::nullopt;
    return ProjPoint(coords.size() - 1, coords);
}

size_t point_height(const ProjPoint& p) {
    mpz_class best = 0;
    for (const auto& s : p.coords()) {
        mpz_class a = abs(s.rat().get_num());
        if (a > best) best = a;
    }
    return best.fits_ulong_p() ? best.get_ui() : ~size_t(0);
}

}  // namespace

Verdict decide_torelli(const Arrangement& z, const TorelliOptions& opts) {
    const size_t n = z.n();
    if (!z.field().is_rational()) throw std::invalid_argument("decide_torelli expects a rational arrangement");
    if (!z.nondegenerate())
        throw std::invalid_argument("degenerate arrangement (span " + std::to_string(z.span()) +
                                    "): split off the span with degenerate_split first");
    if (z.size() < n + 2)
        throw std::invalid_argument("need at least n+2 points to present a Steiner sheaf with relations");

    Verdict v;

    // layer 1: no quadric through Z
    QuadricSpace qs = quadric_space(z);
    if (qs.dim == 0) {
        v.kind = Verdict::Kind::Torelli;
        v.reason = n == 2 ? Verdict::Reason::ConicRank : Verdict::Reason::NoQuadric;
        return v;
    }

    SteinerMatrix sm = build_steiner(z);

    // Certificates with a curve part are preferred: they exhibit a whole
    // curve of unstable points. A d = 0 certificate (witness at the common
    // point of the linear parts) is kept as fallback.
    std::optional<Verdict> fallback;
    auto certify = [&](const ProjPoint& y) -> bool {
        try {
            KWVariety kw = kw_from_unstable(z, y);
            if (!kw_validate(kw).ok) return false;
            Verdict got = v;
            got.kind = Verdict::Kind::NonTorelli;
            got.reason = Verdict::Reason::Certificate;
            got.witness = y;
            got.certificate = std::move(kw);
            if (got.certificate->d > 0) {
                v = std::move(got);
                return true;
            }
            if (!fallback) fallback = std::move(got);
            return false;
        } catch (const KWInconsistent&) {
            return false;
        }
    };

    // layer 2: the complete conic criterion in the plane
    if (n == 2) {
        for (const auto& quad : qs.basis) {
            auto cands = conic_candidate_points(z, quad);
            for (const auto& y : cands) {
                if (!is_unstable_matrix(sm.mat, y).unstable) continue;
                if (certify(y)) return v;
            }
        }
        if (fallback) {
            fallback->diag = v.diag;
            return *fallback;
        }
        throw std::logic_error("conic through a nondegenerate plane arrangement produced no certificate");
    }

    // layer 3: exact candidates over Q
    CandidateSet cands{{}, {}, &z, opts.candidate_cap};
    bipartition_candidates(z, cands);
    rnc_candidates(z, cands);
    line_candidates(z, cands);
    for (const auto& y : cands.ordered) {
        ++v.diag.candidates_tested;
        if (!is_unstable_matrix(sm.mat, y).unstable) continue;
        if (certify(y)) return v;
    }

    // layer 4: finite-field scans with rational lifting. A genuine rational
    // witness stays unstable mod every good prime (its reduced certificate
    // still solves the linear system), so two clean primes end the scan
    // early; leftovers from dirty primes are lifted and re-tested exactly.
    struct PrimeExtras {
        uint64_t p;
        std::vector<ProjPoint> extras;
    };
    std::vector<PrimeExtras> extras_by_prime;
    size_t clean = 0;
    for (uint64_t p : opts.primes) {
        if (clean >= 2) break;
        std::optional<Arrangement> zp;
        try {
            zp = reduce_mod_p(z, p);
        } catch (const BadPrime&) {
            v.diag.bad_primes.push_back(p);
            continue;
        }
        v.diag.primes_scanned.push_back(p);
        SteinerMatrix smp = build_steiner(*zp);
        auto profile = scan_unstable(smp.mat, opts.threads);
        std::set<ProjPoint> zset(zp->points().begin(), zp->points().end());
        PrimeExtras pe{p, {}};
        for (const auto& e : profile)
            if (!zset.count(e.point)) pe.extras.push_back(e.point);
        if (pe.extras.empty()) {
            ++clean;
            v.diag.clean_primes.push_back(p);
        } else {
            extras_by_prime.push_back(std::move(pe));
        }
    }

    std::vector<ProjPoint> lifted;
    std::set<ProjPoint> lifted_seen;
    auto add_lift = [&](std::optional<ProjPoint> cand) {
        if (!cand || z.contains(*cand)) return;
        if (lifted_seen.insert(*cand).second) lifted.push_back(*cand);
    };
    for (const auto& pe : extras_by_prime) {
        mpz_class mod(static_cast<unsigned long>(pe.p));
        for (const auto& pt : pe.extras) {
            std::vector<mpz_class> res;
            for (const auto& s : pt.coords()) res.emplace_back(static_cast<unsigned long>(s.res()));
            add_lift(lift_coords(res, mod));
        }
    }
    for (size_t i = 0; i < extras_by_prime.size(); ++i)
        for (size_t j = i + 1; j < extras_by_prime.size(); ++j) {
            const auto& a = extras_by_prime[i];
            const auto& b = extras_by_prime[j];
            mpz_class p(static_cast<unsigned long>(a.p)), q(static_cast<unsigned long>(b.p));
            mpz_class mod = p * q;
            uint64_t pinv = invmod_u64(a.p % b.p, b.p);
            size_t budget = 400;
            for (const auto& ya : a.extras) {
                for (const auto& yb : b.extras) {
                    if (budget == 0) break;
                    std::vector<mpz_class> res;
                    bool ok = true;
                    for (size_t k = 0; k < ya.coords().size(); ++k) {
                        uint64_t ra = ya[k].res(), rb = yb[k].res();
                        uint64_t diff = (rb + b.p - ra % b.p) % b.p;
                        uint64_t t = mulmod_u64(diff, pinv, b.p);
                        res.emplace_back(mpz_class(static_cast<unsigned long>(ra)) +
                                         p * static_cast<unsigned long>(t));
                        ok = ok && true;
                    }
                    if (!ok) continue;
                    --budget;
                    add_lift(lift_coords(res, mod));
                }
            }
        }

    std::sort(lifted.begin(), lifted.end(),
              [](const ProjPoint& a, const ProjPoint& b) { return point_height(a) < point_height(b); });
    size_t tested = 0;
    for (const auto& y : lifted) {
        if (tested >= 500) break;
        ++tested;
        ++v.diag.lifted_candidates;
        if (is_unstable_matrix(sm.mat, y).unstable && certify(y)) return v;
        ++v.diag.lifted_failures;
    }

    if (fallback) {
        fallback->diag = v.diag;
        return *fallback;
    }

    // layer 5: scan-based Torelli evidence
    if (clean >= 2) {
        v.kind = Verdict::Kind::Torelli;
        v.reason = Verdict::Reason::ExhaustiveScan;
        return v;
    }
    v.kind = Verdict::Kind::Unknown;
    v.reason = Verdict::Reason::None;
    return v;
}

bool reverify_verdict(const Arrangement& z, const Verdict& v, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (v.kind == Verdict::Kind::Torelli) {
        if (v.reason == Verdict::Reason::NoQuadric || v.reason == Verdict::Reason::ConicRank)
            return quadric_space(z).dim == 0 || fail("a quadric through Z exists");
        return true;  // scan-based evidence is re-established by rescanning
    }
    if (v.kind != Verdict::Kind::NonTorelli) return true;
    if (!v.witness || !v.certificate) return fail("NonTorelli verdict without witness/certificate");
    if (z.contains(*v.witness)) return fail("witness lies in Z");
    SteinerMatrix sm = build_steiner(z);
    if (!is_unstable_matrix(sm.mat, *v.witness).unstable) return fail("witness is not unstable (test A)");
    if (!is_unstable_sections(z, *v.witness).unstable) return fail("witness is not unstable (test B)");
    auto val = kw_validate(*v.certificate);
    if (!val.ok) return fail("certificate invalid: " + val.violations.front());
    for (const auto& p : z.points())
        if (!rank1_contains(v.certificate->m, p)) return fail("certificate rank-1 locus misses " + p.str());
    if (v.certificate->d == 0) {
        if (!v.certificate->distinguished) return fail("d = 0 certificate without distinguished point");
        if (z.contains(*v.certificate->distinguished)) return fail("distinguished point lies in Z");
    }
    return true;
}

T3Report check_t3(const Arrangement& z, const TorelliOptions& opts) {
    const size_t n = z.n();
    T3Report rep;
    if (!general_position(z)) throw std::invalid_argument("check_t3 requires general linear position");
    if (z.size() < n + 3) {
        rep.applicable = false;
        rep.detail = "corollary inapplicable: needs at least n+3 points, got " + std::to_string(z.size());
        return rep;
    }
    rep.applicable = true;

    std::vector<ProjPoint> head(z.points().begin(), z.points().begin() + n + 3);
    auto curve = rnc_through(head);
    rep.curve_exists = false;
    if (curve) {
        rep.curve_exists = true;
        for (const auto& p : z.points())
            if (!curve->parameter_of(p)) rep.curve_exists = false;
    }

    rep.verdict = decide_torelli(z, opts);
    if (rep.verdict.kind == Verdict::Kind::NonTorelli) {
        bool type_ok = rep.verdict.certificate && rep.verdict.certificate->d == n &&
                       rep.verdict.certificate->parts.empty() && rep.verdict.certificate->conjugate.empty();
        rep.consistent = rep.curve_exists && type_ok;
        if (!rep.consistent)
            rep.detail = type_ok ? "NonTorelli certificate found but Z is on no rational normal curve"
                                 : "NonTorelli certificate is not of type (n;0) in general position";
    } else if (rep.verdict.kind == Verdict::Kind::Torelli) {
        rep.consistent = !rep.curve_exists;
        if (!rep.consistent) rep.detail = "Z lies on a rational normal curve but the verdict is Torelli";
    } else {
        rep.consistent = false;
        rep.detail = "verdict is Unknown; corollary check undecided";
    }
    return rep;
}

std::vector<ScanEntry> steiner_unstable_profile(const LinMatrix& m, uint64_t p, unsigned threads) {
    if (m.cols() != m.rows() + m.nvars() - 1)
        throw std::invalid_argument("Steiner shape violated: need b = a + n");
    if (m.field().is_rational()) return scan_unstable(m.reduce_mod(Field::prime(p)), threads);
    if (!(m.field() == Field::prime(p))) throw std::invalid_argument("matrix field does not match the prime");
    return scan_unstable(m, threads);
}

ReconstructReport reconstruct_from_unstable(const LinMatrix& m, const Arrangement& observed,
                                            const std::vector<uint64_t>& primes) {
    ReconstructReport rep;
    const size_t n = m.nvars() - 1;
    if (observed.size() != m.cols() + 1)
        throw std::invalid_argument("need exactly l = b+1 observed unstable points");
    if (!observed.nondegenerate()) throw std::invalid_argument("observed points are degenerate");

    rep.all_observed_unstable = true;
    for (const auto& p : observed.points())
        rep.all_observed_unstable = rep.all_observed_unstable && is_unstable_matrix(m, p).unstable;

    SteinerMatrix rebuilt = build_steiner(observed);
    rep.shapes_match = rebuilt.a() == m.rows() && rebuilt.b() == m.cols();
    ResolutionData hd = hilbert_data(observed.size(), n);
    rep.hilbert_match = hd.rank == n && hd.c1 == static_cast<long>(observed.size() - n - 1);

    rep.profiles_match = rep.shapes_match;
    for (uint64_t p : primes) {
        try {
            auto prof_m = steiner_unstable_profile(m, p);
            auto prof_r = steiner_unstable_profile(rebuilt.mat, p);
            rep.primes_compared.push_back(p);
            bool same = prof_m.size() == prof_r.size();
            for (size_t i = 0; same && i < prof_m.size(); ++i)
                same = prof_m[i].point == prof_r[i].point && prof_m[i].dim == prof_r[i].dim;
            if (!same) {
                rep.profiles_match = false;
                rep.notes.push_back("profiles differ mod " + std::to_string(p));
            }
        } catch (const BadPrime& e) {
            rep.notes.push_back(std::string("skipped prime: ") + e.what());
        }
    }

    // heuristic screen for O_H direct summands: u^T M = f_z * c^T
    const Field f = m.field();
    for (size_t zi = 0; zi < observed.size(); ++zi) {
        const Vec fz = observed[zi].coords();
        Matrix sys(m.cols() * m.nvars(), m.rows() + m.cols(), f);
        for (size_t i = 0; i < m.cols(); ++i)
            for (size_t k = 0; k < m.nvars(); ++k) {
                size_t row = i * m.nvars() + k;
                for (size_t j = 0; j < m.rows(); ++j) sys.set(row, j, m.at(j, i)[k]);
                sys.set(row, m.rows() + i, -fz[k]);
            }
        if (!kernel_basis(sys).empty()) rep.summand_screen_fired.push_back(zi);
    }
    if (!rep.summand_screen_fired.empty())
        rep.notes.push_back("direct-summand screen fired for " + std::to_string(rep.summand_screen_fired.size()) +
                            " observed point(s); the reconstruction theorem hypothesis may fail there");
    return rep;
}

}  // namespace torelli
