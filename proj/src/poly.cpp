#include "torelli/poly.hpp"

#include <algorithm>
#include <map>

namespace torelli {

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::from_coeffs(const Field& f, std::vector<Scalar> c) {
    Poly p(f);
    for (const auto& s : c)
        if (!(s.field() == f)) throw FieldMismatch("mixed-field polynomial");
    p.c_ = std::move(c);
    p.trim();
    return p;
}

Poly Poly::constant(const Scalar& s) {
    return from_coeffs(s.field(), {s});
}

Poly Poly::monomial(const Field& f, size_t deg, const Scalar& c) {
    std::vector<Scalar> v(deg + 1, Scalar::zero(f));
    v[deg] = c;
    return from_coeffs(f, std::move(v));
}

Scalar Poly::leading() const {
    if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar::zero(f_));
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return from_coeffs(f_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar::zero(f_));
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
    return from_coeffs(f_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(f_);
    std::vector<Scalar> c(c_.size() + o.c_.size() - 1, Scalar::zero(f_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) c[i + j] += c_[i] * o.c_[j];
    }
    return from_coeffs(f_, std::move(c));
}

Poly Poly::operator-() const {
    std::vector<Scalar> c(c_);
    for (auto& x : c) x = -x;
    return from_coeffs(f_, std::move(c));
}

Poly Poly::scaled(const Scalar& s) const {
    std::vector<Scalar> c(c_);
    for (auto& x : c) x = x * s;
    return from_coeffs(f_, std::move(c));
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly q(f_), r = *this;
    Scalar lead_inv = d.leading().inv();
    std::vector<Scalar> qc;
    if (r.deg() >= d.deg()) qc.assign(r.deg() - d.deg() + 1, Scalar::zero(f_));
    while (!r.is_zero() && r.deg() >= d.deg()) {
        size_t shift = r.deg() - d.deg();
        Scalar c = r.leading() * lead_inv;
        qc[shift] = c;
        r = r - Poly::monomial(f_, shift, c) * d;
    }
    q = Poly::from_coeffs(f_, std::move(qc));
    return {q, r};
}

bool Poly::divides(const Poly& num) const {
    if (is_zero()) return num.is_zero();
    return num.divrem(*this).second.is_zero();
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<Scalar> c(c_.size() - 1, Scalar::zero(f_));
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Scalar::integer(f_, static_cast<long>(i));
    return from_coeffs(f_, std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inv());
}

Scalar Poly::eval(const Scalar& at) const {
    Scalar r = Scalar::zero(f_);
    for (size_t i = c_.size(); i-- > 0;) r = r * at + c_[i];
    return r;
}

Poly Poly::pow(size_t e) const {
    Poly r = Poly::constant(Scalar::one(f_));
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += c_[i].str();
        if (i >= 1) s += "*" + var;
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod) {
    return (a * b) % mod;
}

Poly poly_powmod(const Poly& a, const mpz_class& e, const Poly& mod) {
    Poly r = Poly::constant(Scalar::one(a.field())) % mod;
    Poly b = a % mod;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = poly_mulmod(r, b, mod);
        b = poly_mulmod(b, b, mod);
        k >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// squarefree decomposition
// ---------------------------------------------------------------------------

namespace {

// char-p case: f' == 0 means f(t) = g(t^p) with g recoverable coefficientwise
// (Frobenius fixes F_p), so f = g-with-compressed-exponents ^p structurally.
Poly pth_root_shape(const Poly& f, uint64_t p) {
    std::vector<Scalar> c;
    for (int i = 0; i <= f.deg(); i += static_cast<int>(p)) c.push_back(f.coeff(i));
    return Poly::from_coeffs(f.field(), std::move(c));
}

// Yun's algorithm, characteristic 0 only.
void squarefree_rec(const Poly& f, std::map<size_t, Poly>& acc) {
    if (f.deg() <= 0) return;
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly b = f / a;
    Poly d = fp / a - b.derivative();
    size_t i = 1;
    while (b.deg() > 0) {
        Poly g = poly_gcd(b, d);
        if (g.deg() > 0) {
            auto it = acc.find(i);
            if (it == acc.end())
                acc.emplace(i, g.monic());
            else
                it->second = it->second * g.monic();
        }
        b = b / g;
        d = d / g - b.derivative();
        ++i;
    }
}

}  // namespace

std::vector<std::pair<Poly, size_t>> squarefree_decomposition(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    const Field fld = f.field();
    std::vector<std::pair<Poly, size_t>> out;
    if (f.deg() == 0) return out;

    if (fld.is_rational()) {
        std::map<size_t, Poly> acc;
        squarefree_rec(f.monic(), acc);
        for (auto& [m, g] : acc) out.emplace_back(g, m);
        return out;
    }

    // char p: repeatedly strip gcd structure; handles p-th powers exactly
    Poly g = f.monic();
    size_t pmul = 1;
    std::map<size_t, Poly> acc;
    while (g.deg() > 0) {
        Poly gp = g.derivative();
        if (gp.is_zero()) {
            g = pth_root_shape(g, fld.p);
            pmul *= fld.p;
            continue;
        }
        Poly c = poly_gcd(g, gp);
        Poly w = g / c;  // product of squarefree parts with mult not divisible by p
        size_t i = 1;
        while (w.deg() > 0) {
            Poly y = poly_gcd(w, c);
            Poly part = w / y;
            if (part.deg() > 0) {
                auto it = acc.find(i * pmul);
                if (it == acc.end())
                    acc.emplace(i * pmul, part.monic());
                else
                    it->second = it->second * part.monic();
            }
            w = y;
            c = c / y;
            ++i;
        }
        g = c;
    }
    for (auto& [m, gg] : acc) out.emplace_back(gg, m);
    return out;
}

// ---------------------------------------------------------------------------
// factorization over F_p
// ---------------------------------------------------------------------------

namespace {

void edf(const Poly& f, size_t d, std::vector<Poly>& out) {
    const Field fld = f.field();
    const uint64_t p = fld.p;
    if (static_cast<size_t>(f.deg()) == d) {
        out.push_back(f.monic());
        return;
    }
    mpz_class q = 1;
    for (size_t i = 0; i < d; ++i) q *= static_cast<unsigned long>(p);

    // deterministic sweep over candidate polynomials of degree < 2d
    for (size_t trial = 0;; ++trial) {
        // candidate a(t): encode trial in base p, degree grows slowly
        std::vector<Scalar> cc;
        size_t v = trial + p;  // skip constants
        size_t tmp = v;
        while (tmp) {
            cc.push_back(Scalar::residue(tmp % p, fld));
            tmp /= p;
        }
        Poly a = Poly::from_coeffs(fld, std::move(cc));
        Poly g0 = poly_gcd(a, f);
        if (g0.deg() > 0 && g0.deg() < f.deg()) {
            edf(g0, d, out);
            edf(f / g0, d, out);
            return;
        }
        Poly g(fld);
        if (p == 2) {
            // trace map splitting
            Poly tr = a % f;
            Poly acc = tr;
            for (size_t i = 1; i < d; ++i) {
                tr = poly_mulmod(tr, tr, f);
                acc = acc + tr;
            }
            g = poly_gcd(acc, f);
        } else {
            mpz_class e = (q - 1) / 2;
            Poly b = poly_powmod(a, e, f);
            g = poly_gcd(b - Poly::constant(Scalar::one(fld)), f);
        }
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, out);
            edf(f / g, d, out);
            return;
        }
    }
}

std::vector<PolyFactor> factor_fp(const Poly& f) {
    const Field fld = f.field();
    std::vector<PolyFactor> out;
    for (auto& [sq, mult] : squarefree_decomposition(f)) {
        // distinct-degree on the squarefree part
        Poly rem = sq;
        Poly x = Poly::x(fld);
        Poly xp = x;
        for (size_t d = 1; rem.deg() > 0 && d <= static_cast<size_t>(rem.deg()); ++d) {
            mpz_class pe(static_cast<unsigned long>(fld.p));
            xp = poly_powmod(xp, pe, rem);
            if (2 * d > static_cast<size_t>(rem.deg())) break;
            Poly g = poly_gcd(xp - x, rem);
            if (g.deg() > 0) {
                std::vector<Poly> irr;
                edf(g, d, irr);
                for (auto& h : irr) out.push_back({h, mult, true});
                rem = rem / g;
                xp = xp % rem;
            }
        }
        if (rem.deg() > 0) out.push_back({rem.monic(), mult, true});
    }
    return out;
}

// ---------------------------------------------------------------------------
// factorization over Q
// ---------------------------------------------------------------------------

std::vector<mpz_class> signed_divisors(const mpz_class& v, bool& ok, size_t cap) {
    std::vector<mpz_class> divs;
    mpz_class a = abs(v);
    if (a == 0) {
        ok = false;
        return divs;
    }
    mpz_class i = 1;
    for (; i * i <= a; ++i) {
        if (a % i == 0) {
            divs.push_back(i);
            if (i * i != a) divs.push_back(a / i);
            if (divs.size() > cap) {
                ok = false;
                return divs;
            }
        }
        if (i > 2000000) {  // give up on hard integer factorizations
            ok = false;
            return divs;
        }
    }
    size_t n = divs.size();
    for (size_t k = 0; k < n; ++k) divs.push_back(-divs[k]);
    ok = true;
    return divs;
}

// rational roots p/q, p | constant, q | leading (integer primitive input)
std::vector<mpq_class> rational_roots(const std::vector<mpz_class>& c) {
    std::vector<mpq_class> roots;
    size_t lo = 0;
    while (lo < c.size() && c[lo] == 0) ++lo;
    if (lo == c.size()) return roots;
    if (lo > 0) roots.push_back(mpq_class(0));
    bool ok1 = true, ok2 = true;
    auto ps = signed_divisors(c[lo], ok1, 4000);
    std::vector<mpz_class> qs;
    {
        bool okq = true;
        auto all = signed_divisors(c.back(), okq, 4000);
        for (auto& q : all)
            if (q > 0) qs.push_back(q);
        ok2 = okq;
    }
    if (!ok1 || !ok2) return roots;  // caller treats missing roots as "maybe unsplit"
    auto eval = [&](const mpq_class& x) {
        mpq_class r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + mpq_class(c[i]);
        return r;
    };
    for (auto& pd : ps)
        for (auto& qd : qs) {
            mpq_class cand(pd, qd);
            cand.canonicalize();
            if (eval(cand) == 0) roots.push_back(cand);
        }
    std::sort(roots.begin(), roots.end(), [](const mpq_class& a, const mpq_class& b) { return cmp(a, b) < 0; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<mpz_class> to_integer_primitive(const Poly& f) {
    mpz_class l = 1;
    for (int i = 0; i <= f.deg(); ++i) {
        Scalar s = f.coeff(static_cast<size_t>(i));
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rat().get_den().get_mpz_t());
    }
    std::vector<mpz_class> c(f.deg() + 1);
    mpz_class g = 0;
    for (int i = 0; i <= f.deg(); ++i) {
        Scalar s = f.coeff(static_cast<size_t>(i));
        mpq_class q = s.rat();
        c[i] = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : c) x /= g;
    return c;
}

mpz_class eval_int(const std::vector<mpz_class>& c, long x) {
    mpz_class r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

// Kronecker interpolation search for a degree-k integer factor. Complete when
// the divisor enumeration is complete; budget overruns report "unknown".
enum class SearchOutcome { Found, NoFactor, BudgetExceeded };

SearchOutcome kronecker_search(const std::vector<mpz_class>& c, size_t k, std::vector<mpz_class>& factor_out) {
    const long sample[] = {0, 1, -1, 2, -2, 3, -3, 4, -4};
    if (k + 1 > std::size(sample)) return SearchOutcome::BudgetExceeded;
    std::vector<long> xs(sample, sample + k + 1);
    std::vector<std::vector<mpz_class>> divs(k + 1);
    double combos = 1;
    for (size_t i = 0; i <= k; ++i) {
        bool ok = true;
        mpz_class v = eval_int(c, xs[i]);
        if (v == 0) return SearchOutcome::BudgetExceeded;  // roots should be gone already
        divs[i] = signed_divisors(v, ok, 512);
        if (!ok) return SearchOutcome::BudgetExceeded;
        if (i == 0) {
            // fix the sign ambiguity g ~ -g via the first sample value
            std::vector<mpz_class> pos;
            for (auto& d : divs[0])
                if (d > 0) pos.push_back(d);
            divs[0] = pos;
        }
        combos *= static_cast<double>(divs[i].size());
    }
    if (combos > 2e5) return SearchOutcome::BudgetExceeded;

    // precompute Lagrange basis polynomials for the fixed sample points
    std::vector<std::vector<mpq_class>> lag(k + 1);
    for (size_t i = 0; i <= k; ++i) {
        std::vector<mpq_class> basis = {mpq_class(1)};
        mpq_class denom = 1;
        for (size_t j = 0; j <= k; ++j) {
            if (j == i) continue;
            std::vector<mpq_class> nb(basis.size() + 1, mpq_class(0));
            for (size_t t = 0; t < basis.size(); ++t) {
                nb[t] += basis[t] * mpq_class(-xs[j]);
                nb[t + 1] += basis[t];
            }
            basis = std::move(nb);
            denom *= mpq_class(xs[i] - xs[j]);
        }
        for (auto& b : basis) b /= denom;
        lag[i] = std::move(basis);
    }

    std::vector<size_t> idx(k + 1, 0);
    while (true) {
        std::vector<mpq_class> g(k + 1, mpq_class(0));
        for (size_t i = 0; i <= k; ++i) {
            mpq_class v(divs[i][idx[i]]);
            for (size_t t = 0; t <= k; ++t)
                if (lag[i][t] != 0) g[t] += lag[i][t] * v;
        }
        bool integral = true;
        for (auto& q : g) {
            q.canonicalize();
            if (q.get_den() != 1) {
                integral = false;
                break;
            }
        }
        if (integral && g[k] != 0) {
            std::vector<Scalar> gs(k + 1), cs(c.size());
            for (size_t i = 0; i <= k; ++i) gs[i] = Scalar::rational(g[i]);
            for (size_t i = 0; i < c.size(); ++i) cs[i] = Scalar::rational(mpq_class(c[i]));
            Poly gp = Poly::from_coeffs(Field::rational(), gs);
            Poly cp = Poly::from_coeffs(Field::rational(), cs);
            if (gp.deg() == static_cast<int>(k) && gp.divides(cp)) {
                factor_out.resize(k + 1);
                for (size_t i = 0; i <= k; ++i) factor_out[i] = g[i].get_num();
                return SearchOutcome::Found;
            }
        }
        size_t pos = 0;
        while (pos <= k) {
            if (++idx[pos] < divs[pos].size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos > k) return SearchOutcome::NoFactor;
    }
}

Poly poly_from_mpz(const std::vector<mpz_class>& c) {
    std::vector<Scalar> s(c.size());
    for (size_t i = 0; i < c.size(); ++i) s[i] = Scalar::rational(mpq_class(c[i]));
    return Poly::from_coeffs(Field::rational(), s);
}

// factor a squarefree primitive integer polynomial over Q
void factor_squarefree_q(const Poly& f, size_t mult, std::vector<PolyFactor>& out) {
    if (f.deg() <= 0) return;
    if (f.deg() == 1) {
        out.push_back({f.monic(), mult, true});
        return;
    }
    std::vector<mpz_class> c = to_integer_primitive(f);
    // rational roots first
    auto roots = rational_roots(c);
    Poly rem = f.monic();
    for (auto& r : roots) {
        Poly lin = Poly::from_coeffs(Field::rational(), {Scalar::rational(mpq_class(-r)), Scalar::rational(mpq_class(1))});
        if (lin.divides(rem)) {
            rem = rem / lin;
            out.push_back({lin, mult, true});
        }
    }
    if (rem.deg() <= 0) return;
    if (rem.deg() <= 3) {
        // no rational roots left; degree 2 or 3 means irreducible over Q
        out.push_back({rem.monic(), mult, rem.deg() <= 3});
        return;
    }
    c = to_integer_primitive(rem);
    bool budget_hit = false;
    for (size_t k = 2; k <= static_cast<size_t>(rem.deg()) / 2; ++k) {
        std::vector<mpz_class> g;
        SearchOutcome res = kronecker_search(c, k, g);
        if (res == SearchOutcome::Found) {
            Poly gp = poly_from_mpz(g);
            factor_squarefree_q(gp, mult, out);
            factor_squarefree_q(rem / gp, mult, out);
            return;
        }
        if (res == SearchOutcome::BudgetExceeded) budget_hit = true;
    }
    // nothing split off: irreducible if every degree was searched exhaustively
    out.push_back({rem.monic(), mult, !budget_hit});
}

}  // namespace

std::vector<PolyFactor> factor_univariate(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorization of zero");
    if (f.field().is_prime()) return factor_fp(f);
    std::vector<PolyFactor> out;
    for (auto& [sq, mult] : squarefree_decomposition(f)) factor_squarefree_q(sq, mult, out);
    return out;
}

}  // namespace torelli
