#include "torelli/field.hpp"

namespace torelli {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod_u64(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw DivisionByZero("division by zero in F_p");
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

Field Field::prime(uint64_t p) {
    if (p >= (1ull << 31)) throw std::invalid_argument("prime modulus too large (need p < 2^31)");
    if (!is_prime_u64(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    return Field{FieldKind::Prime, p};
}

std::string Field::str() const {
    return is_rational() ? "Q" : "F_" + std::to_string(p);
}

Scalar Scalar::one(const Field& f) {
    Scalar s(f);
    if (f.is_rational())
        s.q_ = 1;
    else
        s.r_ = 1 % f.p;
    return s;
}

Scalar Scalar::integer(const Field& f, long v) {
    Scalar s(f);
    if (f.is_rational()) {
        s.q_ = v;
    } else {
        long m = v % static_cast<long>(f.p);
        if (m < 0) m += static_cast<long>(f.p);
        s.r_ = static_cast<uint64_t>(m);
    }
    return s;
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Scalar s(Field::rational());
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
}

Scalar Scalar::rational(const mpq_class& q) {
    Scalar s(Field::rational());
    s.q_ = q;
    s.q_.canonicalize();
    return s;
}

Scalar Scalar::residue(uint64_t v, const Field& f) {
    if (!f.is_prime()) throw FieldMismatch("residue() needs a prime field");
    Scalar s(f);
    s.r_ = v % f.p;
    return s;
}

Scalar Scalar::parse(const std::string& s, const Field& f) {
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in: " + s);
    q.canonicalize();
    Scalar r = Scalar::rational(q);
    if (f.is_rational()) return r;
    return r.reduce_mod(f);
}

bool Scalar::is_zero() const {
    return f_.is_rational() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return f_.is_rational() ? q_ == 1 : r_ == 1 % f_.p;
}

const mpq_class& Scalar::rat() const {
    if (!f_.is_rational()) throw FieldMismatch("not a rational scalar");
    return q_;
}

uint64_t Scalar::res() const {
    if (!f_.is_prime()) throw FieldMismatch("not a prime-field scalar");
    return r_;
}

Scalar Scalar::reduce_mod(const Field& fp) const {
    if (!fp.is_prime()) throw FieldMismatch("reduce_mod needs a prime field");
    if (f_.is_prime()) {
        if (f_ == fp) return *this;
        throw FieldMismatch("cannot reduce between distinct prime fields");
    }
    mpz_class num = q_.get_num(), den = q_.get_den();
    mpz_class pz(static_cast<unsigned long>(fp.p));
    mpz_class dm = den % pz;
    if (dm == 0) throw DivisionByZero("denominator vanishes mod " + std::to_string(fp.p));
    mpz_class nm = num % pz;
    if (nm < 0) nm += pz;
    uint64_t n = nm.get_ui();
    uint64_t d = dm.get_ui();
    return Scalar::residue(mulmod_u64(n, invmod_u64(d, fp.p), fp.p), fp);
}

void Scalar::check_same(const Scalar& o) const {
    if (!(f_ == o.f_)) throw FieldMismatch("mixed-field arithmetic: " + f_.str() + " vs " + o.f_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = q_ + o.q_;
    else
        s.r_ = (r_ + o.r_) % f_.p;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = q_ - o.q_;
    else
        s.r_ = (r_ + f_.p - o.r_) % f_.p;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = q_ * o.q_;
    else
        s.r_ = mulmod_u64(r_, o.r_, f_.p);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same(o);
    if (o.is_zero()) throw DivisionByZero("division by zero");
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = q_ / o.q_;
    else
        s.r_ = mulmod_u64(r_, invmod_u64(o.r_, f_.p), f_.p);
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : f_.p - r_;
    return s;
}

Scalar Scalar::inv() const {
    return Scalar::one(f_) / *this;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(f_ == o.f_)) return false;
    return f_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

int Scalar::cmp(const Scalar& o) const {
    check_same(o);
    if (f_.is_rational()) return ::cmp(q_, o.q_);
    return r_ < o.r_ ? -1 : (r_ > o.r_ ? 1 : 0);
}

std::string Scalar::str() const {
    return f_.is_rational() ? q_.get_str() : std::to_string(r_);
}

}  // namespace torelli
