#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace torelli {

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

enum class FieldKind : uint8_t { Rational, Prime };

/// Base field descriptor: Q or F_p for a prime p < 2^31.
struct Field {
    FieldKind kind = FieldKind::Rational;
    uint64_t p = 0;

    static Field rational() { return Field{FieldKind::Rational, 0}; }
    static Field prime(uint64_t p);

    bool is_rational() const { return kind == FieldKind::Rational; }
    bool is_prime() const { return kind == FieldKind::Prime; }
    bool operator==(const Field&) const = default;

    std::string str() const;
};

bool is_prime_u64(uint64_t n);

/// Exact field element: arbitrary-precision rational, or residue mod p.
/// Rationals are kept reduced with positive denominator (mpq canonical form);
/// residues live in [0, p).
class Scalar {
public:
    Scalar() : f_(Field::rational()) {}
    explicit Scalar(const Field& f) : f_(f) {}

    static Scalar zero(const Field& f) { return Scalar(f); }
    static Scalar one(const Field& f);
    static Scalar integer(const Field& f, long v);
    static Scalar rational(long num, long den = 1);
    static Scalar rational(const mpq_class& q);
    static Scalar residue(uint64_t v, const Field& f);
    /// Parses "a", "-a" or "a/b" in the given field.
    static Scalar parse(const std::string& s, const Field& f);

    const Field& field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational_field() const { return f_.is_rational(); }

    const mpq_class& rat() const;
    uint64_t res() const;
    /// Residue of a rational mod p; throws if the denominator vanishes mod p.
    Scalar reduce_mod(const Field& fp) const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    /// Total order used for canonical sorting (numeric over Q, by residue over F_p).
    int cmp(const Scalar& o) const;

    std::string str() const;

private:
    Field f_;
    mpq_class q_;
    uint64_t r_ = 0;

    void check_same(const Scalar& o) const;
};

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod_u64(uint64_t a, uint64_t p);

}  // namespace torelli
