#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rationals.
 *
 * Rational is a thin value type over GMP's mpq. Every constructing
 * operation leaves the fraction canonical: denominator positive,
 * numerator and denominator coprime, zero stored as 0/1. Two values are
 * equal iff their canonical numerator/denominator pairs are equal.
 */

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcf {

using BigInt = mpz_class;

/// Raised when a fraction would get a zero denominator.
class ZeroDenominator : public std::domain_error {
public:
    ZeroDenominator() : std::domain_error("zero denominator") {}
};

/// Raised when a value lies outside the domain an operation accepts.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class Rational {
    mpq_class value_;

    explicit Rational(mpq_class v) : value_(std::move(v)) {}

public:
    Rational() : value_(0) {}
    Rational(long v) : value_(v) {}  // NOLINT: implicit by design of numeric literals
    Rational(int v) : value_(static_cast<long>(v)) {}  // NOLINT
    Rational(const BigInt& v) : value_(v) {}  // NOLINT

    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw ZeroDenominator();
        value_.get_num() = num;
        value_.get_den() = den;
        value_.canonicalize();
    }

    /// Trusted constructor: num/den must already be coprime with den > 0.
    static Rational from_canonical(BigInt num, BigInt den) {
        Rational r;
        r.value_.get_num() = std::move(num);
        r.value_.get_den() = std::move(den);
        return r;
    }

    static Rational from_mpq(mpq_class v) {
        v.canonicalize();
        return Rational(std::move(v));
    }

    const BigInt& num() const { return value_.get_num(); }
    const BigInt& den() const { return value_.get_den(); }
    const mpq_class& mpq() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational abs() const { return Rational(mpq_class(::abs(value_))); }
    Rational reciprocal() const {
        if (is_zero()) throw ZeroDenominator();
        return Rational(den(), num());
    }

    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw ZeroDenominator();
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// "p/q", or "p" for integers.
    std::string str() const { return value_.get_str(10); }

    /// Nearest double (mpq's own conversion truncates).
    double to_double() const {
        const BigInt& n = value_.get_num();
        const BigInt& d = value_.get_den();
        if (sgn(n) == 0) return 0.0;
        const auto nb = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
        const auto db = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
        if (nb <= 53 && db <= 53) return n.get_d() / d.get_d();
        // 64-bit quotient with a sticky bit, rounded once by the hardware conversion.
        BigInt a = ::abs(n), b = d, q, r;
        long k = 64 - (nb - db);
        if (k >= 0) mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(k));
        else mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(-k));
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        bool sticky = sgn(r) != 0;
        if (mpz_sizeinbase(q.get_mpz_t(), 2) > 64) {
            sticky = sticky || mpz_odd_p(q.get_mpz_t());
            mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), 1);
            --k;
        }
        std::uint64_t top = 0;
        mpz_export(&top, nullptr, -1, sizeof(top), 0, 0, q.get_mpz_t());
        if (sticky) top |= 1;
        const double mag = std::ldexp(static_cast<double>(top), static_cast<int>(-k));
        return sgn(n) < 0 ? -mag : mag;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }
};

/// Normalized p/q; throws ZeroDenominator when q == 0.
inline Rational make_rational(const BigInt& p, const BigInt& q) {
    return Rational(p, q);
}

inline Rational make_rational(long p, long q) {
    return Rational(BigInt(p), BigInt(q));
}

/// 2^e for integer e of either sign.
inline Rational pow2(long e) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

/// Bit length of |v| (0 for v == 0).
inline std::int64_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<std::int64_t>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

/// Largest integer not above r.
inline BigInt floor(const Rational& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return q;
}

/// Smallest integer not below r.
inline BigInt ceil(const Rational& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return q;
}

/**
 * Parses "p", "p/q", or a decimal literal "[-]int.frac" into an exact
 * rational ("0.3" is 3/10). Throws std::invalid_argument on malformed
 * text and ZeroDenominator on "p/0".
 */
inline Rational parse_rational(std::string_view text) {
    auto digits_only = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto bad = [&] {
        return std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    };

    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto p = body.substr(0, slash), q = body.substr(slash + 1);
        if (!digits_only(p) || !digits_only(q)) throw bad();
        value = Rational(BigInt(std::string(p)), BigInt(std::string(q)));
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot), frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw bad();
        if ((!whole.empty() && !digits_only(whole)) || (!frac.empty() && !digits_only(frac)))
            throw bad();
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        BigInt num(std::string(whole.empty() ? "0" : whole) + std::string(frac));
        value = Rational(num, scale);
    } else {
        if (!digits_only(body)) throw bad();
        value = Rational(BigInt(std::string(body)));
    }
    return negative ? -value : value;
}

}  // namespace mcf
