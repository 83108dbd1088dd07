#pragma once

/**
 * @file expansion.hpp
 * @brief The base-m shift map and digit extraction.
 *
 * A number x in [0, m-1] is written as
 *
 *     x = m^{-b_1} / (1 + m^{-b_2} / (1 + ...)),   b_n >= -1,
 *
 * where b_1 is the unique integer with m^{-(b_1+1)} < x <= m^{-b_1} and the
 * next remainder is tau_m(x) = m^{-b_1}/x - 1. All digit decisions are
 * exact integer comparisons against powers of m; there is no floating
 * point logarithm anywhere on this path.
 *
 * The digit condition is meaningful on all of (0, m], so inputs up to m
 * are accepted (the first digit of x in (m-1, m] is -1); every remainder
 * after the first step lies in [0, m-1).
 */

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mcf/base.hpp"
#include "mcf/interval.hpp"
#include "mcf/rational.hpp"

namespace mcf {

/// An incomplete quotient; always >= -1.
class Digit {
    std::int64_t value_;

public:
    explicit Digit(std::int64_t v) : value_(v) {
        if (v < -1) throw DomainError("digit below -1: " + std::to_string(v));
    }
    std::int64_t value() const { return value_; }
    friend bool operator==(Digit, Digit) = default;
};

using DigitList = std::vector<Digit>;

inline DigitList make_digits(std::initializer_list<std::int64_t> values) {
    DigitList out;
    out.reserve(values.size());
    for (auto v : values) out.emplace_back(v);
    return out;
}

inline std::vector<std::int64_t> digit_values(const DigitList& digits) {
    std::vector<std::int64_t> out;
    out.reserve(digits.size());
    for (auto d : digits) out.push_back(d.value());
    return out;
}

/// Raised by digit_b1 / tau_step at x = 0, whose first digit is infinite.
class InfiniteDigit : public std::domain_error {
public:
    InfiniteDigit() : std::domain_error("x = 0 has an infinite first digit") {}
};

/// A value in the expansion domain, either exact or as a certified enclosure.
using NumberInput = std::variant<Rational, Interval>;

/// Default digit cap; overridable from the CLI via MCF_MAX_DIGITS.
inline constexpr std::size_t default_max_digits = 5000;

struct Expansion {
    Base base;
    DigitList digits;
    /// Remainder reached exactly 0; no further digits exist.
    bool terminated = false;
    /// tau_m^n(x) after the last emitted digit.
    std::variant<std::monostate, Rational, Interval> remainder;
    /// Exact runs only: iterates[n] = tau_m^n(x), n = 0..digits.size().
    std::vector<Rational> iterates;

    bool exact() const { return std::holds_alternative<Rational>(remainder); }

    /// tau_m^n(x) for exact runs; throws std::logic_error otherwise.
    const Rational& iterate(std::size_t n) const {
        if (iterates.empty()) throw std::logic_error("remainder unavailable for interval input");
        if (n >= iterates.size()) throw std::out_of_range("iterate index beyond expansion");
        return iterates[n];
    }

    /// Rational input that used up max_digits without reaching remainder 0.
    bool rational_cap_hit() const { return exact() && !terminated; }
};

/**
 * Raised when an enclosure straddles a power of m so the next digit
 * cannot be certified. Carries everything emitted up to that point.
 */
class PrecisionExhausted : public std::runtime_error {
    Expansion partial_;

public:
    explicit PrecisionExhausted(Expansion partial)
        : std::runtime_error("precision exhausted after " + std::to_string(partial.digits.size()) +
                             " digits"),
          partial_(std::move(partial)) {}

    const Expansion& partial() const { return partial_; }
    std::size_t digits_emitted() const { return partial_.digits.size(); }
};

namespace detail {

// sign(a - c*k) for a, c >= 0 and small k > 0.
inline int cmp_scaled(const BigInt& a, const BigInt& c, std::int64_t k) {
    const auto la = static_cast<std::int64_t>(mpz_sizeinbase(a.get_mpz_t(), 2));
    const auto lc = static_cast<std::int64_t>(mpz_sizeinbase(c.get_mpz_t(), 2));
    const auto lk = static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(k)));
    if (la > lc + lk) return 1;
    if (la < lc + lk - 1) return -1;
    BigInt ck;
    mpz_mul_ui(ck.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    return cmp(a, ck);
}

inline void check_domain(const Rational& x, Base m) {
    if (x.sign() < 0 || cmp_scaled(x.num(), x.den(), m.value()) > 0)
        throw DomainError("x = " + x.str() + " outside [0, " + std::to_string(m.value()) + "]");
}

// First guess for the digit from bit lengths, then exact correction.
inline std::int64_t digit_guess(const Rational& x, Base m) {
    const double bits = static_cast<double>(bit_length(x.den()) - bit_length(x.num()));
    const auto guess = static_cast<std::int64_t>(std::floor(bits / std::log2(static_cast<double>(m.value()))));
    return guess < -1 ? -1 : guess;
}

}  // namespace detail

/**
 * The b >= -1 with m^{-(b+1)} < x <= m^{-b}. The right endpoint is closed:
 * x = m^{-k} gives digit k.
 */
inline Digit digit_b1(const Rational& x, Base m) {
    if (x.is_zero()) throw InfiniteDigit();
    detail::check_domain(x, m);

    // Remainders mostly land in the two widest cells, (1, m] and (1/m, 1].
    if (cmp(x.num(), x.den()) > 0) return Digit(-1);
    if (detail::cmp_scaled(x.den(), x.num(), m.value()) < 0) return Digit(0);

    std::int64_t b = detail::digit_guess(x, m);
    // Walk until both bracketing comparisons agree. The bit-length guess is
    // off by at most one step in either direction.
    for (;;) {
        if (cmp_power(x, m, -b) > 0) {
            --b;  // x above m^{-b}: digit too large
        } else if (cmp_power(x, m, -(b + 1)) <= 0) {
            ++b;  // x at or below m^{-(b+1)}: digit too small
        } else {
            return Digit(b);
        }
    }
}

/**
 * (b, x') with b = digit_b1(x) and x' = m^{-b}/x - 1, so x = m^{-b}/(1 + x').
 *
 * With x = a/c in lowest terms the result is reduced without a full gcd:
 * for b >= 1, x' = (c - a m^b)/(a m^b) and the only common factor is
 * gcd(c, m^b); for b = 0, (c - a)/a is already reduced; for b = -1,
 * x' = (m c - a)/a shares only gcd(m, a).
 */
inline std::pair<Digit, Rational> tau_step(const Rational& x, Base m) {
    const Digit b = digit_b1(x, m);
    const BigInt& a = x.num();
    const BigInt& c = x.den();
    const auto mv = static_cast<unsigned long>(m.value());

    BigInt num, den, g;
    if (b.value() == -1) {
        mpz_mul_ui(num.get_mpz_t(), c.get_mpz_t(), mv);
        num -= a;
        den = a;
        mpz_gcd_ui(g.get_mpz_t(), a.get_mpz_t(), mv);
    } else if (b.value() == 0) {
        num = c - a;
        den = a;
        g = 1;
    } else {
        const BigInt mb = ipow(m, static_cast<std::uint64_t>(b.value()));
        den = a * mb;
        num = c - den;
        mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), mb.get_mpz_t());
    }
    if (g != 1) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
    return {b, Rational::from_canonical(std::move(num), std::move(den))};
}

namespace detail {

inline Expansion expand_exact(const Rational& x, Base m, std::size_t max_digits) {
    check_domain(x, m);
    Expansion e{m, {}, false, x, {x}};
    Rational current = x;
    while (!current.is_zero() && e.digits.size() < max_digits) {
        auto [b, next] = tau_step(current, m);
        e.digits.push_back(b);
        e.iterates.push_back(next);
        current = std::move(next);
    }
    e.terminated = current.is_zero();
    e.remainder = std::move(current);
    return e;
}

// Digit of an enclosure, certified only when both endpoints agree.
inline std::optional<Digit> certified_digit(const Interval& x, Base m) {
    if (x.lo().sign() <= 0 || x.hi() > Rational(m.value())) return std::nullopt;
    const Digit b = digit_b1(x.hi(), m);
    if (cmp_power(x.lo(), m, -(b.value() + 1)) <= 0) return std::nullopt;
    return b;
}

inline Expansion expand_interval(const Interval& x, Base m, std::size_t max_digits) {
    if (x.lo().sign() < 0 || x.hi() > Rational(m.value()))
        throw DomainError("enclosure " + x.str() + " not inside [0, " + std::to_string(m.value()) + "]");
    Expansion e{m, {}, false, x, {}};
    Interval current = x;
    while (e.digits.size() < max_digits) {
        if (current.degenerate() && current.lo().is_zero()) break;
        auto b = certified_digit(current, m);
        if (!b) {
            e.remainder = current;
            throw PrecisionExhausted(std::move(e));
        }
        e.digits.push_back(*b);
        current = base_pow(m, -b->value()) / current - Rational(1);
    }
    e.terminated = current.degenerate() && current.lo().is_zero();
    e.remainder = std::move(current);
    return e;
}

}  // namespace detail

/**
 * Up to max_digits digits of x. Exact inputs are expanded with exact
 * arithmetic and keep the full iterate trail; interval inputs emit a digit
 * only when the whole enclosure sits strictly inside one digit cell and
 * throw PrecisionExhausted (carrying the emitted prefix) otherwise.
 * x = 0 yields an empty, terminated expansion.
 */
inline Expansion expand(const NumberInput& x, Base m, std::size_t max_digits = default_max_digits) {
    if (const auto* r = std::get_if<Rational>(&x)) return detail::expand_exact(*r, m, max_digits);
    return detail::expand_interval(std::get<Interval>(x), m, max_digits);
}

}  // namespace mcf
