#pragma once

/**
 * @file interval.hpp
 * @brief Certified enclosures with exact rational endpoints.
 *
 * An Interval [lo, hi] always contains the exact value it stands for.
 * Endpoints are exact rationals; after each operation on a non-degenerate
 * interval they are rounded outward onto a dyadic grid with roughly
 * `precision` significant bits, which bounds their size without giving up
 * the containment guarantee. Degenerate (point) intervals are never
 * rounded, so a rational promoted to an interval keeps its exact value.
 */

#include <algorithm>
#include <cstdint>
#include <string>

#include "mcf/base.hpp"
#include "mcf/rational.hpp"

namespace mcf {

namespace detail {

// Exponent k such that |v| * 2^k has about `bits` bits before the point.
inline std::int64_t dyadic_scale(const Rational& v, std::int64_t bits) {
    return bits - (bit_length(v.num()) - bit_length(v.den()));
}

inline Rational round_down(const Rational& v, std::int64_t bits) {
    if (v.is_zero() || v.den() == 1) return v;
    const std::int64_t k = dyadic_scale(v, bits);
    return Rational(floor(v * pow2(k))) * pow2(-k);
}

inline Rational round_up(const Rational& v, std::int64_t bits) {
    if (v.is_zero() || v.den() == 1) return v;
    const std::int64_t k = dyadic_scale(v, bits);
    return Rational(ceil(v * pow2(k))) * pow2(-k);
}

}  // namespace detail

/// Outcome of comparing an enclosure against a point.
enum class IntervalOrdering { less, equal, greater, unknown };

class Interval {
    Rational lo_;
    Rational hi_;
    std::int64_t precision_;

    Interval(Rational lo, Rational hi, std::int64_t precision, bool round)
        : lo_(std::move(lo)), hi_(std::move(hi)), precision_(precision) {
        if (round && lo_ != hi_) {
            lo_ = detail::round_down(lo_, precision_);
            hi_ = detail::round_up(hi_, precision_);
        }
    }

public:
    Interval(Rational lo, Rational hi, std::int64_t precision)
        : Interval(std::move(lo), std::move(hi), precision, false) {
        if (precision_ < 1) throw DomainError("precision budget must be positive");
        if (hi_ < lo_) throw DomainError("interval with lo > hi");
    }

    /// Degenerate [v, v].
    static Interval point(const Rational& v, std::int64_t precision) {
        return Interval(v, v, precision);
    }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    std::int64_t precision() const { return precision_; }

    bool degenerate() const { return lo_ == hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
    bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return {a.lo_ + b.lo_, a.hi_ + b.hi_, std::min(a.precision_, b.precision_), true};
    }

    friend Interval operator-(const Interval& a, const Interval& b) {
        return {a.lo_ - b.hi_, a.hi_ - b.lo_, std::min(a.precision_, b.precision_), true};
    }

    friend Interval operator*(const Interval& a, const Interval& b) {
        Rational c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
        auto [lo, hi] = std::minmax_element(std::begin(c), std::end(c));
        return {*lo, *hi, std::min(a.precision_, b.precision_), true};
    }

    /// Throws ZeroDenominator when the divisor encloses zero.
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw ZeroDenominator();
        const Interval inv{b.hi_.reciprocal(), b.lo_.reciprocal(), b.precision_, true};
        return a * inv;
    }

    friend Interval operator+(const Interval& a, const Rational& r) {
        return a + Interval::point(r, a.precision_);
    }
    friend Interval operator-(const Interval& a, const Rational& r) {
        return a - Interval::point(r, a.precision_);
    }
    friend Interval operator*(const Interval& a, const Rational& r) {
        return a * Interval::point(r, a.precision_);
    }
    friend Interval operator/(const Rational& r, const Interval& b) {
        return Interval::point(r, b.precision_) / b;
    }

    std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }
};

using PrecisionInterval = Interval;

/**
 * Enclosure of sqrt(n) from the integer square root of n * 4^precision:
 * [s, s+1] / 2^precision, degenerate when n is a perfect square.
 * Width is at most 2^{1-precision} * sqrt(n).
 */
inline Interval interval_from_sqrt(const BigInt& n, std::int64_t precision) {
    if (n < 0) throw DomainError("sqrt of a negative integer");
    if (precision < 1) throw DomainError("precision budget must be positive");

    BigInt root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        return Interval::point(Rational(root), precision);
    }
    BigInt scaled = n;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * static_cast<unsigned long>(precision));
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    const Rational ulp = pow2(-precision);
    return Interval(Rational(root) * ulp, Rational(BigInt(root + 1)) * ulp, precision);
}

/// Ordering of the whole enclosure against m^e; unknown if it straddles.
inline IntervalOrdering certain_cmp_power(const Interval& x, Base m, std::int64_t e) {
    const auto hi = cmp_power(x.hi(), m, e);
    if (hi < 0) return IntervalOrdering::less;
    const auto lo = cmp_power(x.lo(), m, e);
    if (lo > 0) return IntervalOrdering::greater;
    if (lo == 0 && hi == 0) return IntervalOrdering::equal;
    return IntervalOrdering::unknown;
}

}  // namespace mcf
