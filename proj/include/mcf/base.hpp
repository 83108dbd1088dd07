#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "mcf/rational.hpp"

namespace mcf {

/// Expansion base m; always at least 2.
class Base {
    std::int64_t m_;

public:
    explicit Base(std::int64_t m) : m_(m) {
        if (m < 2) throw DomainError("base must be >= 2, got " + std::to_string(m));
    }

    std::int64_t value() const { return m_; }
    friend bool operator==(Base, Base) = default;
};

/// m^e as an integer, e >= 0.
inline BigInt ipow(Base m, std::uint64_t e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(m.value()), e);
    return r;
}

/// m^e as an exact rational for e of either sign.
inline Rational base_pow(Base m, std::int64_t e) {
    if (e >= 0) return Rational(ipow(m, static_cast<std::uint64_t>(e)));
    return Rational(BigInt(1), ipow(m, static_cast<std::uint64_t>(-e)));
}

/**
 * Exact ordering of x against m^e by integer cross-multiplication:
 * num * m^{-e} vs den when e < 0, num vs den * m^e otherwise.
 */
inline std::strong_ordering cmp_power(const Rational& x, Base m, std::int64_t e) {
    int c;
    if (e < 0) {
        const BigInt lhs = x.num() * ipow(m, static_cast<std::uint64_t>(-e));
        c = cmp(lhs, x.den());
    } else {
        const BigInt rhs = x.den() * ipow(m, static_cast<std::uint64_t>(e));
        c = cmp(x.num(), rhs);
    }
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

}  // namespace mcf
