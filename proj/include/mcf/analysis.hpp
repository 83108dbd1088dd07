#pragma once

/**
 * @file analysis.hpp
 * @brief Error formula, two-sided error bounds and floors on q_n.
 *
 * For x with remainder t = tau_m^n(x) the truncation error is
 *
 *     x - omega_n = (-1)^n t m^{S_n} / (q_n (q_n + t m^{b_n} q_{n-1})),
 *
 * S_n = b_1 + ... + b_n. Rewriting t through the next digit gives
 *
 *     |x - omega_n| = m^{S_n} / (q_n (q_{n+1} + tau_m^{n+1}(x) m^{b_{n+1}} q_n)),
 *
 * and since 0 <= tau_m^{n+1} < m - 1 this is sandwiched between
 *
 *     lower_tight = m^{S_n} / (q_n (q_{n+1} + (m-1) m^{b_{n+1}} q_n))
 *     upper_tight = m^{S_n} / (q_n q_{n+1}).
 *
 * lower_loose uses (m-1)^{n+1} in place of (m-1); it is weaker but still
 * valid. upper_fib = 1/max(F_n, m^{S_n}) relies on q_n >= F_n, which only
 * holds when no digit is -1.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcf/base.hpp"
#include "mcf/convergents.hpp"
#include "mcf/expansion.hpp"
#include "mcf/fibonacci.hpp"
#include "mcf/interval.hpp"
#include "mcf/rational.hpp"

namespace mcf {

/// Two independent evaluations of the same quantity disagreed.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/**
 * x - omega_n computed both by direct subtraction and by the closed form;
 * throws InternalInconsistency if they differ.
 */
inline Rational error_exact(const Rational& x, const Expansion& expansion,
                            const ConvergentTable& table, std::size_t n) {
    if (n < 1 || n > table.depth()) throw std::out_of_range("error_exact depth out of range");
    const Rational& t = expansion.iterate(n);

    const Rational direct = x - table.convergent(n);

    const Rational qn = table.q(n);
    const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
    const Rational closed = sign * t * table.power_sum(n) /
                            (qn * (qn + t * table.digit_power(n) * table.q(n - 1)));
    if (direct != closed)
        throw InternalInconsistency("error formula mismatch at depth " + std::to_string(n) + ": " +
                                    direct.str() + " vs " + closed.str());
    return direct;
}

struct BoundsRow {
    std::size_t n = 0;
    /// x - omega_n, signed.
    Rational error;
    /// False when tau_m^n(x) = 0: the error is exactly 0 and no bound applies.
    bool applicable = false;
    std::optional<Rational> lower_tight;
    std::optional<Rational> lower_loose;
    std::optional<Rational> upper_tight;
    std::optional<Rational> upper_fib;
    Rational q_floor_power;  // m^{S_n}
    BigInt q_floor_fib;      // F_n
};

/**
 * Error and the four bounds at depth n. Requires the table to reach row
 * n+1 unless the expansion terminated at n.
 */
inline BoundsRow error_bounds(const ConvergentTable& table, const Expansion& expansion, std::size_t n) {
    const Base m = table.base();
    BoundsRow row;
    row.n = n;
    row.error = error_exact(expansion.iterate(0), expansion, table, n);
    row.q_floor_power = table.power_sum(n);
    row.q_floor_fib = fibonacci(n);

    if (expansion.iterate(n).is_zero()) return row;
    if (n + 1 > table.depth()) throw std::out_of_range("bounds need digit b_{n+1}");

    row.applicable = true;
    const Rational qn = table.q(n), qn1 = table.q(n + 1);
    const Rational next_pow = table.digit_power(n + 1);
    const Rational mm1(m.value() - 1);
    BigInt mm1_pow;
    mpz_ui_pow_ui(mm1_pow.get_mpz_t(), static_cast<unsigned long>(m.value() - 1), n + 1);

    row.lower_tight = row.q_floor_power / (qn * (qn1 + mm1 * next_pow * qn));
    row.lower_loose = row.q_floor_power / (qn * (qn1 + Rational(mm1_pow) * next_pow * qn));
    row.upper_tight = row.q_floor_power / (qn * qn1);
    const Rational fib(row.q_floor_fib);
    row.upper_fib = (fib > row.q_floor_power ? fib : row.q_floor_power).reciprocal();
    return row;
}

struct QFloors {
    bool power_floor_holds;  // q_n >= m^{S_n}
    bool fib_floor_holds;    // q_n >= F_n
};

inline QFloors q_floors(const ConvergentTable& table, std::size_t n) {
    const Rational qn = table.q(n);
    return {qn >= table.power_sum(n), qn >= Rational(fibonacci(n))};
}

struct DiagnosticsRow {
    std::size_t n;
    /// Certified enclosure of |x - omega_n|.
    Interval error;
    /// 1/q_{n+1}; absent when the expansion ended at n.
    std::optional<Rational> ceiling;
    bool ceiling_holds;
};

namespace detail {

inline Interval abs_distance(const Interval& x, const Rational& point) {
    const Rational lo = x.lo() - point, hi = x.hi() - point;
    if (lo.sign() >= 0) return Interval(lo, hi, x.precision());
    if (hi.sign() <= 0) return Interval(-hi, -lo, x.precision());
    return Interval(Rational(0), -lo > hi ? -lo : hi, x.precision());
}

}  // namespace detail

/**
 * Per-depth enclosure of |x - omega_n| for n = 1..depth together with the
 * ceiling 1/q_{n+1}. Rational inputs give point enclosures. Interval inputs
 * propagate PrecisionExhausted if depth+1 digits cannot be certified.
 */
inline std::vector<DiagnosticsRow> convergence_diagnostics(const NumberInput& x, Base m, std::size_t depth,
                                                           std::int64_t precision = 256) {
    const Expansion e = expand(x, m, depth + 1);
    std::vector<DiagnosticsRow> rows;
    if (e.digits.empty()) return rows;

    const Interval enclosure = std::holds_alternative<Rational>(x)
                                   ? Interval::point(std::get<Rational>(x), precision)
                                   : std::get<Interval>(x);
    const ConvergentTable table(e.digits, m);
    const std::size_t last = std::min(depth, e.digits.size());
    rows.reserve(last);
    for (std::size_t n = 1; n <= last; ++n) {
        DiagnosticsRow row{n, detail::abs_distance(enclosure, table.convergent(n)), std::nullopt, true};
        if (n + 1 <= table.depth()) {
            row.ceiling = table.q(n + 1).reciprocal();
            row.ceiling_holds = row.error.hi() <= *row.ceiling;
        } else {
            row.ceiling_holds = row.error.hi().is_zero();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mcf
