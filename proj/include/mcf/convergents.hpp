#pragma once

/**
 * @file convergents.hpp
 * @brief Convergents p_n/q_n of a base-m digit sequence.
 *
 * Rows follow
 *
 *     p_n = m^{b_n} p_{n-1} + m^{b_{n-1}} p_{n-2}
 *     q_n = m^{b_n} q_{n-1} + m^{b_{n-1}} q_{n-2}
 *
 * seeded with p_0 = 0, q_0 = 1, p_1 = 1, q_1 = m^{b_1}. A digit of -1 makes
 * m^{b} = 1/m, so p_n and q_n are rationals whose denominators are powers
 * of m. They are kept exactly as the recurrence yields them (the pair is
 * never divided by a common factor); only omega_n = p_n/q_n is reduced.
 *
 * Storage is scaled: p_n = P_n / m^{s_n}, q_n = Q_n / m^{s_n}, where s_n
 * counts the -1 digits among b_1..b_n and P_n, Q_n are integers. With
 * c(b) = b + [b = -1] >= 0 the recurrence becomes integral:
 *
 *     P_n = m^{c(b_n)} P_{n-1} + m^{c(b_{n-1}) + [b_n = -1]} P_{n-2}
 *
 * so building a row never needs a gcd.
 *
 * Digits and rows are 1-based; row 0 holds the seeds.
 */

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mcf/base.hpp"
#include "mcf/expansion.hpp"
#include "mcf/rational.hpp"

namespace mcf {

/// b + [b = -1]: the exponent of m in m^{b} after clearing a 1/m.
inline std::int64_t cleared_exponent(Digit b) {
    return b.value() == -1 ? 0 : b.value();
}

struct ConvergentRow {
    std::size_t n = 0;
    BigInt P;                    // p_n * m^{scale}
    BigInt Q;                    // q_n * m^{scale}
    std::int64_t scale = 0;      // s_n, number of -1 digits in b_1..b_n
    std::int64_t digit_sum = 0;  // b_1 + ... + b_n
};

class ConvergentTable {
    Base base_;
    DigitList digits_;
    std::vector<ConvergentRow> rows_;

public:
    /// Rows 0..up_to; throws on an empty digit list or up_to beyond it.
    ConvergentTable(DigitList digits, Base m, std::size_t up_to)
        : base_(m), digits_(std::move(digits)) {
        if (digits_.empty()) throw std::invalid_argument("convergents of an empty digit list");
        if (up_to > digits_.size()) throw std::out_of_range("up_to exceeds digit count");
        rows_.reserve(up_to + 1);
        rows_.push_back({0, BigInt(0), BigInt(1), 0, 0});
        for (std::size_t n = 1; n <= up_to; ++n) extend_one();
    }

    ConvergentTable(const DigitList& digits, Base m)
        : ConvergentTable(digits, m, digits.size()) {}

    /// Appends row depth()+1; requires a digit for it.
    void extend_one() {
        const std::size_t n = rows_.size();
        if (n > digits_.size()) throw std::out_of_range("no digit left to extend the table");
        const Digit b = digits_[n - 1];
        const bool neg = b.value() == -1;
        const ConvergentRow& prev = rows_[n - 1];

        ConvergentRow row;
        row.n = n;
        row.scale = prev.scale + (neg ? 1 : 0);
        row.digit_sum = prev.digit_sum + b.value();
        const BigInt lead = ipow(base_, static_cast<std::uint64_t>(cleared_exponent(b)));
        if (n == 1) {
            row.P = neg ? BigInt(base_.value()) : BigInt(1);
            row.Q = lead;
        } else {
            const ConvergentRow& prev2 = rows_[n - 2];
            const auto lag_exp = cleared_exponent(digits_[n - 2]) + (neg ? 1 : 0);
            const BigInt lag = ipow(base_, static_cast<std::uint64_t>(lag_exp));
            row.P = lead * prev.P + lag * prev2.P;
            row.Q = lead * prev.Q + lag * prev2.Q;
        }
        rows_.push_back(std::move(row));
    }

    Base base() const { return base_; }
    const DigitList& digits() const { return digits_; }
    std::size_t depth() const { return rows_.size() - 1; }
    const ConvergentRow& row(std::size_t n) const { return rows_.at(n); }

    Rational p(std::size_t n) const { return Rational(row(n).P, ipow(base_, row(n).scale)); }
    Rational q(std::size_t n) const { return Rational(row(n).Q, ipow(base_, row(n).scale)); }

    /// m^{b_n}, n >= 1.
    Rational digit_power(std::size_t n) const {
        if (n < 1 || n > depth()) throw std::out_of_range("digit index out of range");
        return base_pow(base_, digits_[n - 1].value());
    }

    /// m^{b_1 + ... + b_n}; 1 for n = 0.
    Rational power_sum(std::size_t n) const { return base_pow(base_, row(n).digit_sum); }

    /// omega_n = p_n / q_n, reduced; the scale cancels.
    Rational convergent(std::size_t n) const { return Rational(row(n).P, row(n).Q); }
};

inline ConvergentTable build_table(const DigitList& digits, Base m, std::size_t up_to) {
    return ConvergentTable(digits, m, up_to);
}

/// Bottom-up m^{-b_1}/(1 + m^{-b_2}/(1 + ... m^{-b_n}/(1 + tail))).
inline Rational eval_with_tail(const DigitList& digits, Base m, const Rational& tail) {
    if (digits.empty()) throw std::invalid_argument("evaluation of an empty digit list");
    Rational acc = tail;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        acc = base_pow(m, -it->value()) / (Rational(1) + acc);
    return acc;
}

/// [b_1, ..., b_n]_m by nested evaluation; independent of the recurrence.
inline Rational eval_finite(const DigitList& digits, Base m) {
    return eval_with_tail(digits, m, Rational(0));
}

/// (p_n + t m^{b_n} p_{n-1}) / (q_n + t m^{b_n} q_{n-1}) for t >= 0.
inline Rational moebius_with_tail(const ConvergentTable& table, std::size_t n, const Rational& t) {
    if (n < 1 || n > table.depth()) throw std::out_of_range("moebius_with_tail depth out of range");
    if (t.sign() < 0) throw DomainError("tail must be non-negative");
    const Rational scale = t * table.digit_power(n);
    return (table.p(n) + scale * table.p(n - 1)) / (table.q(n) + scale * table.q(n - 1));
}

/// p_n q_{n+1} - p_{n+1} q_n on the unreduced pairs.
inline Rational determinant(const ConvergentTable& table, std::size_t n) {
    if (n + 1 > table.depth()) throw std::out_of_range("determinant needs row n+1");
    return table.p(n) * table.q(n + 1) - table.p(n + 1) * table.q(n);
}

/// (-1)^{n+1} m^{b_1 + ... + b_n}, the value the determinant must equal.
inline Rational determinant_expected(const ConvergentTable& table, std::size_t n) {
    const Rational s = table.power_sum(n);
    return n % 2 == 1 ? s : -s;
}

/**
 * Whether the Moebius form at depth n with tail tau_m^n(x) gives back x.
 * Needs the exact iterate trail, so interval expansions are rejected.
 */
inline bool reconstruct_check(const Rational& x, const Expansion& expansion, std::size_t n) {
    if (!expansion.exact()) throw std::logic_error("remainder unavailable for interval input");
    if (n < 1 || n > expansion.digits.size()) throw std::out_of_range("depth outside expansion");
    const ConvergentTable table(expansion.digits, expansion.base, n);
    return moebius_with_tail(table, n, expansion.iterate(n)) == x;
}

}  // namespace mcf
