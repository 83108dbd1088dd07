#pragma once

/**
 * @file audit.hpp
 * @brief Sweeps identity and inequality claims over grids of inputs.
 *
 * Rational inputs run through a streaming verifier that walks the
 * expansion once and checks every claim at every depth using only integer
 * cross-multiplications on the scaled convergents (see convergents.hpp).
 * No fraction with a large denominator is ever reduced, which keeps the
 * cost per depth linear in the size of q_n. The Rational-valued operations
 * in analysis.hpp compute the same quantities the slow way and serve as the
 * reference in the unit tests.
 *
 * Interval inputs are checked on their certified digit prefix: the claims
 * that depend only on the digits plus the convergence ceiling.
 */

#include <algorithm>
#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mcf/analysis.hpp"
#include "mcf/base.hpp"
#include "mcf/convergents.hpp"
#include "mcf/expansion.hpp"
#include "mcf/fibonacci.hpp"
#include "mcf/interval.hpp"
#include "mcf/random.hpp"
#include "mcf/rational.hpp"

namespace mcf {

enum class Claim : std::size_t {
    round_trip,
    determinant_identity,
    tail_reconstruction,
    error_formula,
    lower_bound_loose,
    lower_bound_tight,
    upper_bound_tight,
    upper_bound_fib,
    convergence_ceiling,
    power_floor,
    fibonacci_floor,
    numerator_fibonacci_floor,
};

inline constexpr std::size_t claim_count = 12;

struct ClaimInfo {
    const char* id;
    const char* statement;
    /// Empty when the claim is expected to hold unconditionally.
    const char* condition;
    /// A violation of a gating claim is a regression in this library.
    bool gating;
};

inline const ClaimInfo& claim_info(Claim c) {
    static const std::array<ClaimInfo, claim_count> table{{
        {"round-trip", "a terminated expansion evaluates back to its input", "", true},
        {"determinant-identity", "p_n q_{n+1} - p_{n+1} q_n = (-1)^{n+1} m^{b_1+...+b_n}", "", true},
        {"tail-reconstruction",
         "x = (p_n + t m^{b_n} p_{n-1}) / (q_n + t m^{b_n} q_{n-1}) with t = tau_m^n(x)", "", true},
        {"error-formula",
         "x - omega_n = (-1)^n t m^{b_1+...+b_n} / (q_n (q_n + t m^{b_n} q_{n-1})), t = tau_m^n(x)", "",
         true},
        {"lower-bound-loose", "bound with (m-1)^{n+1} is at most the bound with (m-1)", "", true},
        {"lower-bound-tight",
         "m^{b_1+...+b_n} / (q_n (q_{n+1} + (m-1) m^{b_{n+1}} q_n)) < |x - omega_n|", "", true},
        {"upper-bound-tight", "|x - omega_n| <= m^{b_1+...+b_n} / (q_n q_{n+1})", "", true},
        {"upper-bound-fibonacci", "|x - omega_n| < 1 / max(F_n, m^{b_1+...+b_n})",
         "no digit -1 among b_1..b_n", true},
        {"convergence-ceiling", "|x - omega_n| <= 1 / q_{n+1}", "", true},
        {"power-floor", "q_n >= m^{b_1+...+b_n}", "", true},
        {"fibonacci-floor", "q_n >= F_n for n >= 2", "no digit -1 among b_1..b_n", true},
        {"numerator-fibonacci-floor", "p_{n+1} >= F_{n+1} for n >= 2", "no digit -1 among b_1..b_{n+1}",
         false},
    }};
    return table[static_cast<std::size_t>(c)];
}

enum class ClaimStatus { verified, violated, conditionally_verified };

inline const char* to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::verified: return "verified";
        case ClaimStatus::violated: return "violated";
        case ClaimStatus::conditionally_verified: return "conditionally-verified";
    }
    return "?";
}

/// Enough to replay a failing check: base, input, depth and digit prefix.
struct Witness {
    std::int64_t base;
    std::string input;
    std::size_t depth;
    std::vector<std::int64_t> digits;
    std::string detail;
};

struct ClaimEntry {
    Claim claim;
    std::int64_t base;
    std::uint64_t checked = 0;
    /// Violations where the claim's condition held (or it has none).
    std::uint64_t violations = 0;
    /// Violations where the condition failed.
    std::uint64_t conditional_violations = 0;
    std::vector<Witness> witnesses;

    const ClaimInfo& info() const { return claim_info(claim); }

    ClaimStatus status() const {
        if (violations > 0) return ClaimStatus::violated;
        if (conditional_violations > 0) return ClaimStatus::conditionally_verified;
        return ClaimStatus::verified;
    }
};

/// A rational input whose expansion did not reach remainder 0.
struct NonTermination {
    std::int64_t base;
    std::string input;
    std::size_t digits_emitted;
    /// Set when the remainder sequence provably repeats.
    std::optional<std::size_t> preperiod;
    std::optional<std::size_t> period;
};

struct AuditReport {
    std::vector<ClaimEntry> entries;
    std::vector<NonTermination> non_terminating;
    std::uint64_t inputs_checked = 0;
    std::uint64_t inputs_skipped = 0;
    std::uint64_t precision_exhausted = 0;

    bool empty() const { return entries.empty(); }

    const ClaimEntry* find(Claim c, std::int64_t base) const {
        for (const auto& e : entries)
            if (e.claim == c && e.base == base) return &e;
        return nullptr;
    }

    /// Any gating claim violated with its condition satisfied.
    bool gating_violation() const {
        return std::any_of(entries.begin(), entries.end(), [](const ClaimEntry& e) {
            return e.info().gating && e.status() == ClaimStatus::violated;
        });
    }
};

/**
 * Eventual period of the remainder sequence of x, found with Brent's
 * cycle search over at most max_steps steps. Empty when x terminates or no
 * repeat shows up in time.
 */
struct Period {
    std::size_t preperiod;
    std::size_t length;
};

inline std::optional<Period> detect_period(const Rational& x, Base m, std::size_t max_steps) {
    auto step = [m](const Rational& r) { return tau_step(r, m).second; };

    // Brent: find the cycle length first.
    std::size_t power = 1, length = 1, steps = 0;
    Rational saved = x;
    Rational probe = x;
    if (probe.is_zero()) return std::nullopt;
    probe = step(probe);
    ++steps;
    while (probe != saved) {
        if (probe.is_zero() || steps >= max_steps) return std::nullopt;
        if (power == length) {
            saved = probe;
            power *= 2;
            length = 0;
        }
        probe = step(probe);
        ++steps;
        ++length;
    }

    // Two pointers `length` apart meet at the start of the cycle.
    Rational slow = x, fast = x;
    for (std::size_t i = 0; i < length; ++i) fast = step(fast);
    std::size_t mu = 0;
    while (slow != fast) {
        slow = step(slow);
        fast = step(fast);
        ++mu;
    }
    return Period{mu, length};
}

struct AuditOptions {
    std::size_t max_digits = default_max_digits;
    std::size_t max_witnesses = 20;
    /// Worker threads; 0 picks hardware concurrency.
    unsigned threads = 0;
    /// Claims to check; the rest are skipped and report checked = 0.
    std::bitset<claim_count> claims = std::bitset<claim_count>().set();

    bool wants(Claim c) const { return claims.test(static_cast<std::size_t>(c)); }
};

namespace detail {

struct Tally {
    std::array<ClaimEntry, claim_count> entries;
    std::vector<NonTermination> non_terminating;
    std::uint64_t inputs_checked = 0;
    std::uint64_t inputs_skipped = 0;
    std::uint64_t precision_exhausted = 0;
    std::size_t max_witnesses;

    Tally(std::int64_t base, std::size_t witness_cap) : max_witnesses(witness_cap) {
        for (std::size_t i = 0; i < claim_count; ++i) entries[i] = ClaimEntry{static_cast<Claim>(i), base, 0, 0, 0, {}};
    }

    // `condition` is whether the claim's hypothesis holds at this point.
    template <typename MakeWitness>
    void record(Claim c, bool ok, bool condition, MakeWitness&& make) {
        auto& e = entries[static_cast<std::size_t>(c)];
        ++e.checked;
        if (ok) return;
        if (condition) ++e.violations;
        else ++e.conditional_violations;
        if (e.witnesses.size() < max_witnesses) e.witnesses.push_back(make());
    }

    void merge(Tally&& o) {
        for (std::size_t i = 0; i < claim_count; ++i) {
            auto& dst = entries[i];
            auto& src = o.entries[i];
            dst.checked += src.checked;
            dst.violations += src.violations;
            dst.conditional_violations += src.conditional_violations;
            for (auto& w : src.witnesses) {
                if (dst.witnesses.size() >= max_witnesses) break;
                dst.witnesses.push_back(std::move(w));
            }
        }
        for (auto& f : o.non_terminating) non_terminating.push_back(std::move(f));
        inputs_checked += o.inputs_checked;
        inputs_skipped += o.inputs_skipped;
        precision_exhausted += o.precision_exhausted;
    }
};

// Scaled row as in ConvergentTable plus the running quantities the checks need.
struct StreamRow {
    BigInt P, Q;
    BigInt scale_pow;    // H_n = m^{s_n}
    BigInt sum_pow;      // G_n = m^{S_n + s_n}, an integer since S_n + s_n >= 0
    BigInt gh;           // G_n H_n = m^{S_n + 2 s_n}
    BigInt error_num;    // e_n = X Q_n - Y P_n
    BigInt fib;          // F_n
    Rational remainder;  // tau_m^n(x)
    BigInt lead;         // m^{c(b_n)}
    std::int64_t lead_exp = 0;
    std::int64_t scale = 0;
};

inline std::int64_t bits_of(const BigInt& v) {
    return static_cast<std::int64_t>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

/**
 * sign(prod(lhs) - prod(rhs)) for non-negative operands. A product of k
 * factors with bit lengths l_i has between sum(l_i) - k + 1 and sum(l_i)
 * bits, which settles most comparisons without multiplying.
 */
inline int cmp_prod(std::initializer_list<const BigInt*> lhs, std::initializer_list<const BigInt*> rhs,
                    BigInt& scratch_l, BigInt& scratch_r) {
    std::int64_t hl = 0, hr = 0;
    bool zl = false, zr = false;
    for (auto* v : lhs) { zl = zl || sgn(*v) == 0; hl += bits_of(*v); }
    for (auto* v : rhs) { zr = zr || sgn(*v) == 0; hr += bits_of(*v); }
    if (zl || zr) return zl && zr ? 0 : zl ? -1 : 1;
    const std::int64_t ll = hl - static_cast<std::int64_t>(lhs.size()) + 1;
    const std::int64_t lr = hr - static_cast<std::int64_t>(rhs.size()) + 1;
    if (ll > hr) return 1;
    if (hl < lr) return -1;
    auto product = [](std::initializer_list<const BigInt*> f, BigInt& out) {
        auto it = f.begin();
        out = **it;
        for (++it; it != f.end(); ++it) mpz_mul(out.get_mpz_t(), out.get_mpz_t(), (*it)->get_mpz_t());
    };
    product(lhs, scratch_l);
    product(rhs, scratch_r);
    return cmp(scratch_l, scratch_r);
}

// out = v * m^e, with e small.
inline void mul_power(BigInt& out, const BigInt& v, std::int64_t m, std::int64_t e, BigInt& scratch) {
    if (e == 0) {
        out = v;
    } else if (e == 1) {
        mpz_mul_ui(out.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
    } else {
        mpz_ui_pow_ui(scratch.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(e));
        mpz_mul(out.get_mpz_t(), v.get_mpz_t(), scratch.get_mpz_t());
    }
}

/**
 * Streams the expansion of x once and records every claim at every depth.
 *
 * With x = X/Y, t = tau^n = a/c, E_n = m^{c(b_n)} and the scaled rows, the
 * claims reduce to integer relations:
 *
 *   tail reconstruction   X (c Q_n + a E_n Q_{n-1}) = Y (c P_n + a E_n P_{n-1}),
 *                         which distributes to c e_n + a E_n e_{n-1} = 0
 *   error formula         e_n (c Q_n + a E_n Q_{n-1}) = (-1)^n a m^{S_n + 2 s_n} Y
 *   determinant           P_k Q_{k+1} - P_{k+1} Q_k = (-1)^{k+1} m^{S_k + s_k + s_{k+1}},
 *                         checked as Y times itself: e_{k+1} Q_k - e_k Q_{k+1}
 *
 * and the inequalities compare |e_k| / (Y Q_k) against the bounds with
 * their denominators cleared.
 */
inline void sweep_rational(const Rational& x, Base m, const AuditOptions& opt, Tally& tally) {
    const std::int64_t mv = m.value();
    const BigInt& X = x.num();
    const BigInt& Y = x.den();
    const std::string input = x.str();
    std::vector<std::int64_t> digits;

    // Digits b_1..b_{depth + extra}; checks at depth k that use b_{k+1} pass extra = 1.
    auto witness = [&](std::size_t depth, const char* detail, std::size_t extra = 0) {
        return [&, depth, detail, extra] {
            const std::size_t upto = std::min(digits.size(), depth + extra);
            return Witness{mv, input, depth, {digits.begin(), digits.begin() + upto}, detail};
        };
    };

    ++tally.inputs_checked;
    if (x.is_zero()) return;

    // Three rows rotate so their limb buffers are reused across depths.
    std::array<StreamRow, 3> store;
    StreamRow* older = &store[0];
    StreamRow* prev = &store[1];  // row 0
    StreamRow* row = &store[2];
    prev->P = 0;
    prev->Q = 1;
    prev->scale_pow = 1;
    prev->sum_pow = 1;
    prev->gh = 1;
    prev->error_num = X;
    prev->fib = 1;
    prev->remainder = x;
    prev->lead = 1;

    const auto mu = static_cast<unsigned long>(mv);
    // Round trip and tail reconstruction need only P, Q and e_n.
    auto light = std::bitset<claim_count>();
    light.set(static_cast<std::size_t>(Claim::round_trip));
    light.set(static_cast<std::size_t>(Claim::tail_reconstruction));
    const bool need_powers = (opt.claims & ~light).any();
    BigInt mm1_pow(mv - 1);  // (m-1)^{k+1} for the depth k being looked back at
    bool terminated = false;

    // Brent cycle search on the remainders.
    Rational saved = x;
    std::size_t power = 1, lam = 0;
    std::optional<std::size_t> period;

    BigInt t1, t2, a_lead, den, abs_err, mK_Y, lead_q, s1, s2, pw;
    for (std::size_t n = 1; n <= opt.max_digits; ++n) {
        auto [b, next] = tau_step(prev->remainder, m);
        digits.push_back(b.value());
        const bool neg = b.value() == -1;

        StreamRow& r = *row;
        const StreamRow& p = *prev;
        const StreamRow& o = *older;
        r.lead_exp = cleared_exponent(b);
        mpz_ui_pow_ui(r.lead.get_mpz_t(), mu, static_cast<unsigned long>(r.lead_exp));
        r.scale = p.scale + (neg ? 1 : 0);
        if (need_powers) {
            mul_power(r.scale_pow, p.scale_pow, mv, neg ? 1 : 0, pw);
            mul_power(r.sum_pow, p.sum_pow, mv, r.lead_exp, pw);
            mul_power(r.gh, p.gh, mv, r.lead_exp + (neg ? 1 : 0), pw);
        }
        if (n == 1) {
            r.P = neg ? mv : 1;
            r.Q = r.lead;
            r.fib = 1;
        } else {
            const std::int64_t lag_exp = p.lead_exp + (neg ? 1 : 0);
            mul_power(r.P, p.P, mv, r.lead_exp, pw);
            mul_power(t1, o.P, mv, lag_exp, pw);
            r.P += t1;
            mul_power(r.Q, p.Q, mv, r.lead_exp, pw);
            mul_power(t1, o.Q, mv, lag_exp, pw);
            r.Q += t1;
            mpz_add(r.fib.get_mpz_t(), p.fib.get_mpz_t(), o.fib.get_mpz_t());
        }
        mpz_mul(r.error_num.get_mpz_t(), X.get_mpz_t(), r.Q.get_mpz_t());
        mpz_submul(r.error_num.get_mpz_t(), Y.get_mpz_t(), r.P.get_mpz_t());
        r.remainder = std::move(next);

        // Depth-n checks.
        {
            const BigInt& a = r.remainder.num();
            const BigInt& c = r.remainder.den();
            mul_power(a_lead, a, mv, r.lead_exp, pw);

            if (opt.wants(Claim::tail_reconstruction)) {
                mpz_mul(t1.get_mpz_t(), c.get_mpz_t(), r.error_num.get_mpz_t());
                mpz_addmul(t1.get_mpz_t(), a_lead.get_mpz_t(), p.error_num.get_mpz_t());
                tally.record(Claim::tail_reconstruction, sgn(t1) == 0, true,
                             witness(n, "Moebius form with tail tau^n differs from x"));
            }

            if (opt.wants(Claim::error_formula)) {
                mpz_mul(den.get_mpz_t(), c.get_mpz_t(), r.Q.get_mpz_t());
                mpz_addmul(den.get_mpz_t(), a_lead.get_mpz_t(), p.Q.get_mpz_t());
                mpz_mul(t1.get_mpz_t(), r.error_num.get_mpz_t(), den.get_mpz_t());
                mpz_mul(t2.get_mpz_t(), a.get_mpz_t(), Y.get_mpz_t());
                mpz_mul(t2.get_mpz_t(), t2.get_mpz_t(), r.gh.get_mpz_t());
                if (n % 2 == 1) mpz_neg(t2.get_mpz_t(), t2.get_mpz_t());
                tally.record(Claim::error_formula, t1 == t2, true,
                             witness(n, "closed form differs from x - omega_n"));
            }

            if (opt.wants(Claim::power_floor))
                tally.record(Claim::power_floor, r.Q >= r.sum_pow, true, witness(n, "q_n < m^{S_n}"));
            if (n >= 2 && opt.wants(Claim::fibonacci_floor)) {
                const bool ok = cmp_prod({&r.Q}, {&r.fib, &r.scale_pow}, s1, s2) >= 0;
                tally.record(Claim::fibonacci_floor, ok, r.scale == 0, [&, n] {
                    auto w = witness(n, "")();
                    w.detail = "q_" + std::to_string(n) + " = " + Rational(r.Q, r.scale_pow).str() +
                               " < F_" + std::to_string(n) + " = " + r.fib.get_str();
                    return w;
                });
            }
        }

        // Depth k = n-1 checks that need row n.
        if (n >= 2 && need_powers) {
            const std::size_t k = n - 1;
            // m^{S_k + s_k + s_{k+1}} Y
            mul_power(mK_Y, p.gh, mv, neg ? 1 : 0, pw);
            mpz_mul(mK_Y.get_mpz_t(), mK_Y.get_mpz_t(), Y.get_mpz_t());

            if (opt.wants(Claim::determinant_identity)) {
                // Y (P_k Q_{k+1} - P_{k+1} Q_k) = e_{k+1} Q_k - e_k Q_{k+1}
                mpz_mul(t1.get_mpz_t(), r.error_num.get_mpz_t(), p.Q.get_mpz_t());
                mpz_submul(t1.get_mpz_t(), p.error_num.get_mpz_t(), r.Q.get_mpz_t());
                const bool det_ok = k % 2 == 0 ? mpz_cmpabs(t1.get_mpz_t(), mK_Y.get_mpz_t()) == 0 && sgn(t1) < 0
                                               : t1 == mK_Y;
                tally.record(Claim::determinant_identity, det_ok, true,
                             witness(k, "p_k q_{k+1} - p_{k+1} q_k mismatch", 1));
            }

            // tau^k > 0 here because digit k+1 exists.
            mpz_abs(abs_err.get_mpz_t(), p.error_num.get_mpz_t());
            mul_power(lead_q, p.Q, mv, r.lead_exp, pw);  // m^{b_{k+1}} q_k, scaled
            mpz_mul_ui(den.get_mpz_t(), lead_q.get_mpz_t(), mu - 1);
            den += r.Q;

            if (opt.wants(Claim::upper_bound_tight)) {
                tally.record(Claim::upper_bound_tight, cmp_prod({&abs_err, &r.Q}, {&mK_Y}, s1, s2) <= 0, true,
                             witness(k, "|x - omega_k| > m^{S_k}/(q_k q_{k+1})", 1));
            }
            if (opt.wants(Claim::lower_bound_tight)) {
                tally.record(Claim::lower_bound_tight, cmp_prod({&mK_Y}, {&abs_err, &den}, s1, s2) < 0, true,
                             witness(k, "|x - omega_k| <= tight lower bound", 1));
            }
            mpz_mul_ui(mm1_pow.get_mpz_t(), mm1_pow.get_mpz_t(), mu - 1);
            // Same numerator; compare the (m-1) factors multiplying m^{b_{k+1}} q_k >= 0.
            if (opt.wants(Claim::lower_bound_loose)) {
                tally.record(Claim::lower_bound_loose, sgn(lead_q) == 0 || mm1_pow >= mv - 1, true,
                             witness(k, "loose lower bound exceeds tight one", 1));
            }

            // |e_k| max(F_k H_k, G_k) < H_k Y Q_k, split into
            // |e_k| F_k < Y Q_k and |e_k| G_k < H_k Y Q_k.
            if (opt.wants(Claim::upper_bound_fib)) {
                const bool fib_ok = cmp_prod({&abs_err, &p.fib}, {&Y, &p.Q}, s1, s2) < 0 &&
                                    cmp_prod({&abs_err, &p.sum_pow}, {&p.scale_pow, &Y, &p.Q}, s1, s2) < 0;
                tally.record(Claim::upper_bound_fib, fib_ok, p.scale == 0,
                             witness(k, "|x - omega_k| >= 1/max(F_k, m^{S_k})", 1));
            }

            // |e_k| Q_{k+1} <= H_{k+1} Y Q_k
            if (opt.wants(Claim::convergence_ceiling)) {
                tally.record(Claim::convergence_ceiling,
                             cmp_prod({&abs_err, &r.Q}, {&r.scale_pow, &Y, &p.Q}, s1, s2) <= 0, true,
                             witness(k, "|x - omega_k| > 1/q_{k+1}", 1));
            }

            if (k >= 2 && opt.wants(Claim::numerator_fibonacci_floor)) {
                const bool ok = cmp_prod({&r.P}, {&r.fib, &r.scale_pow}, s1, s2) >= 0;
                tally.record(Claim::numerator_fibonacci_floor, ok, r.scale == 0, [&, k] {
                    auto w = witness(k, "", 1)();
                    w.detail = "p_" + std::to_string(k + 1) + " = " + Rational(r.P, r.scale_pow).str() +
                               " < F_" + std::to_string(k + 1) + " = " + r.fib.get_str();
                    return w;
                });
            }
        }

        StreamRow* spare = older;
        older = prev;
        prev = row;
        row = spare;

        if (prev->remainder.is_zero()) {
            terminated = true;
            break;
        }
        if (!period) {
            if (prev->remainder == saved) {
                period = lam + 1;
            } else if (++lam == power) {
                saved = prev->remainder;
                power *= 2;
                lam = 0;
            }
        }
    }

    if (terminated) {
        DigitList dl;
        dl.reserve(digits.size());
        for (auto d : digits) dl.emplace_back(d);
        if (opt.wants(Claim::round_trip))
            tally.record(Claim::round_trip, eval_finite(dl, m) == x, true,
                     witness(digits.size(), "eval_finite(digits) != x"));
        return;
    }

    NonTermination f{mv, input, digits.size(), std::nullopt, std::nullopt};
    if (period) {
        // Cycle length is known; recover where the cycle starts.
        if (const auto found = detect_period(x, m, digits.size() + 1)) {
            f.preperiod = found->preperiod;
            f.period = found->length;
        }
    }
    tally.non_terminating.push_back(std::move(f));
}

inline void sweep_interval(const Interval& x, Base m, const AuditOptions& opt, Tally& tally) {
    const std::int64_t mv = m.value();
    const std::string input = x.str();
    ++tally.inputs_checked;

    Expansion e = [&] {
        try {
            return expand(x, m, opt.max_digits);
        } catch (const PrecisionExhausted& ex) {
            ++tally.precision_exhausted;
            return ex.partial();
        }
    }();
    if (e.digits.empty()) return;

    const auto digits = digit_values(e.digits);
    // Digits b_1..b_{depth + extra}; checks at depth k that use b_{k+1} pass extra = 1.
    auto witness = [&](std::size_t depth, const char* detail, std::size_t extra = 0) {
        return [&, depth, detail, extra] {
            const std::size_t upto = std::min(digits.size(), depth + extra);
            return Witness{mv, input, depth, {digits.begin(), digits.begin() + upto}, detail};
        };
    };

    const ConvergentTable table(e.digits, m);
    std::int64_t scale = 0;
    for (std::size_t n = 1; n <= table.depth(); ++n) {
        scale = table.row(n).scale;
        const auto floors = q_floors(table, n);
        if (opt.wants(Claim::power_floor))
            tally.record(Claim::power_floor, floors.power_floor_holds, true, witness(n, "q_n < m^{S_n}"));
        if (n >= 2 && opt.wants(Claim::fibonacci_floor))
            tally.record(Claim::fibonacci_floor, floors.fib_floor_holds, scale == 0, witness(n, "q_n < F_n"));
        if (n + 1 <= table.depth()) {
            if (opt.wants(Claim::determinant_identity))
                tally.record(Claim::determinant_identity,
                             determinant(table, n) == determinant_expected(table, n), true,
                             witness(n, "determinant mismatch", 1));
            const auto err = detail::abs_distance(x, table.convergent(n));
            if (opt.wants(Claim::convergence_ceiling))
                tally.record(Claim::convergence_ceiling, err.hi() <= table.q(n + 1).reciprocal(), true,
                             witness(n, "|x - omega_n| enclosure exceeds 1/q_{n+1}", 1));
        }
    }
}

}  // namespace detail

/**
 * One entry per claim per base. Inputs outside [0, m] for a base are
 * skipped for that base and counted in inputs_skipped.
 */
inline AuditReport audit(const std::vector<NumberInput>& inputs, const std::vector<Base>& bases,
                         const AuditOptions& opt = {}) {
    AuditReport report;
    if (inputs.empty() || bases.empty()) return report;

    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, inputs.size()));

    for (const Base m : bases) {
        auto run_range = [&](std::size_t begin, std::size_t end, detail::Tally& tally) {
            for (std::size_t i = begin; i < end; ++i) {
                const auto& in = inputs[i];
                if (const auto* r = std::get_if<Rational>(&in)) {
                    if (r->sign() < 0 || *r > Rational(m.value())) {
                        ++tally.inputs_skipped;
                        continue;
                    }
                    detail::sweep_rational(*r, m, opt, tally);
                } else {
                    const auto& iv = std::get<Interval>(in);
                    if (iv.lo().sign() < 0 || iv.hi() > Rational(m.value())) {
                        ++tally.inputs_skipped;
                        continue;
                    }
                    detail::sweep_interval(iv, m, opt, tally);
                }
            }
        };

        // Contiguous chunks merged in chunk order keep witnesses deterministic.
        std::vector<detail::Tally> parts(threads, detail::Tally(m.value(), opt.max_witnesses));
        const std::size_t chunk = (inputs.size() + threads - 1) / threads;
        if (threads == 1) {
            run_range(0, inputs.size(), parts[0]);
        } else {
            std::vector<std::jthread> workers;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t begin = std::min(inputs.size(), t * chunk);
                const std::size_t end = std::min(inputs.size(), begin + chunk);
                workers.emplace_back([&, begin, end, t] { run_range(begin, end, parts[t]); });
            }
        }
        detail::Tally total(m.value(), opt.max_witnesses);
        for (auto& p : parts) total.merge(std::move(p));

        for (auto& e : total.entries) report.entries.push_back(std::move(e));
        for (auto& f : total.non_terminating) report.non_terminating.push_back(std::move(f));
        report.inputs_checked += total.inputs_checked;
        report.inputs_skipped += total.inputs_skipped;
        report.precision_exhausted += total.precision_exhausted;
    }
    return report;
}

/// Grid parameters for the default sweep.
struct AuditGrid {
    std::vector<std::int64_t> bases{2, 3, 5, 10};
    /// Every p/q in lowest terms with 1 <= q <= max_q and 0 < p/q <= max base - 1.
    std::int64_t max_q = 60;
    std::size_t random_count = 10000;
    std::int64_t random_max_q = 1000000;
    std::uint64_t seed = 1;
};

/**
 * Inputs for a grid: the exhaustive part followed by the random part
 * (uniform q in [1, random_max_q], then uniform p in [1, q (m_max - 1)]).
 */
inline std::vector<NumberInput> grid_inputs(const AuditGrid& grid) {
    std::vector<NumberInput> out;
    if (grid.bases.empty()) return out;
    const std::int64_t top = *std::max_element(grid.bases.begin(), grid.bases.end()) - 1;
    for (std::int64_t q = 1; q <= grid.max_q; ++q)
        for (std::int64_t p = 1; p <= q * top; ++p)
            if (std::gcd(p, q) == 1) out.emplace_back(make_rational(p, q));
    for (std::size_t i = 0; i < grid.random_count && grid.random_max_q >= 1; ++i) {
        auto rng = substream(grid.seed, 0, i);
        const auto q = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(grid.random_max_q))) + 1;
        const auto p = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q * top))) + 1;
        out.emplace_back(make_rational(p, q));
    }
    return out;
}

}  // namespace mcf
