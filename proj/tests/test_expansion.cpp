#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "mcf/convergents.hpp"
#include "mcf/expansion.hpp"
#include "oracle.hpp"

using namespace mcf;

namespace {

std::vector<long> as_long(const DigitList& d) {
    std::vector<long> out;
    for (auto v : d) out.push_back(v.value());
    return out;
}

mpq_class q_of(const Rational& r) { return r.mpq(); }

}  // namespace

TEST(Digit, RejectsBelowMinusOne) {
    EXPECT_THROW(Digit(-2), DomainError);
    EXPECT_EQ(Digit(-1).value(), -1);
}

TEST(DigitB1, Examples) {
    EXPECT_EQ(digit_b1(make_rational(1, 3), Base(2)).value(), 1);
    EXPECT_EQ(digit_b1(make_rational(1, 4), Base(2)).value(), 2);
    EXPECT_EQ(digit_b1(make_rational(3, 2), Base(3)).value(), -1);
}

TEST(DigitB1, ZeroHasInfiniteDigit) { EXPECT_THROW(digit_b1(Rational(0), Base(2)), InfiniteDigit); }

TEST(DigitB1, OutsideDomain) {
    EXPECT_THROW(digit_b1(make_rational(-1, 2), Base(2)), DomainError);
    EXPECT_THROW(digit_b1(make_rational(5, 2), Base(2)), DomainError);
}

TEST(DigitB1, MatchesScanOracle) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> base(2, 10), num(1, 2000), den(1, 2000), shift(0, 120);
    for (int i = 0; i < 1500; ++i) {
        const long m = base(rng);
        // Spread the magnitudes so large digits occur too.
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        x /= oracle::qpow(m, shift(rng) / 4);
        x.canonicalize();
        if (x > m) continue;
        const Rational r = Rational::from_mpq(x);
        EXPECT_EQ(digit_b1(r, Base(m)).value(), oracle::digit(x, m)) << r.str() << " base " << m;
    }
}

TEST(DigitB1, ExactPowersUseClosedRightEndpoint) {
    for (long m = 2; m <= 7; ++m)
        for (long k = 0; k <= 30; ++k) EXPECT_EQ(digit_b1(base_pow(Base(m), -k), Base(m)).value(), k);
}

TEST(TauStep, Examples) {
    auto [b1, x1] = tau_step(make_rational(1, 3), Base(2));
    EXPECT_EQ(b1.value(), 1);
    EXPECT_EQ(x1, make_rational(1, 2));
    // The floating-point reading of the same map gives 2^{log2 3 - 1} - 1 = 0.5.
    const double theta = std::log2(3.0);
    EXPECT_NEAR(std::pow(2.0, theta - std::floor(theta)) - 1.0, x1.to_double(), 1e-12);

    auto [b2, x2] = tau_step(make_rational(1, 2), Base(2));
    EXPECT_EQ(b2.value(), 1);
    EXPECT_TRUE(x2.is_zero());

    auto [b3, x3] = tau_step(make_rational(2, 5), Base(3));
    EXPECT_EQ(b3.value(), 0);
    EXPECT_EQ(x3, make_rational(3, 2));
}

TEST(TauStep, ReconstructsAndMatchesDirectFormula) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> base(2, 12), num(1, 100000), den(1, 100000);
    for (int i = 0; i < 5000; ++i) {
        const long m = base(rng);
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        if (x > m) continue;
        auto [b, next] = tau_step(Rational::from_mpq(x), Base(m));
        mpq_class direct = oracle::qpow(m, -b.value()) / x - 1;
        direct.canonicalize();
        EXPECT_EQ(q_of(next), direct);
        // Stored form is canonical.
        EXPECT_EQ(gcd(next.num(), next.den()), 1);
        EXPECT_GT(next.den(), 0);
        mpq_class back = oracle::qpow(m, -b.value()) / (1 + direct);
        back.canonicalize();
        EXPECT_EQ(back, x);
        EXPECT_GE(next.sign(), 0);
        EXPECT_LT(next, Rational(m - 1) + (x > m - 1 ? Rational(1) : Rational(0)));
    }
}

TEST(Expand, Examples) {
    const Expansion a = expand(make_rational(7, 11), Base(2), 100);
    EXPECT_EQ(as_long(a.digits), (std::vector<long>{0, 0, 0, 1, 1}));
    EXPECT_TRUE(a.terminated);
    EXPECT_EQ(eval_finite(a.digits, Base(2)), make_rational(7, 11));
    // Hand iteration 7/11 -> 4/7 -> 3/4 -> 1/3 -> 1/2 -> 0.
    const std::vector<Rational> trail{make_rational(7, 11), make_rational(4, 7), make_rational(3, 4),
                                      make_rational(1, 3), make_rational(1, 2), Rational(0)};
    EXPECT_EQ(a.iterates, trail);

    const Expansion b = expand(make_rational(1, 4), Base(2), 100);
    EXPECT_EQ(as_long(b.digits), (std::vector<long>{2}));
    EXPECT_TRUE(b.terminated);

    const Expansion c = expand(make_rational(3, 2), Base(3), 100);
    EXPECT_EQ(as_long(c.digits), (std::vector<long>{-1, 0}));
    EXPECT_TRUE(c.terminated);
}

TEST(Expand, ZeroIsEmptyAndTerminated) {
    const Expansion e = expand(Rational(0), Base(2));
    EXPECT_TRUE(e.digits.empty());
    EXPECT_TRUE(e.terminated);
}

TEST(Expand, OutsideDomainThrows) {
    EXPECT_THROW(expand(make_rational(-1, 3), Base(2)), DomainError);
    EXPECT_THROW(expand(Rational(4), Base(3)), DomainError);
    EXPECT_THROW(expand(Interval(Rational(0), Rational(4), 32), Base(3)), DomainError);
}

TEST(Expand, SqrtTwoAt256BitsGivesFortyDigits) {
    const Expansion e = expand(interval_from_sqrt(BigInt(2), 256), Base(2), 40);
    ASSERT_EQ(e.digits.size(), 40u);
    EXPECT_FALSE(e.terminated);
    // Both endpoints of a much tighter enclosure expand to the same prefix.
    const Interval tight = interval_from_sqrt(BigInt(2), 1024);
    const auto lo = oracle::digits_of(tight.lo().mpq(), 2, 40), hi = oracle::digits_of(tight.hi().mpq(), 2, 40);
    EXPECT_EQ(lo, hi);
    EXPECT_EQ(as_long(e.digits), lo);
}

TEST(Expand, LowPrecisionExhaustsWithPrefix) {
    try {
        (void)expand(interval_from_sqrt(BigInt(2), 16), Base(2), 1000);
        FAIL() << "expected PrecisionExhausted";
    } catch (const PrecisionExhausted& ex) {
        EXPECT_GT(ex.digits_emitted(), 0u);
        EXPECT_LT(ex.digits_emitted(), 1000u);
        const auto truth = oracle::digits_of(interval_from_sqrt(BigInt(2), 1024).lo().mpq(), 2, ex.digits_emitted());
        EXPECT_EQ(as_long(ex.partial().digits), truth);
    }
}

TEST(Expand, RoundTripOnSmallGrid) {
    for (long m : {2L, 3L})
        for (long q = 1; q <= 40; ++q)
            for (long p = 1; p <= (m - 1) * q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                const Rational x = make_rational(p, q);
                const Expansion e = expand(x, Base(m));
                ASSERT_TRUE(e.terminated) << x.str() << " base " << m;
                EXPECT_EQ(eval_finite(e.digits, Base(m)), x);
                EXPECT_EQ(as_long(e.digits), oracle::digits_of(x.mpq(), m, 5000));
            }
}

TEST(Expand, ReconstructionStepAndDomainAlongTrail) {
    for (long m : {2L, 3L, 5L, 10L})
        for (long q = 1; q <= 25; ++q)
            for (long p = 1; p <= (m - 1) * q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                const Expansion e = expand(make_rational(p, q), Base(m), 300);
                for (std::size_t n = 0; n < e.digits.size(); ++n) {
                    const Rational& cur = e.iterates[n];
                    const Rational& next = e.iterates[n + 1];
                    EXPECT_EQ(cur, base_pow(Base(m), -e.digits[n].value()) / (Rational(1) + next));
                    EXPECT_GE(next.sign(), 0);
                    EXPECT_LT(next, Rational(m - 1));
                    EXPECT_GE(e.digits[n].value(), -1);
                }
                if (!e.terminated) {
                    EXPECT_GT(e.iterates.back().sign(), 0);
                    EXPECT_TRUE(e.rational_cap_hit());
                }
            }
}

TEST(Expand, PrefixStability) {
    for (const auto& [p, q, m] : {std::tuple{11L, 3L, 5L}, std::tuple{1L, 3L, 10L}, std::tuple{7L, 9L, 5L}}) {
        const Rational x = make_rational(p, q);
        for (std::size_t k : {1u, 5u, 40u, 200u}) {
            const Expansion a = expand(x, Base(m), k), b = expand(x, Base(m), k + 1);
            ASSERT_LE(a.digits.size(), b.digits.size());
            EXPECT_TRUE(std::equal(a.digits.begin(), a.digits.end(), b.digits.begin()));
        }
        const Expansion i = expand(interval_from_sqrt(BigInt(3), 200), Base(m), 20);
        const Expansion j = expand(interval_from_sqrt(BigInt(3), 200), Base(m), 21);
        EXPECT_TRUE(std::equal(i.digits.begin(), i.digits.end(), j.digits.begin()));
    }
}

TEST(Expand, DegenerateIntervalMatchesExact) {
    for (long m : {2L, 3L, 5L})
        for (long q = 1; q <= 30; ++q)
            for (long p = 1; p <= (m - 1) * q; p += 3) {
                if (std::gcd(p, q) != 1) continue;
                const Rational x = make_rational(p, q);
                const Expansion exact = expand(x, Base(m), 200);
                const Expansion approx = expand(Interval::point(x, 64), Base(m), 200);
                EXPECT_EQ(approx.digits, exact.digits);
                EXPECT_EQ(approx.terminated, exact.terminated);
            }
}

TEST(Expand, RationalCapHitIsReported) {
    // 11/3 in base 5 does not reach remainder 0.
    const Expansion e = expand(make_rational(11, 3), Base(5));
    EXPECT_EQ(e.digits.size(), default_max_digits);
    EXPECT_FALSE(e.terminated);
    EXPECT_TRUE(e.rational_cap_hit());
}

TEST(Expand, InputUpToBaseIsAccepted) {
    const Expansion e = expand(interval_from_sqrt(BigInt(2), 256), Base(2), 1);
    EXPECT_EQ(e.digits.front().value(), -1);
    const Expansion top = expand(Rational(3), Base(3));
    EXPECT_EQ(as_long(top.digits), (std::vector<long>{-1}));
    EXPECT_TRUE(top.terminated);
}
