#include <gtest/gtest.h>

#include <random>

#include "mcf/convergents.hpp"
#include "oracle.hpp"

using namespace mcf;

namespace {

DigitList to_digits(const std::vector<long>& v) {
    DigitList d;
    for (long b : v) d.emplace_back(b);
    return d;
}

mpq_class q_of(const Rational& r) { return r.mpq(); }

}  // namespace

TEST(Convergents, BaseTwoOnes) {
    const ConvergentTable t(to_digits({1, 1}), Base(2));
    EXPECT_EQ(t.p(0), Rational(0));
    EXPECT_EQ(t.p(1), Rational(1));
    EXPECT_EQ(t.p(2), Rational(2));
    EXPECT_EQ(t.q(0), Rational(1));
    EXPECT_EQ(t.q(1), Rational(2));
    EXPECT_EQ(t.q(2), Rational(6));
    EXPECT_EQ(t.convergent(2), make_rational(1, 3));
}

TEST(Convergents, NegativeDigitGivesFractionalQ) {
    const ConvergentTable t(to_digits({-1, 0}), Base(3));
    EXPECT_EQ(t.q(0), Rational(1));
    EXPECT_EQ(t.q(1), make_rational(1, 3));
    EXPECT_EQ(t.q(2), make_rational(2, 3));
    EXPECT_EQ(t.p(2), Rational(1));
    EXPECT_EQ(t.convergent(2), make_rational(3, 2));
}

TEST(Convergents, RejectsEmptyAndOverlongRequests) {
    EXPECT_THROW(ConvergentTable(DigitList{}, Base(2)), std::invalid_argument);
    EXPECT_THROW(ConvergentTable(to_digits({1}), Base(2), 2), std::out_of_range);
    ConvergentTable t(to_digits({1}), Base(2));
    EXPECT_THROW(t.extend_one(), std::out_of_range);
}

TEST(EvalFinite, Examples) {
    EXPECT_EQ(eval_finite(to_digits({0, 0, 0, 1, 1}), Base(2)), make_rational(7, 11));
    EXPECT_EQ(eval_finite(to_digits({2}), Base(2)), make_rational(1, 4));
    EXPECT_EQ(eval_finite(to_digits({-1, 0}), Base(3)), make_rational(3, 2));
    EXPECT_EQ(eval_finite(to_digits({0, -1, 0}), Base(3)), make_rational(2, 5));
    EXPECT_THROW(eval_finite(DigitList{}, Base(2)), std::invalid_argument);
}

TEST(Moebius, SevenElevensAtDepthOne) {
    const ConvergentTable t(to_digits({0, 0, 0, 1, 1}), Base(2));
    EXPECT_EQ(moebius_with_tail(t, 1, make_rational(4, 7)), make_rational(7, 11));
    EXPECT_THROW(moebius_with_tail(t, 1, make_rational(-1, 2)), DomainError);
    EXPECT_THROW(moebius_with_tail(t, 0, Rational(0)), std::out_of_range);
}

TEST(ReconstructCheck, TwoFifthsBaseThree) {
    const Rational x = make_rational(2, 5);
    const Expansion e = expand(x, Base(3));
    for (std::size_t n = 1; n <= e.digits.size(); ++n) EXPECT_TRUE(reconstruct_check(x, e, n));
    EXPECT_FALSE(reconstruct_check(make_rational(3, 5), e, 2));
    EXPECT_THROW(reconstruct_check(x, e, 0), std::out_of_range);
}

TEST(Determinant, Examples) {
    const ConvergentTable a(to_digits({1, 1}), Base(2));
    EXPECT_EQ(determinant(a, 1), Rational(2));
    EXPECT_EQ(determinant(a, 0), Rational(-1));
    const ConvergentTable b(to_digits({0, 0, 0, 1, 1}), Base(2));
    EXPECT_EQ(determinant(b, 1), Rational(1));
    const ConvergentTable c(to_digits({-1, 0}), Base(3));
    EXPECT_EQ(determinant(c, 1), make_rational(1, 3));
    EXPECT_THROW(determinant(c, 2), std::out_of_range);
}

TEST(Convergents, MatchOracleRecurrence) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const long m = std::array<long, 3>{2, 3, 10}[i % 3];
        const auto raw = oracle::random_digits(rng, 30);
        const ConvergentTable t(to_digits(raw), Base(m));
        const oracle::Pq ref = oracle::convergents(raw, m);
        for (std::size_t n = 0; n <= raw.size(); ++n) {
            ASSERT_EQ(q_of(t.p(n)), ref.p[n]);
            ASSERT_EQ(q_of(t.q(n)), ref.q[n]);
        }
        for (std::size_t n = 0; n + 1 <= raw.size(); ++n) {
            // p_n q_{n+1} - p_{n+1} q_n = (-1)^{n+1} m^{b_1+...+b_n}
            long sum = 0;
            for (std::size_t k = 0; k < n; ++k) sum += raw[k];
            mpq_class expect = oracle::qpow(m, sum);
            if (n % 2 == 0) expect = -expect;
            ASSERT_EQ(q_of(determinant(t, n)), expect);
            ASSERT_EQ(determinant(t, n), determinant_expected(t, n));
        }
        mpq_class omega = ref.p.back() / ref.q.back();
        omega.canonicalize();
        ASSERT_EQ(q_of(t.convergent(raw.size())), omega);
        ASSERT_EQ(q_of(eval_finite(to_digits(raw), Base(m))), oracle::nested(raw, m));
    }
}

TEST(Moebius, MatchesNestedEvaluationWithTail) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(0, 50), den(1, 50);
    for (int i = 0; i < 2000; ++i) {
        const long m = 2 + i % 9;
        const auto raw = oracle::random_digits(rng, 12);
        const Rational tail = make_rational(num(rng), den(rng));
        const ConvergentTable t(to_digits(raw), Base(m));
        const Rational via_table = moebius_with_tail(t, raw.size(), tail);
        EXPECT_EQ(via_table, eval_with_tail(to_digits(raw), Base(m), tail));
        EXPECT_EQ(q_of(via_table), oracle::nested(raw, m, tail.mpq()));
    }
}
