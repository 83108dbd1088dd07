#pragma once

/**
 * @file baseline_stats.hpp
 * @brief Regular continued fractions and Monte Carlo digit statistics.
 *
 * The Gauss map x -> 1/x - floor(1/x) gives the regular continued fraction
 * [0; a_1, a_2, ...]. gauss_kuzmin_empirical estimates the distribution of
 * its n-th iterate over uniform samples and reports it next to the limit
 * log2(z + 1). mcf_digit_histogram counts base-m digits over random inputs;
 * there is no reference distribution to compare it with.
 *
 * Sample i always uses substream(seed, stream, i), so results do not depend
 * on the number of worker threads.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mcf/base.hpp"
#include "mcf/expansion.hpp"
#include "mcf/random.hpp"
#include "mcf/rational.hpp"

namespace mcf {

struct RcfExpansion {
    std::vector<BigInt> quotients;  // a_1, a_2, ...; all >= 1
    bool terminated = false;
    Rational remainder;
};

/// One step of the Gauss map; 0 maps to 0.
inline Rational gauss_map(const Rational& x) {
    if (x.is_zero()) return x;
    const Rational inv = x.reciprocal();
    return inv - Rational(floor(inv));
}

/// Partial quotients of x in (0, 1) by Euclid's algorithm, at most max_terms of them.
inline RcfExpansion rcf_expand(const Rational& x, std::size_t max_terms = default_max_digits) {
    if (x.sign() <= 0 || x >= Rational(1)) throw DomainError("rcf_expand needs 0 < x < 1, got " + x.str());
    RcfExpansion out;
    BigInt p = x.num(), q = x.den();
    while (p != 0 && out.quotients.size() < max_terms) {
        BigInt a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        out.quotients.push_back(std::move(a));
        q = std::move(p);
        p = std::move(r);
    }
    out.terminated = p == 0;
    out.remainder = out.terminated ? Rational(0) : Rational(p, q);
    return out;
}

/// [0; a_1, ..., a_k] evaluated bottom-up.
inline Rational rcf_eval(const std::vector<BigInt>& quotients) {
    Rational acc(0);
    for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) acc = (Rational(*it) + acc).reciprocal();
    return acc;
}

struct GaussKuzminRow {
    Rational z;
    Rational empirical;  // count / samples
    double reference;    // log2(z + 1)
};

namespace detail {

inline unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(t, jobs)));
}

// Runs body(begin, end, slot) over contiguous chunks of [0, jobs).
template <typename Body>
void parallel_chunks(std::size_t jobs, unsigned threads, Body&& body) {
    const std::size_t chunk = (jobs + threads - 1) / threads;
    if (threads == 1) {
        body(std::size_t{0}, jobs, 0u);
        return;
    }
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(jobs, t * chunk);
        const std::size_t end = std::min(jobs, begin + chunk);
        workers.emplace_back([&body, begin, end, t] { body(begin, end, t); });
    }
}

inline Rational count_ratio(std::uint64_t count, std::uint64_t total) {
    return Rational(BigInt(static_cast<unsigned long>(count)), BigInt(static_cast<unsigned long>(total)));
}

inline constexpr std::uint64_t gauss_kuzmin_stream = 1;
inline constexpr std::uint64_t digit_histogram_stream = 2;

}  // namespace detail

/**
 * Fraction of samples x with G^n(x) <= z for each z, where G is the Gauss
 * map and x = k / 2^64 is uniform on the dyadic grid in (0, 1). Iterates
 * are exact.
 */
inline std::vector<GaussKuzminRow> gauss_kuzmin_empirical(std::size_t samples, std::size_t n,
                                                          const std::vector<Rational>& z_grid,
                                                          std::uint64_t seed, unsigned threads = 0) {
    if (samples < 1) throw DomainError("samples must be >= 1");
    for (const auto& z : z_grid)
        if (z.sign() < 0 || z > Rational(1)) throw DomainError("z outside [0, 1]: " + z.str());

    const unsigned workers = detail::worker_count(threads, samples);
    std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(z_grid.size(), 0));
    detail::parallel_chunks(samples, workers, [&](std::size_t begin, std::size_t end, unsigned slot) {
        auto& local = counts[slot];
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = substream(seed, detail::gauss_kuzmin_stream, i);
            Rational x = uniform_unit_dyadic(rng);
            for (std::size_t step = 0; step < n && !x.is_zero(); ++step) x = gauss_map(x);
            for (std::size_t j = 0; j < z_grid.size(); ++j)
                if (x <= z_grid[j]) ++local[j];
        }
    });

    std::vector<GaussKuzminRow> rows;
    rows.reserve(z_grid.size());
    for (std::size_t j = 0; j < z_grid.size(); ++j) {
        std::uint64_t total = 0;
        for (const auto& c : counts) total += c[j];
        const auto& z = z_grid[j];
        rows.push_back({z, detail::count_ratio(total, samples), std::log2(z.to_double() + 1.0)});
    }
    return rows;
}

/// The grid {1/10, 2/10, ..., 9/10}.
inline std::vector<Rational> default_z_grid() {
    std::vector<Rational> z;
    for (long k = 1; k <= 9; ++k) z.push_back(make_rational(k, 10));
    return z;
}

struct HistogramResult {
    std::int64_t base = 2;
    std::size_t samples = 0;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    std::int64_t digit_cap = 0;
    /// counts[i] is the number of digits equal to i - 1, for -1 <= digit <= digit_cap.
    std::vector<std::uint64_t> counts;
    /// Digits above digit_cap.
    std::uint64_t overflow = 0;
    /// All digits counted; below samples * depth when some expansions terminate early.
    std::uint64_t total = 0;

    Rational frequency(std::int64_t digit) const {
        return detail::count_ratio(counts.at(static_cast<std::size_t>(digit + 1)), total);
    }
    Rational overflow_frequency() const {
        return detail::count_ratio(overflow, total);
    }
};

inline constexpr const char* histogram_banner =
    "exploratory digit histogram: no reference values exist for this distribution";

/// Denominator of the histogram samples, the prime 2^61 - 1.
inline constexpr std::uint64_t histogram_denominator = (std::uint64_t{1} << 61) - 1;

/**
 * Digit frequencies over `samples` inputs x = (m-1) k / (2^61 - 1) with k
 * uniform in [1, 2^61 - 2], each expanded exactly to `depth` digits. The
 * prime denominator keeps the samples away from the short expansions of
 * fractions whose denominator is a power of m.
 */
inline HistogramResult mcf_digit_histogram(Base m, std::size_t samples, std::size_t depth, std::uint64_t seed,
                                           std::int64_t digit_cap, unsigned threads = 0) {
    if (samples < 1) throw DomainError("samples must be >= 1");
    if (depth < 1) throw DomainError("depth must be >= 1");
    if (digit_cap < -1) throw DomainError("digit cap must be >= -1");

    HistogramResult out{m.value(), samples, depth, seed, digit_cap, {}, 0, 0};
    const std::size_t bins = static_cast<std::size_t>(digit_cap + 2);
    const unsigned workers = detail::worker_count(threads, samples);
    std::vector<HistogramResult> parts(workers, out);
    for (auto& p : parts) p.counts.assign(bins, 0);

    const BigInt den(static_cast<unsigned long>(histogram_denominator));
    detail::parallel_chunks(samples, workers, [&](std::size_t begin, std::size_t end, unsigned slot) {
        auto& local = parts[slot];
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = substream(seed, detail::digit_histogram_stream, i);
            const std::uint64_t k = rng.below(histogram_denominator - 1) + 1;
            const Rational x(BigInt(static_cast<unsigned long>(k)) * (m.value() - 1), den);
            for (const Digit d : expand(x, m, depth).digits) {
                ++local.total;
                if (d.value() > digit_cap) ++local.overflow;
                else ++local.counts[static_cast<std::size_t>(d.value() + 1)];
            }
        }
    });

    out.counts.assign(bins, 0);
    for (const auto& p : parts) {
        for (std::size_t b = 0; b < bins; ++b) out.counts[b] += p.counts[b];
        out.overflow += p.overflow;
        out.total += p.total;
    }
    return out;
}

}  // namespace mcf
