#pragma once

#include <cstdint>

#include "mcf/rational.hpp"

namespace mcf {

/// F_n with F_0 = F_1 = 1 (so F_2 = 2, F_6 = 13).
inline BigInt fibonacci(std::uint64_t n) {
    // mpz_fib_ui uses F_0 = 0, F_1 = 1; shift by one.
    BigInt f;
    mpz_fib_ui(f.get_mpz_t(), static_cast<unsigned long>(n + 1));
    return f;
}

}  // namespace mcf
