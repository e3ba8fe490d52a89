#pragma once

#include <bit>
#include <cstdint>

namespace pyrit {

// Polynomials over GF(2) packed into integers, bit i = coefficient of x^i.
// Everything here is branch-light and total; callers police argument ranges.

inline int poly_degree(std::uint64_t a) {
    // degree of the zero polynomial is reported as -1
    return a == 0 ? -1 : 63 - std::countl_zero(a);
}

// Carry-less product.  Operands in this library never exceed 32 bits.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t acc = 0;
    while (b != 0) {
        acc ^= a * (b & (0 - b)); // isolate lowest set bit of b
        b &= b - 1;
    }
    return acc;
}

// Remainder of a modulo m (m != 0), both packed polynomials.
inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = poly_degree(m);
    for (int da = poly_degree(a); da >= dm; da = poly_degree(a))
        a ^= m << (da - dm);
    return a;
}

// Rotate the low n bits of a left by s (s in [0, n)).
inline std::uint32_t rotl_n(std::uint32_t a, unsigned s, unsigned n) {
    const std::uint32_t mask = (1u << n) - 1;
    a &= mask;
    return s == 0 ? a : (((a << s) | (a >> (n - s))) & mask);
}

inline unsigned weight(std::uint64_t a) {
    return static_cast<unsigned>(std::popcount(a));
}

} // namespace pyrit
