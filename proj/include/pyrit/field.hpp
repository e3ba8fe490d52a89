#pragma once

#include <cstdint>
#include <vector>

#include "pyrit/bits.hpp"
#include "pyrit/errors.hpp"

namespace pyrit {

using FieldElem = std::uint16_t; // low w bits used
using RingElem  = std::uint16_t; // low n bits used

enum class FieldKind : std::uint8_t {
    Aop, // modulus is an all-one polynomial x^w + ... + x + 1
    Esp, // modulus is an equally-spaced polynomial p(x^s)
};

/*
 * A binary extension field GF(2^w) together with the cyclic ring
 * R = GF(2)[x]/(x^n + 1) it embeds into, n = deg(modulus) + spacing.
 *
 * Two instances are exposed.  Their moduli are chosen so that the ring
 * splits as (modulus) (+) (ideal isomorphic to the field), which is what
 * lets multiplications be carried out with cyclic shifts:
 *
 *   gf16_aop:  w=4, p(x) = x^4+x^3+x^2+x+1,  n=5
 *   gf64_esp:  w=6, g(x) = x^6+x^3+1 = p(x^3) with p(x)=x^2+x+1, n=9
 */
struct FieldSpec {
    unsigned w;             // extension degree, elements are w-bit
    unsigned n;             // ring length, n = w + s
    FieldKind kind;
    unsigned s;             // coefficient spacing (1 for the AOP case)
    unsigned r_esp;         // degree of the base polynomial p (w for AOP)
    std::uint32_t modulus;  // bit i = coefficient of x^i

    static constexpr FieldSpec gf16_aop() {
        return FieldSpec{4, 5, FieldKind::Aop, 1, 4, 0b11111u};
    }
    static constexpr FieldSpec gf64_esp() {
        return FieldSpec{6, 9, FieldKind::Esp, 3, 2, 0b001001001u};
    }

    constexpr std::uint32_t field_mask() const { return (1u << w) - 1; }
    constexpr std::uint32_t ring_mask() const { return (1u << n) - 1; }
    constexpr std::uint32_t field_size() const { return 1u << w; }
    constexpr std::uint32_t ring_size() const { return 1u << n; }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Identifiers used in shard headers; must stay stable across versions.
inline std::uint8_t field_id(const FieldSpec& spec) {
    return spec.kind == FieldKind::Aop ? 0 : 1;
}

inline FieldSpec field_from_id(std::uint8_t id) {
    if (id == 0) return FieldSpec::gf16_aop();
    if (id == 1) return FieldSpec::gf64_esp();
    raise(Errc::BadHeader, "unknown field id " + std::to_string(id));
}

inline FieldElem gf_add(FieldElem a, FieldElem b) {
    return a ^ b;
}

inline FieldElem gf_mul(FieldElem a, FieldElem b, const FieldSpec& spec) {
    return static_cast<FieldElem>(poly_mod(clmul(a, b), spec.modulus));
}

inline FieldElem gf_pow(FieldElem a, unsigned e, const FieldSpec& spec) {
    FieldElem acc = 1;
    FieldElem base = a;
    for (; e != 0; e >>= 1) {
        if (e & 1) acc = gf_mul(acc, base, spec);
        base = gf_mul(base, base, spec);
    }
    return acc;
}

inline FieldElem gf_inv(FieldElem a, const FieldSpec& spec) {
    if (a == 0) raise(Errc::ZeroInverse, "inverse of zero");
    // exhaustive search: the field has at most 64 elements and inverses
    // are only taken while building matrices, never per byte
    for (FieldElem b = 1; b < spec.field_size(); ++b)
        if (gf_mul(a, b, spec) == 1) return b;
    raise(Errc::ZeroInverse, "no inverse found");
}

// Trial division by every polynomial of degree in [1, deg(g)/2].
// Intended for the small moduli this library deals in (deg <= 32).
inline bool poly_irreducible(std::uint64_t g) {
    const int d = poly_degree(g);
    if (d < 1) return false;
    if (d > 32) raise(Errc::InvalidArgument, "degree too large");
    const std::uint64_t limit = 1ull << (static_cast<unsigned>(d) / 2 + 1);
    for (std::uint64_t q = 2; q < limit; ++q)
        if (poly_mod(g, q) == 0) return false;
    return true;
}

// All-one polynomial of degree w: x^w + x^(w-1) + ... + 1.
inline std::uint64_t aop_poly(unsigned w) {
    return (1ull << (w + 1)) - 1;
}

// Equally-spaced polynomial p(x^s) where p is the AOP of degree r.
inline std::uint64_t esp_poly(unsigned s, unsigned r) {
    std::uint64_t g = 0;
    for (unsigned i = 0; i <= r; ++i) g |= 1ull << (i * s);
    return g;
}

/*
 * The AOP of degree w is irreducible exactly when w + 1 is prime and 2
 * is a primitive root modulo w + 1 (OEIS A001122 lists those primes).
 * w = 1 gives x + 1, which is trivially irreducible.
 */
inline bool validate_aop(unsigned w) {
    if (w == 0) return false;
    if (w == 1) return true;
    const unsigned m = w + 1;
    for (unsigned d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    unsigned v = 2 % m, order = 1;
    while (v != 1) {
        v = (v * 2) % m;
        ++order;
    }
    return order == w;
}

// Admissibility of the ESP built from spacing s and base degree r,
// decided by brute-force irreducibility of p(x^s).
inline bool validate_esp(unsigned s, unsigned r) {
    if (s == 0 || r == 0) return false;
    if (s * r > 32) raise(Errc::InvalidArgument, "degree too large");
    return poly_irreducible(esp_poly(s, r));
}

/*
 * Arithmetic ESP criterion: for s = (r+1)^(t-1) with t >= 2, p(x^s) is
 * irreducible iff p is irreducible and 2^(r(r+1)^(t-2)) != 1 mod (r+1)^t.
 * Spacings that are not a power of r + 1 never yield an irreducible ESP.
 * s = 1 is the plain AOP case and is not covered here (use validate_aop).
 * Returns -1 for s = 1, else 0/1.  Checked against validate_esp in tests.
 */
inline int esp_criterion_arithmetic(unsigned s, unsigned r) {
    if (s == 1) return -1;
    // r = 1 makes r+1 = 2, and the order-of-2 test below needs 2 to be
    // a unit modulo (r+1)^t; the criterion does not apply (and indeed
    // x^s + 1 is never irreducible for s > 1)
    if (r == 1) return -1;
    if (s == 0 || r == 0) return 0;
    std::uint64_t base = r + 1, power = 1;
    unsigned t = 1;
    while (power < s) {
        power *= base;
        ++t;
    }
    if (power != s) return 0; // s is not a power of r + 1
    if (!validate_aop(r)) return 0;
    std::uint64_t mod = power * base; // (r+1)^t
    std::uint64_t exp = r * (power / base); // r * (r+1)^(t-2)
    std::uint64_t v = 1, b = 2 % mod;
    for (; exp != 0; exp >>= 1) {
        if (exp & 1) v = v * b % mod;
        b = b * b % mod;
    }
    return v != 1 ? 1 : 0;
}

// Dense 0/1 matrix, row-major.  Small: w x w per field element, or the
// expanded (r*w) x (k*w) form of a whole parity matrix.
struct BinMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> cell;

    BinMatrix() = default;
    BinMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), cell(r * c, 0) {}

    std::uint8_t& at(std::size_t i, std::size_t j) { return cell[i * cols + j]; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return cell[i * cols + j]; }

    std::size_t ones() const {
        std::size_t total = 0;
        for (auto v : cell) total += v;
        return total;
    }
    unsigned row_ones(std::size_t i) const {
        unsigned total = 0;
        for (std::size_t j = 0; j < cols; ++j) total += at(i, j);
        return total;
    }
};

// Binary matrix of multiplication by a: column j holds the coefficients
// of a * x^j, so (bitmatrix(a)) * (coeffs of b) = coeffs of a * b.
inline BinMatrix field_to_bitmatrix(FieldElem a, const FieldSpec& spec) {
    BinMatrix m(spec.w, spec.w);
    for (unsigned j = 0; j < spec.w; ++j) {
        FieldElem prod = gf_mul(a, static_cast<FieldElem>(1u << j), spec);
        for (unsigned i = 0; i < spec.w; ++i)
            m.at(i, j) = (prod >> i) & 1;
    }
    return m;
}

} // namespace pyrit
