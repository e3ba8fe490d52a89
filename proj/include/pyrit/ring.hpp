#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pyrit/bits.hpp"
#include "pyrit/field.hpp"

namespace pyrit {

/*
 * Arithmetic in R = GF(2)[x]/(x^n + 1).
 *
 * x^n + 1 = modulus(x) * q(x) with the two factors coprime, so R splits
 * into the ideal A1 generated by the idempotent theta1 = modulus + 1
 * (isomorphic to the field) and its complement, the multiples of the
 * modulus.  phi1/phi1_inv move elements across that isomorphism; the
 * sparse transform picks the lightest representative of a field
 * element's coset, which is what keeps shift-based multiplication cheap.
 */

// Product in R: cyclic convolution of the low n bits.
inline RingElem ring_mul(RingElem a, RingElem b, const FieldSpec& spec) {
    std::uint32_t acc = 0;
    std::uint32_t rest = a & spec.ring_mask();
    while (rest != 0) {
        const unsigned i = static_cast<unsigned>(std::countr_zero(rest));
        acc ^= rotl_n(b, i, spec.n);
        rest &= rest - 1;
    }
    return static_cast<RingElem>(acc);
}

// Generating idempotent of A1.  theta1^2 = theta1 and A1 = theta1 * R.
inline RingElem idempotent_theta1(const FieldSpec& spec) {
    return static_cast<RingElem>((spec.modulus ^ 1u) & spec.ring_mask());
}

// Field -> A1 isomorphism: multiply by the idempotent.
inline RingElem phi1(FieldElem b, const FieldSpec& spec) {
    return ring_mul(static_cast<RingElem>(b & spec.field_mask()),
                    idempotent_theta1(spec), spec);
}

// A1 -> field inverse: reduce modulo the field modulus.
inline FieldElem phi1_inv(RingElem a, const FieldSpec& spec) {
    return static_cast<FieldElem>(poly_mod(a & spec.ring_mask(), spec.modulus));
}

// Membership in A1 without reducing: the s interleaved coefficient
// words each carry even weight (s = 1 collapses to plain even weight).
inline bool in_ideal_A1(RingElem a, const FieldSpec& spec) {
    for (unsigned j = 0; j < spec.s; ++j) {
        unsigned parity = 0;
        for (unsigned i = j; i < spec.n; i += spec.s)
            parity ^= (a >> i) & 1u;
        if (parity != 0) return false;
    }
    return true;
}

// The complement of A1 in R: all 2^(n-w) multiples of the modulus.
// Degrees stay below n, so the products need no cyclic reduction.
inline std::vector<RingElem> complement_elements(const FieldSpec& spec) {
    std::vector<RingElem> out;
    const unsigned count = 1u << (spec.n - spec.w);
    out.reserve(count);
    for (unsigned m = 0; m < count; ++m)
        out.push_back(static_cast<RingElem>(clmul(m, spec.modulus)));
    return out;
}

// Lightest representative of phi1(u)'s coset modulo the complement.
// Ties break toward the smallest bit-packed value, so the choice is
// deterministic and schedules built from it are reproducible.
inline RingElem sparse_transform(FieldElem u, const FieldSpec& spec) {
    const RingElem anchor = phi1(u, spec);
    RingElem best = anchor;
    unsigned best_weight = weight(anchor);
    for (RingElem e : complement_elements(spec)) {
        const RingElem cand = anchor ^ e;
        const unsigned cw = weight(cand);
        if (cw < best_weight || (cw == best_weight && cand < best)) {
            best = cand;
            best_weight = cw;
        }
    }
    return best;
}

// Set-bit positions of a representative: the cyclic shifts its
// multiplication decomposes into.
inline std::vector<unsigned> to_shift_set(RingElem rep) {
    std::vector<unsigned> shifts;
    std::uint32_t rest = rep;
    while (rest != 0) {
        shifts.push_back(static_cast<unsigned>(std::countr_zero(rest)));
        rest &= rest - 1;
    }
    return shifts;
}

// "1+x^2+x^3" style rendering, "0" for the zero polynomial.
inline std::string poly_string(std::uint32_t a) {
    if (a == 0) return "0";
    std::string out;
    for (unsigned i = 0; a >> i; ++i) {
        if (((a >> i) & 1u) == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) out += "1";
        else if (i == 1) out += "x";
        else out += "x^" + std::to_string(i);
    }
    return out;
}

} // namespace pyrit
