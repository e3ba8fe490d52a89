#pragma once

#include <cassert>
#include <cstdint>
#include <cstring>
#include <span>

#include "pyrit/errors.hpp"
#include "pyrit/ring.hpp"

namespace pyrit {

/*
 * Two ways of moving w-bit symbols in and out of the n-bit ring.
 *
 * Embedding pads with zero coefficients on the way in; the way out is a
 * reduction modulo the field modulus, which costs one xor per data
 * packet.  Parity appends s parity coefficients on the way in, landing
 * the symbol inside the ideal A1 so that ring products stay in A1 and
 * the way out is a plain truncation.  Parity is a bijection but not a
 * ring homomorphism: a parity-encoded stream is only meaningful to a
 * parity decoder (the codec records the choice in shard headers).
 */
enum class TransformKind : std::uint8_t { Embedding = 0, Parity = 1 };

inline TransformKind transform_from_id(std::uint8_t id) {
    if (id > 1) raise(Errc::BadHeader, "unknown transform id " + std::to_string(id));
    return static_cast<TransformKind>(id);
}

// Field element viewed as a ring element with zero top coefficients.
inline RingElem phi_E(FieldElem b, const FieldSpec& spec) {
    return static_cast<RingElem>(b & spec.field_mask());
}

// Reduction modulo the field modulus, written coefficient-wise: top
// coefficient w+j folds into every position congruent to j modulo s.
// Agrees with phi1_inv on all of R.
inline FieldElem phi_E_inv(RingElem a, const FieldSpec& spec) {
    FieldElem out = 0;
    for (unsigned i = 0; i < spec.w; ++i) {
        const unsigned bit = ((a >> i) ^ (a >> (spec.w + i % spec.s))) & 1u;
        out |= static_cast<FieldElem>(bit << i);
    }
    return out;
}

// Append parity coefficient w+j over the positions congruent to j
// modulo s.  The result always lies in A1.
inline RingElem phi_P(FieldElem b, const FieldSpec& spec) {
    RingElem out = b & spec.field_mask();
    for (unsigned j = 0; j < spec.s; ++j) {
        unsigned parity = 0;
        for (unsigned i = j; i < spec.w; i += spec.s)
            parity ^= (b >> i) & 1u;
        out |= static_cast<RingElem>(parity << (spec.w + j));
    }
    return out;
}

// Drop the parity coefficients.  Only valid on elements of A1, which
// is a debug-checked precondition, not a runtime branch.
inline FieldElem phi_P_inv(RingElem a, const FieldSpec& spec) {
    assert(in_ideal_A1(a, spec) && "phi_P_inv input outside the ideal");
    return static_cast<FieldElem>(a & spec.field_mask());
}

// --- packet-level forms -------------------------------------------------
//
// A symbol stored bit-sliced is w packets; packet i holds coefficient i
// of every column.  The transforms above then become whole-packet xors.

inline void xor_region(std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        std::uint64_t a, b;
        std::memcpy(&a, dst + i, 8);
        std::memcpy(&b, src + i, 8);
        a ^= b;
        std::memcpy(dst + i, &a, 8);
    }
    for (; i < len; ++i) dst[i] ^= src[i];
}

inline void copy_region(std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
    std::memcpy(dst, src, len);
}

inline void zero_region(std::uint8_t* dst, std::size_t len) {
    std::memset(dst, 0, len);
}

// Produce the n-w scratch packets that extend w data packets to a full
// ring symbol: zeros for Embedding, column parities for Parity.
inline void extend_packets(TransformKind kind, const FieldSpec& spec,
                           std::span<const std::uint8_t* const> data,
                           std::span<std::uint8_t* const> scratch,
                           std::size_t len) {
    if (data.size() != spec.w || scratch.size() != spec.n - spec.w)
        raise(Errc::BufferShape, "extend_packets: wrong packet count");
    for (unsigned j = 0; j < spec.n - spec.w; ++j) {
        if (kind == TransformKind::Embedding) {
            zero_region(scratch[j], len);
            continue;
        }
        bool first = true;
        for (unsigned i = j; i < spec.w; i += spec.s) {
            if (first) copy_region(scratch[j], data[i], len);
            else xor_region(scratch[j], data[i], len);
            first = false;
        }
    }
}

// Collapse a full ring symbol back to w data packets in place: the
// Embedding reduction xors scratch packet (i mod s) into data packet i;
// Parity truncates, so the scratch packets are simply dropped.
inline void fold_packets(TransformKind kind, const FieldSpec& spec,
                         std::span<std::uint8_t* const> data,
                         std::span<const std::uint8_t* const> scratch,
                         std::size_t len) {
    if (data.size() != spec.w || scratch.size() != spec.n - spec.w)
        raise(Errc::BufferShape, "fold_packets: wrong packet count");
    if (kind == TransformKind::Parity) return;
    for (unsigned i = 0; i < spec.w; ++i)
        xor_region(data[i], scratch[i % spec.s], len);
}

} // namespace pyrit
