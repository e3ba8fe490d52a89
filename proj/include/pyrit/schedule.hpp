#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pyrit/matrix.hpp"
#include "pyrit/ring.hpp"
#include "pyrit/transform.hpp"

namespace pyrit {

/*
 * A compiled schedule is a flat list of whole-packet region operations
 * that evaluates parity = M * data for every bit column at once.
 *
 * Symbol slots are numbered [0, k) for inputs and [k, k + outputs) for
 * outputs.  Packet index p < w addresses the symbol's stored packets;
 * p >= w addresses scratch packet p - w, which lives in a per-worker
 * workspace and never reaches output storage.
 *
 * Phases:
 *   pre   Parity only: build each input's scratch packets (column
 *         parities), extending it to a full ring symbol.
 *   core  One op per one in the trimmed per-entry shift matrices:
 *         output row t accumulates input packet (t - shift) mod n for
 *         every shift in the entry's representative.  Embedding trims
 *         reads of input packets >= w (they are zero); Parity trims
 *         output rows >= w (they are never needed).
 *   post  Embedding only: fold output scratch packets into the data
 *         packets (reduction modulo the field modulus).
 *
 * The first write to every packet in the write set is a Copy.  Output
 * rows nothing writes get an explicit Zero op so replay never depends
 * on prior buffer contents; scratch rows nothing writes are simply
 * left alone, since workspaces are allocated zeroed and a packet no
 * op ever targets stays zero across replays.
 */

enum class OpMode : std::uint8_t { Copy, Xor, Zero };

struct XorOp {
    std::uint16_t src_sym;
    std::uint16_t src_pkt;
    std::uint16_t dst_sym;
    std::uint16_t dst_pkt;
    OpMode mode;
};

struct XorSchedule {
    FieldSpec spec;
    TransformKind kind = TransformKind::Embedding;
    unsigned k = 0;       // input symbol count
    unsigned outputs = 0; // output symbol count
    std::vector<XorOp> pre, core, post;
    std::size_t matrix_ones = 0; // ones across the trimmed per-entry matrices

    XorSchedule() : spec(FieldSpec::gf16_aop()) {}
};

struct ScheduleStats {
    std::size_t xor_ops = 0;
    std::size_t copy_ops = 0;
    std::size_t zero_ops = 0;
    std::size_t total_region_ops = 0;
    std::size_t matrix_ones = 0;
};

// Embedding amortizes its fold over many inputs, so it wins when the
// data side is at least as wide as the parity side.
inline TransformKind choose_transform(unsigned k, unsigned r) {
    return k >= r ? TransformKind::Embedding : TransformKind::Parity;
}

// Representative choice for the ring image of a matrix entry.  Sparse
// is the production choice; Dense (plain phi1) exists to measure how
// much the sparse coset search saves.
enum class RingRep : std::uint8_t { Sparse, Dense };

namespace detail {

inline void emit(std::vector<XorOp>& ops, std::vector<std::uint8_t>& written,
                 std::size_t dst_slot_index, unsigned src_sym, unsigned src_pkt,
                 unsigned dst_sym, unsigned dst_pkt) {
    const OpMode mode = written[dst_slot_index] ? OpMode::Xor : OpMode::Copy;
    written[dst_slot_index] = 1;
    ops.push_back({static_cast<std::uint16_t>(src_sym), static_cast<std::uint16_t>(src_pkt),
                   static_cast<std::uint16_t>(dst_sym), static_cast<std::uint16_t>(dst_pkt),
                   mode});
}

} // namespace detail

inline XorSchedule compile_schedule(const FieldMatrix& m, TransformKind kind,
                                    RingRep rep = RingRep::Sparse) {
    const FieldSpec& spec = m.spec;
    const unsigned w = spec.w, n = spec.n, s = spec.s;
    const unsigned k = static_cast<unsigned>(m.cols);
    const unsigned e = static_cast<unsigned>(m.rows);

    XorSchedule sched;
    sched.spec = spec;
    sched.kind = kind;
    sched.k = k;
    sched.outputs = e;

    std::vector<std::vector<unsigned>> shifts(m.e.size());
    for (std::size_t idx = 0; idx < m.e.size(); ++idx) {
        const RingElem r = rep == RingRep::Sparse ? sparse_transform(m.e[idx], spec)
                                                  : phi1(m.e[idx], spec);
        shifts[idx] = to_shift_set(r);
        sched.matrix_ones += shifts[idx].size() * w;
    }

    if (kind == TransformKind::Parity) {
        // extend every input to a ring symbol: scratch j = parity of
        // data packets congruent to j modulo s
        for (unsigned j = 0; j < k; ++j)
            for (unsigned t = 0; t < n - w; ++t) {
                bool first = true;
                for (unsigned i = t; i < w; i += s) {
                    sched.pre.push_back({static_cast<std::uint16_t>(j),
                                         static_cast<std::uint16_t>(i),
                                         static_cast<std::uint16_t>(j),
                                         static_cast<std::uint16_t>(w + t),
                                         first ? OpMode::Copy : OpMode::Xor});
                    first = false;
                }
            }
    }

    const unsigned out_rows = kind == TransformKind::Parity ? w : n;
    std::vector<std::uint8_t> written(static_cast<std::size_t>(e) * out_rows, 0);
    for (unsigned i = 0; i < e; ++i) {
        for (unsigned t = 0; t < out_rows; ++t) {
            const std::size_t slot = static_cast<std::size_t>(i) * out_rows + t;
            for (unsigned j = 0; j < k; ++j)
                for (unsigned sh : shifts[i * k + j]) {
                    const unsigned src = (t + n - sh) % n;
                    if (kind == TransformKind::Embedding && src >= w)
                        continue; // input packet is identically zero
                    detail::emit(sched.core, written, slot, j, src, k + i, t);
                }
            // scratch rows (t >= w) that nothing writes stay zero by the
            // workspace allocation contract; only real output rows need
            // an explicit zero-fill
            if (!written[slot] && t < w)
                sched.core.push_back({static_cast<std::uint16_t>(k + i),
                                      static_cast<std::uint16_t>(t),
                                      static_cast<std::uint16_t>(k + i),
                                      static_cast<std::uint16_t>(t), OpMode::Zero});
        }
    }

    if (kind == TransformKind::Embedding)
        for (unsigned i = 0; i < e; ++i)
            for (unsigned b = 0; b < w; ++b)
                sched.post.push_back({static_cast<std::uint16_t>(k + i),
                                      static_cast<std::uint16_t>(w + b % s),
                                      static_cast<std::uint16_t>(k + i),
                                      static_cast<std::uint16_t>(b), OpMode::Xor});
    return sched;
}

// Classic bitmatrix schedule over the same matrix: output bit row bi of
// output i accumulates input bit rows per the w x w expansion of each
// entry.  No ring, no scratch, packets < w only.
inline XorSchedule compile_crs_schedule(const FieldMatrix& m) {
    const FieldSpec& spec = m.spec;
    const unsigned w = spec.w;
    const unsigned k = static_cast<unsigned>(m.cols);
    const unsigned e = static_cast<unsigned>(m.rows);

    XorSchedule sched;
    sched.spec = spec;
    sched.kind = TransformKind::Embedding;
    sched.k = k;
    sched.outputs = e;

    std::vector<BinMatrix> blocks(m.e.size());
    for (std::size_t idx = 0; idx < m.e.size(); ++idx) {
        blocks[idx] = field_to_bitmatrix(m.e[idx], spec);
        sched.matrix_ones += blocks[idx].ones();
    }

    std::vector<std::uint8_t> written(static_cast<std::size_t>(e) * w, 0);
    for (unsigned i = 0; i < e; ++i)
        for (unsigned bi = 0; bi < w; ++bi) {
            const std::size_t slot = static_cast<std::size_t>(i) * w + bi;
            for (unsigned j = 0; j < k; ++j) {
                const BinMatrix& bm = blocks[i * k + j];
                for (unsigned bj = 0; bj < w; ++bj)
                    if (bm.at(bi, bj))
                        detail::emit(sched.core, written, slot, j, bj, k + i, bi);
            }
            if (!written[slot])
                sched.core.push_back({static_cast<std::uint16_t>(k + i),
                                      static_cast<std::uint16_t>(bi),
                                      static_cast<std::uint16_t>(k + i),
                                      static_cast<std::uint16_t>(bi), OpMode::Zero});
        }
    return sched;
}

inline void accumulate_stats(ScheduleStats& st, const std::vector<XorOp>& ops) {
    for (const XorOp& op : ops) {
        switch (op.mode) {
        case OpMode::Copy: ++st.copy_ops; break;
        case OpMode::Xor: ++st.xor_ops; break;
        case OpMode::Zero: ++st.zero_ops; break;
        }
    }
    st.total_region_ops = st.xor_ops + st.copy_ops + st.zero_ops;
}

inline ScheduleStats schedule_stats(const XorSchedule& sched) {
    ScheduleStats st;
    st.matrix_ones = sched.matrix_ones;
    accumulate_stats(st, sched.pre);
    accumulate_stats(st, sched.core);
    accumulate_stats(st, sched.post);
    return st;
}

inline ScheduleStats core_stats(const XorSchedule& sched) {
    ScheduleStats st;
    st.matrix_ones = sched.matrix_ones;
    accumulate_stats(st, sched.core);
    return st;
}

// One line per op: "C 3.1 -> 8.0", "X 3.2 -> 8.0", or "Z -> 8.4" for
// an explicit clear.
inline std::string dump_schedule(const XorSchedule& sched) {
    std::string out;
    const auto dump_ops = [&out](const char* phase, const std::vector<XorOp>& ops) {
        if (ops.empty()) return;
        out += "# ";
        out += phase;
        out += '\n';
        for (const XorOp& op : ops) {
            if (op.mode == OpMode::Zero) {
                out += "Z -> ";
            } else {
                out += op.mode == OpMode::Copy ? "C " : "X ";
                out += std::to_string(op.src_sym) + "." + std::to_string(op.src_pkt) + " -> ";
            }
            out += std::to_string(op.dst_sym) + "." + std::to_string(op.dst_pkt) + "\n";
        }
    };
    dump_ops("pre", sched.pre);
    dump_ops("core", sched.core);
    dump_ops("post", sched.post);
    return out;
}

} // namespace pyrit
