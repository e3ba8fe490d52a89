#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "pyrit/matrix.hpp"
#include "pyrit/schedule.hpp"
#include "pyrit/transform.hpp"

namespace pyrit {

/*
 * Bit-sliced symbol storage.  A symbol is w packets of packet_size
 * bytes; packet i holds coefficient i of every column, so column t is
 * the field element whose bit i is bit t of packet i.  Packets of one
 * symbol are contiguous, which lets a symbol double as a flat byte
 * span for file I/O: the encoder never repacks file bytes, it just
 * reinterprets them.
 */
class SymbolBuffer {
public:
    SymbolBuffer(unsigned symbols, std::size_t symbol_size, const FieldSpec& spec)
        : spec_(spec), symbols_(symbols), symbol_size_(symbol_size) {
        if (symbol_size == 0 || symbol_size % spec.w != 0 || symbol_size % 8 != 0)
            raise(Errc::BufferShape,
                  "symbol size must be a positive multiple of w and of the word width");
        packet_size_ = symbol_size / spec.w;
        store_.assign(static_cast<std::size_t>(symbols) * symbol_size, 0);
    }

    const FieldSpec& spec() const { return spec_; }
    unsigned symbols() const { return symbols_; }
    std::size_t symbol_size() const { return symbol_size_; }
    std::size_t packet_size() const { return packet_size_; }
    std::size_t columns() const { return packet_size_ * 8; }

    std::uint8_t* symbol(unsigned sym) { return store_.data() + sym * symbol_size_; }
    const std::uint8_t* symbol(unsigned sym) const { return store_.data() + sym * symbol_size_; }

    std::uint8_t* packet(unsigned sym, unsigned pkt) {
        return symbol(sym) + pkt * packet_size_;
    }
    const std::uint8_t* packet(unsigned sym, unsigned pkt) const {
        return symbol(sym) + pkt * packet_size_;
    }

    FieldElem get_column(unsigned sym, std::size_t col) const {
        FieldElem v = 0;
        for (unsigned i = 0; i < spec_.w; ++i)
            v |= static_cast<FieldElem>(((packet(sym, i)[col >> 3] >> (col & 7)) & 1u) << i);
        return v;
    }

    void set_column(unsigned sym, std::size_t col, FieldElem v) {
        for (unsigned i = 0; i < spec_.w; ++i) {
            std::uint8_t& b = packet(sym, i)[col >> 3];
            const std::uint8_t bit = static_cast<std::uint8_t>(1u << (col & 7));
            if ((v >> i) & 1u) b |= bit;
            else b &= static_cast<std::uint8_t>(~bit);
        }
    }

private:
    FieldSpec spec_;
    unsigned symbols_;
    std::size_t symbol_size_;
    std::size_t packet_size_;
    std::vector<std::uint8_t> store_;
};

// Scratch packets for the slots of one schedule, sized for one worker's
// column window.  Covers exactly the slot range the schedule touches
// with packet indexes >= w (inputs for Parity, outputs for Embedding).
class Workspace {
public:
    Workspace(const XorSchedule& sched, std::size_t region_bytes) : region_(region_bytes) {
        unsigned lo = sched.k + sched.outputs, hi = 0;
        const auto scan = [&](const std::vector<XorOp>& ops) {
            for (const XorOp& op : ops) {
                if (op.mode != OpMode::Zero && op.src_pkt >= sched.spec.w) {
                    lo = std::min(lo, static_cast<unsigned>(op.src_sym));
                    hi = std::max(hi, static_cast<unsigned>(op.src_sym) + 1);
                }
                if (op.dst_pkt >= sched.spec.w) {
                    lo = std::min(lo, static_cast<unsigned>(op.dst_sym));
                    hi = std::max(hi, static_cast<unsigned>(op.dst_sym) + 1);
                }
            }
        };
        scan(sched.pre);
        scan(sched.core);
        scan(sched.post);
        lo_ = lo < hi ? lo : 0;
        per_sym_ = sched.spec.n - sched.spec.w;
        store_.assign(lo < hi ? static_cast<std::size_t>(hi - lo) * per_sym_ * region_ : 0, 0);
    }

    std::uint8_t* scratch(unsigned slot, unsigned idx) {
        return store_.data() + (static_cast<std::size_t>(slot - lo_) * per_sym_ + idx) * region_;
    }

private:
    std::size_t region_;
    unsigned lo_ = 0, per_sym_ = 0;
    std::vector<std::uint8_t> store_;
};

/*
 * Execute a schedule over one column window [offset, offset + len) of
 * every packet.  in_map/out_map translate schedule slots to symbol
 * indexes, so decode can feed survivor symbols straight from a mixed
 * buffer.  Scratch regions are worker-local and carry no offset.
 */
inline void replay(const XorSchedule& sched, const SymbolBuffer& in,
                   std::span<const unsigned> in_map, SymbolBuffer& out,
                   std::span<const unsigned> out_map, Workspace& ws,
                   std::size_t offset, std::size_t len) {
    if (in_map.size() != sched.k || out_map.size() != sched.outputs)
        raise(Errc::BufferShape, "replay: slot map sizes do not match schedule");
    if (!(in.spec() == sched.spec) || !(out.spec() == sched.spec))
        raise(Errc::BufferShape, "replay: field mismatch");
    if (in.packet_size() != out.packet_size() || offset + len > in.packet_size())
        raise(Errc::BufferShape, "replay: column window out of range");

    const unsigned w = sched.spec.w;
    const auto src_of = [&](const XorOp& op) -> const std::uint8_t* {
        if (op.src_pkt >= w) return ws.scratch(op.src_sym, op.src_pkt - w);
        if (op.src_sym < sched.k) return in.packet(in_map[op.src_sym], op.src_pkt) + offset;
        return out.packet(out_map[op.src_sym - sched.k], op.src_pkt) + offset;
    };
    const auto dst_of = [&](const XorOp& op) -> std::uint8_t* {
        if (op.dst_pkt >= w) return ws.scratch(op.dst_sym, op.dst_pkt - w);
        if (op.dst_sym < sched.k) {
            // pre-phase parity extension writes input scratch only; a
            // data-packet destination below k would clobber inputs
            raise(Errc::BufferShape, "replay: schedule writes an input data packet");
        }
        return out.packet(out_map[op.dst_sym - sched.k], op.dst_pkt) + offset;
    };
    const auto run = [&](const std::vector<XorOp>& ops) {
        for (const XorOp& op : ops) {
            std::uint8_t* dst = dst_of(op);
            switch (op.mode) {
            case OpMode::Zero: zero_region(dst, len); break;
            case OpMode::Copy: copy_region(dst, src_of(op), len); break;
            case OpMode::Xor: xor_region(dst, src_of(op), len); break;
            }
        }
    };
    run(sched.pre);
    run(sched.core);
    run(sched.post);
}

// Carve [0, packet_size) into word-aligned windows, one per worker.
inline std::vector<std::pair<std::size_t, std::size_t>> column_windows(std::size_t total,
                                                                       unsigned threads) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    if (threads == 0) threads = 1;
    std::size_t begin = 0;
    for (unsigned t = 0; t < threads && begin < total; ++t) {
        std::size_t end = total * (t + 1) / threads;
        end = t + 1 == threads ? total : end & ~std::size_t{7};
        if (end <= begin) continue;
        spans.emplace_back(begin, end - begin);
        begin = end;
    }
    if (spans.empty()) spans.emplace_back(0, total);
    return spans;
}

inline void parallel_replay(const XorSchedule& sched, const SymbolBuffer& in,
                            std::span<const unsigned> in_map, SymbolBuffer& out,
                            std::span<const unsigned> out_map, unsigned threads) {
    const auto spans = column_windows(in.packet_size(), threads);
    if (spans.size() == 1) {
        Workspace ws(sched, spans[0].second);
        replay(sched, in, in_map, out, out_map, ws, spans[0].first, spans[0].second);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(spans.size());
    for (const auto& [off, len] : spans)
        pool.emplace_back([&, off = off, len = len] {
            Workspace ws(sched, len);
            replay(sched, in, in_map, out, out_map, ws, off, len);
        });
    for (auto& th : pool) th.join();
}

namespace detail {

inline std::vector<unsigned> iota_map(unsigned count, unsigned base = 0) {
    std::vector<unsigned> m(count);
    for (unsigned i = 0; i < count; ++i) m[i] = base + i;
    return m;
}

} // namespace detail

inline void check_data_shape(const SymbolBuffer& data, const CodeSpec& code) {
    validate_code(code);
    if (!(data.spec() == code.field) || data.symbols() != code.k)
        raise(Errc::BufferShape, "data buffer does not match the code");
}

// Parity via the ring schedule.  This is the production path.
inline SymbolBuffer encode(const SymbolBuffer& data, const CodeSpec& code,
                           unsigned threads = 1) {
    check_data_shape(data, code);
    const XorSchedule sched = compile_schedule(cauchy_parity_matrix(code), code.transform);
    SymbolBuffer parity(code.r, data.symbol_size(), code.field);
    parallel_replay(sched, data, detail::iota_map(code.k), parity,
                    detail::iota_map(code.r), threads);
    return parity;
}

// Parity via the classic bitmatrix schedule.  Reference baseline.
inline SymbolBuffer encode_crs(const SymbolBuffer& data, const CodeSpec& code,
                               unsigned threads = 1) {
    check_data_shape(data, code);
    const XorSchedule sched = compile_crs_schedule(cauchy_parity_matrix(code));
    SymbolBuffer parity(code.r, data.symbol_size(), code.field);
    parallel_replay(sched, data, detail::iota_map(code.k), parity,
                    detail::iota_map(code.r), threads);
    return parity;
}

/*
 * In-place erasure repair.  `symbols` holds all k + r symbols; the
 * slots listed in `erased` are treated as garbage and rewritten.
 * Survivors are taken lowest-index-first, which prefers data symbols.
 * Erased data comes back through a compiled decode-matrix schedule over
 * the k survivors; erased parity is then recomputed from the repaired
 * data through the relevant rows of the parity matrix.
 */
inline void decode(SymbolBuffer& symbols, const std::vector<unsigned>& erased,
                   const CodeSpec& code, unsigned threads = 1) {
    validate_code(code);
    if (!(symbols.spec() == code.field) || symbols.symbols() != code.k + code.r)
        raise(Errc::BufferShape, "symbol buffer does not match the code");
    std::vector<bool> gone(code.k + code.r, false);
    for (unsigned e : erased) {
        if (e >= code.k + code.r) raise(Errc::InvalidArgument, "erased index out of range");
        if (gone[e]) raise(Errc::InvalidArgument, "duplicate erased index");
        gone[e] = true;
    }
    if (erased.size() > code.r)
        raise(Errc::InsufficientShards,
              "cannot repair " + std::to_string(erased.size()) + " erasures with r = " +
              std::to_string(code.r));

    std::vector<unsigned> survivors;
    for (unsigned i = 0; i < code.k + code.r && survivors.size() < code.k; ++i)
        if (!gone[i]) survivors.push_back(i);

    std::vector<unsigned> erased_data, erased_parity;
    for (unsigned e : erased)
        (e < code.k ? erased_data : erased_parity).push_back(e);
    // decode_matrix emits recovered rows in ascending index order, so the
    // output map must be sorted no matter how the caller listed erasures
    std::sort(erased_data.begin(), erased_data.end());
    std::sort(erased_parity.begin(), erased_parity.end());

    const FieldMatrix parity_m = cauchy_parity_matrix(code);
    if (!erased_data.empty()) {
        const FieldMatrix dm = decode_matrix(code, parity_m, survivors);
        const XorSchedule sched = compile_schedule(dm, code.transform);
        parallel_replay(sched, symbols, survivors, symbols, erased_data, threads);
    }
    if (!erased_parity.empty()) {
        FieldMatrix rows(erased_parity.size(), code.k, code.field);
        for (std::size_t i = 0; i < erased_parity.size(); ++i)
            for (unsigned j = 0; j < code.k; ++j)
                rows.at(i, j) = parity_m.at(erased_parity[i] - code.k, j);
        const XorSchedule sched = compile_schedule(rows, code.transform);
        parallel_replay(sched, symbols, detail::iota_map(code.k), symbols, erased_parity,
                        threads);
    }
}

// --- split-table baseline ------------------------------------------------
//
// The table method works on packed symbols: w = 4 packs two elements
// per byte (split low/high nibble lookups), w = 6 stores one element
// per byte and multiplies through log/antilog tables.  Packing is a
// layout conversion, not part of the coding work.

inline std::size_t packed_symbol_size(const FieldSpec& spec, std::size_t columns) {
    return spec.w == 4 ? columns / 2 : columns;
}

inline const std::array<std::uint8_t, 64>& gf64_log_table(const FieldSpec& spec) {
    static const std::array<std::uint8_t, 64> log = [&spec] {
        std::array<std::uint8_t, 64> t{};
        FieldElem g = 0;
        for (FieldElem cand = 2; cand < 64; ++cand) {
            unsigned order = 1;
            FieldElem v = cand;
            while (v != 1) {
                v = gf_mul(v, cand, spec);
                ++order;
            }
            if (order == 63) {
                g = cand;
                break;
            }
        }
        FieldElem v = 1;
        for (unsigned i = 0; i < 63; ++i) {
            t[v] = static_cast<std::uint8_t>(i);
            v = gf_mul(v, g, spec);
        }
        return t;
    }();
    return log;
}

inline const std::array<std::uint8_t, 126>& gf64_antilog_table(const FieldSpec& spec) {
    static const std::array<std::uint8_t, 126> alog = [&spec] {
        std::array<std::uint8_t, 126> t{};
        const auto& log = gf64_log_table(spec);
        for (unsigned v = 1; v < 64; ++v) {
            t[log[v]] = static_cast<std::uint8_t>(v);
            t[log[v] + 63] = static_cast<std::uint8_t>(v);
        }
        return t;
    }();
    return alog;
}

// 256-entry multiply-by-m table over packed bytes.
inline std::array<std::uint8_t, 256> mul_table(FieldElem m, const FieldSpec& spec) {
    std::array<std::uint8_t, 256> t{};
    if (spec.w == 4) {
        for (unsigned b = 0; b < 256; ++b)
            t[b] = static_cast<std::uint8_t>(
                gf_mul(m, static_cast<FieldElem>(b & 0xF), spec) |
                (gf_mul(m, static_cast<FieldElem>(b >> 4), spec) << 4));
    } else {
        const auto& log = gf64_log_table(spec);
        const auto& alog = gf64_antilog_table(spec);
        for (unsigned b = 0; b < 256; ++b) {
            const unsigned v = b & 0x3F;
            t[b] = (m == 0 || v == 0) ? 0 : alog[log[m] + log[v]];
        }
    }
    return t;
}

// Matrix application over packed regions, tables prebuilt per entry.
class TableCodec {
public:
    TableCodec(const FieldMatrix& m)
        : rows_(m.rows), cols_(m.cols), tbl_(m.rows * m.cols) {
        for (std::size_t i = 0; i < m.e.size(); ++i) tbl_[i] = mul_table(m.e[i], m.spec);
    }

    void apply(std::span<const std::uint8_t* const> in, std::span<std::uint8_t* const> out,
               std::size_t len) const {
        if (in.size() != cols_ || out.size() != rows_)
            raise(Errc::BufferShape, "table apply: shape mismatch");
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint8_t* dst = out[i];
            bool first = true;
            for (std::size_t j = 0; j < cols_; ++j) {
                const std::uint8_t* t = tbl_[i * cols_ + j].data();
                const std::uint8_t* src = in[j];
                if (first) {
                    for (std::size_t b = 0; b < len; ++b) dst[b] = t[src[b]];
                    first = false;
                } else {
                    for (std::size_t b = 0; b < len; ++b) dst[b] ^= t[src[b]];
                }
            }
            if (first) zero_region(dst, len);
        }
    }

private:
    std::size_t rows_, cols_;
    std::vector<std::array<std::uint8_t, 256>> tbl_;
};

inline std::vector<std::uint8_t> pack_symbol(const SymbolBuffer& buf, unsigned sym) {
    const std::size_t cols = buf.columns();
    std::vector<std::uint8_t> out(packed_symbol_size(buf.spec(), cols), 0);
    for (std::size_t t = 0; t < cols; ++t) {
        const FieldElem v = buf.get_column(sym, t);
        if (buf.spec().w == 4)
            out[t >> 1] |= static_cast<std::uint8_t>(v << ((t & 1) * 4));
        else
            out[t] = static_cast<std::uint8_t>(v);
    }
    return out;
}

inline void unpack_symbol(SymbolBuffer& buf, unsigned sym,
                          std::span<const std::uint8_t> packed) {
    const std::size_t cols = buf.columns();
    for (std::size_t t = 0; t < cols; ++t) {
        const FieldElem v =
            buf.spec().w == 4
                ? static_cast<FieldElem>((packed[t >> 1] >> ((t & 1) * 4)) & 0xF)
                : static_cast<FieldElem>(packed[t] & 0x3F);
        buf.set_column(sym, t, v);
    }
}

// Parity via split tables on packed symbols.  Bit-exact with the plain
// field code; the bit-sliced wrapper converts layouts at the edges.
inline SymbolBuffer encode_table(const SymbolBuffer& data, const CodeSpec& code) {
    check_data_shape(data, code);
    const TableCodec codec(cauchy_parity_matrix(code));
    std::vector<std::vector<std::uint8_t>> packed_in(code.k);
    std::vector<const std::uint8_t*> in_ptr(code.k);
    for (unsigned j = 0; j < code.k; ++j) {
        packed_in[j] = pack_symbol(data, j);
        in_ptr[j] = packed_in[j].data();
    }
    const std::size_t plen = packed_symbol_size(code.field, data.columns());
    std::vector<std::vector<std::uint8_t>> packed_out(code.r,
                                                      std::vector<std::uint8_t>(plen));
    std::vector<std::uint8_t*> out_ptr(code.r);
    for (unsigned i = 0; i < code.r; ++i) out_ptr[i] = packed_out[i].data();
    codec.apply(in_ptr, out_ptr, plen);
    SymbolBuffer parity(code.r, data.symbol_size(), code.field);
    for (unsigned i = 0; i < code.r; ++i) unpack_symbol(parity, i, packed_out[i]);
    return parity;
}

/*
 * Element-at-a-time reference, deliberately slow and structure-free.
 * Embedding produces the plain field code parity = M * data per column.
 * Parity mirrors what the ring pipeline computes: symbols enter A1
 * through the parity bijection and leave by truncation, so each symbol
 * is conjugated through phi1_inv(phi_P(.)); the composite stays an
 * exact erasure code but its parity bytes differ from the plain code.
 */
inline SymbolBuffer oracle_apply(const FieldMatrix& m, TransformKind kind,
                                 const SymbolBuffer& data) {
    if (data.symbols() != m.cols || !(data.spec() == m.spec))
        raise(Errc::BufferShape, "oracle: data does not match matrix");
    SymbolBuffer out(static_cast<unsigned>(m.rows), data.symbol_size(), m.spec);
    for (std::size_t t = 0; t < data.columns(); ++t) {
        for (std::size_t i = 0; i < m.rows; ++i) {
            FieldElem acc = 0;
            for (std::size_t j = 0; j < m.cols; ++j) {
                FieldElem d = data.get_column(static_cast<unsigned>(j), t);
                if (kind == TransformKind::Parity)
                    d = phi1_inv(phi_P(d, m.spec), m.spec);
                acc = gf_add(acc, gf_mul(m.at(i, j), d, m.spec));
            }
            if (kind == TransformKind::Parity)
                acc = phi_P_inv(phi1(acc, m.spec), m.spec);
            out.set_column(static_cast<unsigned>(i), t, acc);
        }
    }
    return out;
}

inline SymbolBuffer oracle_encode(const SymbolBuffer& data, const CodeSpec& code) {
    check_data_shape(data, code);
    return oracle_apply(cauchy_parity_matrix(code), code.transform, data);
}

} // namespace pyrit
