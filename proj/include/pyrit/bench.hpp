#pragma once

#include <barrier>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pyrit/codec.hpp"

namespace pyrit {

/*
 * Throughput sweep: symbol sizes crossed with worker counts, encode
 * and decode, for the ring codec and the two baselines.  Workers split
 * the column space and synchronize at a barrier every iteration, so a
 * row measures steady-state coding bandwidth, not one cold pass.
 * Throughput counts (k + r) * symbol_size bytes per iteration.
 *
 * Requested sizes are rounded up to the smallest valid symbol size
 * (multiple of w and of the word width); rows are keyed by the
 * requested size, rates use the bytes actually coded.
 */

enum class CodecKind : std::uint8_t { Pyrit, Crs, Table };
enum class BenchOp : std::uint8_t { Encode, Decode };

inline const char* codec_name(CodecKind c) {
    switch (c) {
    case CodecKind::Pyrit: return "pyrit";
    case CodecKind::Crs: return "crs";
    default: return "table";
    }
}

inline const char* op_name(BenchOp op) { return op == BenchOp::Encode ? "encode" : "decode"; }

struct BenchConfig {
    CodeSpec code;
    std::vector<std::size_t> sizes;          // requested symbol sizes in bytes
    std::vector<unsigned> threads = {1, 2, 4, 8};
    unsigned iterations = 0;                 // 0 = pick per point from target_seconds
    double target_seconds = 0.25;
};

inline std::vector<std::size_t> default_bench_sizes() {
    std::vector<std::size_t> sizes;
    for (std::size_t s = 128; s <= (8u << 20); s <<= 1) sizes.push_back(s);
    return sizes;
}

struct BenchRow {
    std::size_t size = 0;                    // requested symbol size
    std::vector<double> gbps;                // one rate per worker count
};

struct BenchTable {
    CodecKind codec;
    BenchOp op;
    std::vector<unsigned> threads;
    std::vector<BenchRow> rows;
};

namespace detail {

inline std::size_t round_up(std::size_t v, std::size_t m) { return (v + m - 1) / m * m; }

inline void fill_random(std::uint8_t* p, std::size_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < len; ++i) p[i] = static_cast<std::uint8_t>(rng());
}

// Run `work(worker, offset, len)` iters times on each window, all
// workers in step, and return the wall seconds for the whole loop.
inline double timed_loop(const std::vector<std::pair<std::size_t, std::size_t>>& windows,
                         unsigned iters,
                         const std::function<void(unsigned, std::size_t, std::size_t)>& work) {
    const auto t0 = std::chrono::steady_clock::now();
    std::barrier sync(static_cast<std::ptrdiff_t>(windows.size()));
    std::vector<std::thread> pool;
    pool.reserve(windows.size());
    for (unsigned wkr = 0; wkr < windows.size(); ++wkr)
        pool.emplace_back([&, wkr] {
            for (unsigned it = 0; it < iters; ++it) {
                work(wkr, windows[wkr].first, windows[wkr].second);
                sync.arrive_and_wait();
            }
        });
    for (auto& th : pool) th.join();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace detail

/*
 * All the state one (code, symbol size) cell needs: data and reference
 * parity, compiled schedules and tables for encode plus a fixed-pattern
 * decode (the first min(k, r) data symbols erased), and packed copies
 * for the table codec.  run_point then measures one codec/op/workers
 * combination on top of it.
 */
class BenchRunner {
public:
    BenchRunner(const CodeSpec& code, std::size_t requested_size)
        : code_(code),
          actual_size_(detail::round_up(requested_size,
                                        std::lcm<std::size_t>(code.field.w, 8))),
          data_(code.k, actual_size_, code.field),
          parity_(code.r, actual_size_, code.field),
          full_(code.k + code.r, actual_size_, code.field),
          erased_(std::min(code.k, code.r)),
          recovered_(erased_, actual_size_, code.field) {
        for (unsigned j = 0; j < code.k; ++j)
            detail::fill_random(data_.symbol(j), actual_size_, 0xFEED + j);
        for (unsigned i = erased_; i < code.k + code.r; ++i) survivors_.push_back(i);
        survivors_.resize(code.k);

        const FieldMatrix parity_m = cauchy_parity_matrix(code);
        enc_sched_ = compile_schedule(parity_m, code.transform);
        enc_crs_ = compile_crs_schedule(parity_m);
        const FieldMatrix dec_m = decode_matrix(code, parity_m, survivors_);
        dec_sched_ = compile_schedule(dec_m, code.transform);
        dec_crs_ = compile_crs_schedule(dec_m);
        enc_tbl_ = std::make_unique<TableCodec>(parity_m);
        dec_tbl_ = std::make_unique<TableCodec>(dec_m);

        // reference parity so decode repairs real symbols
        parallel_replay(enc_sched_, data_, iota(code.k), parity_, iota(code.r), 1);
        for (unsigned j = 0; j < code.k; ++j)
            copy_region(full_.symbol(j), data_.symbol(j), actual_size_);
        for (unsigned i = 0; i < code.r; ++i)
            copy_region(full_.symbol(code.k + i), parity_.symbol(i), actual_size_);
    }

    std::size_t actual_size() const { return actual_size_; }

    double run_point(CodecKind codec, BenchOp op, unsigned workers, unsigned iters,
                     double target_seconds) {
        std::function<void(unsigned, std::size_t, std::size_t)> work;
        std::size_t span = 0;
        if (codec == CodecKind::Table) {
            prepare_packed();
            const bool enc = op == BenchOp::Encode;
            const TableCodec* tc = enc ? enc_tbl_.get() : dec_tbl_.get();
            const auto* in = enc ? &packed_data_ : &packed_survivors_;
            auto* out = enc ? &packed_parity_ : &packed_recovered_;
            span = packed_len_;
            // per-worker pointer tables, filled on the worker's first call
            auto cache = std::make_shared<std::vector<
                std::pair<std::vector<const std::uint8_t*>, std::vector<std::uint8_t*>>>>(
                std::max(1u, workers));
            work = [tc, in, out, cache](unsigned wkr, std::size_t off, std::size_t len) {
                auto& [ins, outs] = (*cache)[wkr];
                if (ins.empty()) {
                    for (const auto& v : *in) ins.push_back(v.data() + off);
                    for (auto& v : *out) outs.push_back(v.data() + off);
                }
                tc->apply(ins, outs, len);
            };
        } else {
            const XorSchedule* sched;
            const SymbolBuffer* in;
            SymbolBuffer* out;
            if (op == BenchOp::Encode) {
                sched = codec == CodecKind::Pyrit ? &enc_sched_ : &enc_crs_;
                in = &data_;
                out = &parity_;
                in_map_ = iota(code_.k);
                out_map_ = iota(code_.r);
            } else {
                sched = codec == CodecKind::Pyrit ? &dec_sched_ : &dec_crs_;
                in = &full_;
                out = &recovered_;
                in_map_ = survivors_;
                out_map_ = iota(erased_);
            }
            span = in->packet_size();
            workspaces_.clear();
            for (unsigned wkr = 0; wkr < std::max(1u, workers); ++wkr)
                workspaces_.emplace_back(*sched, span); // covers any window
            work = [this, sched, in, out](unsigned wkr, std::size_t off, std::size_t len) {
                replay(*sched, *in, in_map_, *out, out_map_, workspaces_[wkr], off, len);
            };
        }

        if (iters == 0) {
            const auto t0 = std::chrono::steady_clock::now();
            work(0, 0, span);
            const double est =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            iters = static_cast<unsigned>(
                std::min(50000.0, std::max(3.0, target_seconds / std::max(est, 1e-7))));
        }
        const auto windows = column_windows(span, workers);
        const double secs = detail::timed_loop(windows, iters, work);
        const double bytes = static_cast<double>(code_.k + code_.r) *
                             static_cast<double>(actual_size_) * iters;
        return bytes / secs / 1e9;
    }

private:
    static std::vector<unsigned> iota(unsigned count) {
        std::vector<unsigned> m(count);
        for (unsigned i = 0; i < count; ++i) m[i] = i;
        return m;
    }

    void prepare_packed() {
        if (!packed_data_.empty()) return;
        packed_len_ = packed_symbol_size(code_.field, data_.columns());
        for (unsigned j = 0; j < code_.k; ++j) packed_data_.push_back(pack_symbol(data_, j));
        packed_parity_.assign(code_.r, std::vector<std::uint8_t>(packed_len_));
        for (unsigned s : survivors_) packed_survivors_.push_back(pack_symbol(full_, s));
        packed_recovered_.assign(erased_, std::vector<std::uint8_t>(packed_len_));
    }

    CodeSpec code_;
    std::size_t actual_size_;
    SymbolBuffer data_, parity_, full_;
    unsigned erased_;
    SymbolBuffer recovered_;
    std::vector<unsigned> survivors_, in_map_, out_map_;
    XorSchedule enc_sched_, enc_crs_, dec_sched_, dec_crs_;
    std::unique_ptr<TableCodec> enc_tbl_, dec_tbl_;
    std::vector<Workspace> workspaces_;
    std::size_t packed_len_ = 0;
    std::vector<std::vector<std::uint8_t>> packed_data_, packed_parity_, packed_survivors_,
        packed_recovered_;
};

// One full table: every configured size measured at every worker count.
inline BenchTable run_bench(const BenchConfig& cfg, CodecKind codec, BenchOp op) {
    BenchTable table{codec, op, cfg.threads, {}};
    for (std::size_t size : cfg.sizes) {
        BenchRunner runner(cfg.code, size);
        BenchRow row{size, {}};
        for (unsigned t : cfg.threads)
            row.gbps.push_back(
                runner.run_point(codec, op, t, cfg.iterations, cfg.target_seconds));
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline std::string bench_csv(const BenchTable& table) {
    std::ostringstream out;
    out << "size";
    for (unsigned t : table.threads) out << ",t" << t;
    out << "\n";
    for (const BenchRow& row : table.rows) {
        out << row.size;
        for (double g : row.gbps) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", g);
            out << ',' << buf;
        }
        out << "\n";
    }
    return out.str();
}

} // namespace pyrit
