// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Covers the algebra exhaustives, the documented worked examples, MDS
// structure, roundtrip coding, cross-codec agreement, schedule cost,
// the full benchmark sweep, and container robustness.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pyrit/bench.hpp"
#include "pyrit/codec.hpp"
#include "pyrit/container.hpp"

using namespace pyrit;
namespace fsys = std::filesystem;

namespace {

const FieldSpec g16 = FieldSpec::gf16_aop();
const FieldSpec g64 = FieldSpec::gf64_esp();

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fill_random(SymbolBuffer& buf, std::mt19937_64& rng) {
    std::uint8_t* p = buf.symbol(0);
    for (std::size_t i = 0; i < buf.symbols() * buf.symbol_size(); ++i)
        p[i] = static_cast<std::uint8_t>(rng());
}

bool buffers_equal(const SymbolBuffer& a, const SymbolBuffer& b) {
    return std::memcmp(a.symbol(0), b.symbol(0), a.symbols() * a.symbol_size()) == 0;
}

// ---- criterion 1: exhaustive ring algebra, under one second ----
Outcome check_algebra() {
    std::size_t cases = 0;
    for (const FieldSpec& spec : {g16, g64}) {
        const RingElem th = idempotent_theta1(spec);
        if (ring_mul(th, th, spec) != th) return {false, "idempotency failed"};
        ++cases;
        for (FieldElem a = 0; a < spec.field_size(); ++a)
            for (FieldElem b = 0; b < spec.field_size(); ++b, ++cases)
                if (phi1(gf_mul(a, b, spec), spec) !=
                    ring_mul(phi1(a, spec), phi1(b, spec), spec))
                    return {false, "homomorphism failed"};
        for (RingElem a = 0; a < spec.ring_size(); ++a, ++cases)
            if (in_ideal_A1(a, spec) != (phi1(phi1_inv(a, spec), spec) == a))
                return {false, "ideal characterization failed"};
    }
    return {true, std::to_string(cases) + " cases"};
}

// ---- criterion 2: the documented worked examples, bit-exact ----
Outcome check_worked_examples() {
    if (ring_mul(0x05, 0x12, g16) != 0x18)
        return {false, "(1+x^2)(x+x^4) != x^3+x^4"};
    if (phi1(0x4, g16) != 0x1B) return {false, "phi1(x^2) != 1+x+x^3+x^4"};
    if (sparse_transform(0x4, g16) != 0x4) return {false, "sparse(x^2) != x^2"};
    if (weight(sparse_transform(0x4, g16)) != 1) return {false, "weight not 1"};
    return {true, "ring product, phi1 image, sparse representative"};
}

// ---- criterion 3: mixed-representative products ----
Outcome check_mixed_representatives() {
    std::size_t cases = 0;
    const auto comp16 = complement_elements(g16);
    for (FieldElem a = 0; a < 16; ++a)
        for (FieldElem b = 0; b < 16; ++b)
            for (RingElem ea : comp16)
                for (RingElem eb : comp16) {
                    ++cases;
                    if (phi1_inv(ring_mul(phi1(a, g16) ^ ea, phi1(b, g16) ^ eb, g16),
                                 g16) != gf_mul(a, b, g16))
                        return {false, "GF(2^4) mixed representative failed"};
                }

    const auto comp64 = complement_elements(g64);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    for (int i = 0; i < 100000; ++i, ++cases) {
        const FieldElem a = rng() & 63, b = rng() & 63;
        const RingElem ea = comp64[rng() % comp64.size()];
        const RingElem eb = comp64[rng() % comp64.size()];
        if (phi1_inv(ring_mul(phi1(a, g64) ^ ea, phi1(b, g64) ^ eb, g64), g64) !=
            gf_mul(a, b, g64))
            return {false, "GF(2^6) mixed representative failed"};
    }
    return {true, std::to_string(cases) + " cases"};
}

// ---- criterion 4: MDS grid ----
Outcome check_mds_grid() {
    std::size_t checked = 0;
    for (const FieldSpec& spec : {g16, g64})
        for (unsigned k = 1; k <= 6; ++k)
            for (unsigned r = 1; r <= 6; ++r) {
                if (k + r > spec.field_size()) continue;
                if (!is_mds(cauchy_parity_matrix(k, r, spec)))
                    return {false, "k=" + std::to_string(k) + " r=" + std::to_string(r)};
                ++checked;
            }
    return {true, std::to_string(checked) + " matrices"};
}

SymbolBuffer build_codeword(const SymbolBuffer& data, const SymbolBuffer& parity,
                            const CodeSpec& code) {
    SymbolBuffer full(code.k + code.r, data.symbol_size(), code.field);
    for (unsigned j = 0; j < code.k; ++j)
        copy_region(full.symbol(j), data.symbol(j), data.symbol_size());
    for (unsigned i = 0; i < code.r; ++i)
        copy_region(full.symbol(code.k + i), parity.symbol(i), data.symbol_size());
    return full;
}

bool roundtrip_pattern(const SymbolBuffer& full, const std::vector<unsigned>& erased,
                       const CodeSpec& code) {
    SymbolBuffer work = full;
    for (unsigned e : erased)
        std::memset(work.symbol(e), 0xEE, work.symbol_size());
    decode(work, erased, code);
    return buffers_equal(work, full);
}

// ---- criterion 5: roundtrips, exhaustive small + random large ----
Outcome check_roundtrips() {
    std::mt19937_64 rng(500);
    std::size_t patterns = 0;

    struct Small {
        unsigned k, r;
        FieldSpec spec;
    };
    for (const Small& s : {Small{4, 2, g16}, Small{6, 3, g16}, Small{6, 3, g64}})
        for (TransformKind kind : {TransformKind::Embedding, TransformKind::Parity}) {
            CodeSpec code{s.k, s.r, s.spec, kind};
            SymbolBuffer data(s.k, std::lcm<std::size_t>(s.spec.w, 8), s.spec);
            fill_random(data, rng);
            const SymbolBuffer full = build_codeword(data, encode(data, code), code);
            const unsigned total = s.k + s.r;
            for (std::uint32_t mask = 1; mask < (1u << total); ++mask) {
                unsigned weight = 0;
                std::vector<unsigned> erased;
                for (unsigned i = 0; i < total; ++i)
                    if (mask & (1u << i)) {
                        erased.push_back(i);
                        ++weight;
                    }
                if (weight > s.r) continue;
                if (!roundtrip_pattern(full, erased, code))
                    return {false, "exhaustive pattern failed"};
                ++patterns;
            }
        }

    struct Big {
        unsigned k, r;
        FieldSpec spec;
        TransformKind kind;
    };
    const Big bigs[] = {{8, 4, g16, TransformKind::Embedding},
                        {40, 20, g64, TransformKind::Embedding},
                        {20, 40, g64, TransformKind::Parity}};
    for (const Big& b : bigs) {
        CodeSpec code{b.k, b.r, b.spec, b.kind};
        SymbolBuffer data(b.k, std::lcm<std::size_t>(b.spec.w, 8), b.spec);
        fill_random(data, rng);
        const SymbolBuffer full = build_codeword(data, encode(data, code), code);
        std::vector<unsigned> all(b.k + b.r);
        std::iota(all.begin(), all.end(), 0);
        for (int round = 0; round < 1000; ++round) {
            std::shuffle(all.begin(), all.end(), rng);
            const unsigned weight = 1 + rng() % b.r;
            std::vector<unsigned> erased(all.begin(), all.begin() + weight);
            if (!roundtrip_pattern(full, erased, code))
                return {false, "random pattern failed"};
            ++patterns;
        }
    }
    return {true, std::to_string(patterns) + " erasure patterns"};
}

// ---- criterion 6: all codecs vs the brute-force oracle ----
Outcome check_oracle_equivalence() {
    std::mt19937_64 rng(600);
    std::size_t cases = 0;
    for (const FieldSpec& spec : {g16, g64})
        for (unsigned k = 1; k <= 5; ++k)
            for (unsigned r = 1; r <= 5; ++r)
                for (TransformKind kind :
                     {TransformKind::Embedding, TransformKind::Parity}) {
                    CodeSpec code{k, r, spec, kind};
                    const FieldMatrix m = cauchy_parity_matrix(code);
                    SymbolBuffer data(k, std::lcm<std::size_t>(spec.w, 8), spec);
                    for (int round = 0; round < 6; ++round, ++cases) {
                        fill_random(data, rng);
                        if (!buffers_equal(encode(data, code), oracle_encode(data, code)))
                            return {false, "ring codec diverged from oracle"};
                        const SymbolBuffer plain =
                            oracle_apply(m, TransformKind::Embedding, data);
                        if (!buffers_equal(encode_crs(data, code), plain))
                            return {false, "bitmatrix codec diverged from oracle"};
                        if (!buffers_equal(encode_table(data, code), plain))
                            return {false, "table codec diverged from oracle"};
                    }
                }
    return {true, std::to_string(cases) + " random buffers, 3 codecs"};
}

// ---- criterion 7: schedule cost strictly below the baseline ----
Outcome check_complexity() {
    struct Cfg {
        unsigned k, r;
        FieldSpec spec;
        TransformKind kind;
    };
    const Cfg cfgs[] = {{8, 4, g16, TransformKind::Embedding},
                        {40, 20, g64, TransformKind::Embedding},
                        {20, 40, g64, TransformKind::Parity}};
    std::string detail;
    for (const Cfg& c : cfgs) {
        const FieldMatrix m = cauchy_parity_matrix(c.k, c.r, c.spec);
        const std::size_t ours =
            schedule_stats(compile_schedule(m, c.kind)).total_region_ops;
        const std::size_t crs = schedule_stats(compile_crs_schedule(m)).total_region_ops;
        if (ours >= crs)
            return {false, "k=" + std::to_string(c.k) + ": " + std::to_string(ours) +
                               " >= " + std::to_string(crs)};
        detail += std::to_string(ours) + "<" + std::to_string(crs) + " ";
    }

    // average minimum-coset weight over nonzero GF(2^4) elements is
    // exactly 25/15, strictly below the bitmatrix per-row average
    unsigned coset_weight_sum = 0;
    std::size_t bit_ones = 0;
    for (FieldElem u = 1; u < 16; ++u) {
        coset_weight_sum += weight(sparse_transform(u, g16));
        bit_ones += field_to_bitmatrix(u, g16).ones();
    }
    if (coset_weight_sum != 25)
        return {false, "coset weight sum " + std::to_string(coset_weight_sum) + " != 25"};
    // compare 25/15 < bit_ones/(15*4) as integers: 25*60 < bit_ones*15
    if (std::size_t{25 * 60} >= bit_ones * 15)
        return {false, "coset average not below bitmatrix row average"};
    detail += "avg coset weight 25/15 < " + std::to_string(bit_ones) + "/60";
    return {true, detail};
}

// ---- criterion 8: full benchmark sweep with CSV output ----
Outcome check_bench_sweep() {
    const CodeSpec code{8, 4, g16, TransformKind::Embedding};
    const auto sizes = default_bench_sizes();
    const std::vector<unsigned> threads{1, 2, 4, 8};
    const CodecKind codecs[] = {CodecKind::Pyrit, CodecKind::Crs, CodecKind::Table};
    const BenchOp ops[] = {BenchOp::Encode, BenchOp::Decode};

    std::vector<BenchTable> tables;
    for (BenchOp op : ops)
        for (CodecKind codec : codecs)
            tables.push_back(BenchTable{codec, op, threads, {}});

    // one runner per size measures all codec/op combinations
    for (std::size_t size : sizes) {
        BenchRunner runner(code, size);
        std::size_t t = 0;
        for (BenchOp op : ops)
            for (CodecKind codec : codecs) {
                BenchRow row{size, {}};
                for (unsigned workers : threads)
                    row.gbps.push_back(runner.run_point(codec, op, workers, 0, 0.12));
                tables[t++].rows.push_back(std::move(row));
            }
    }

    const fsys::path dir = "acceptance_bench";
    fsys::create_directories(dir);
    for (const BenchTable& table : tables) {
        char name[96];
        std::snprintf(name, sizeof name, "%s_%s_k8r4_gf16_emb.csv", op_name(table.op),
                      codec_name(table.codec));
        std::ofstream out(dir / name, std::ios::binary);
        out << bench_csv(table);
    }

    // report: one line per size with the ring/table throughput ratio
    for (const BenchOp op : ops) {
        const BenchTable *pyr = nullptr, *tab = nullptr;
        for (const BenchTable& table : tables)
            if (table.op == op) {
                if (table.codec == CodecKind::Pyrit) pyr = &table;
                if (table.codec == CodecKind::Table) tab = &table;
            }
        std::printf("    %s pyrit/table ratio by size:", op_name(op));
        for (std::size_t i = 0; i < sizes.size(); ++i)
            std::printf(" %.2f", pyr->rows[i].gbps[0] / tab->rows[i].gbps[0]);
        std::printf("\n");
    }

    for (const BenchTable& table : tables)
        if (table.rows.size() != sizes.size()) return {false, "missing rows"};
    return {true, std::to_string(tables.size()) + " CSVs x " +
                      std::to_string(sizes.size()) + " sizes in acceptance_bench/"};
}

// ---- criterion 9: container fuzzing and full deletion scans ----
Outcome check_container() {
    std::mt19937_64 rng(900);
    for (int round = 0; round < 10000; ++round) {
        std::vector<std::uint8_t> bytes(rng() % 64);
        for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
        if (round % 4 == 0 && bytes.size() >= 4)
            std::copy(kMagic.begin(), kMagic.end(), bytes.begin());
        try {
            parse_header(bytes);
        } catch (const Error&) {
        }
    }

    const fsys::path dir =
        fsys::temp_directory_path() / ("pyrit_accept_" + std::to_string(rng()));
    fsys::create_directories(dir);
    struct Cleanup {
        fsys::path p;
        ~Cleanup() { fsys::remove_all(p); }
    } cleanup{dir};

    std::vector<std::uint8_t> payload(5000);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng());
    {
        std::ofstream out(dir / "input.bin", std::ios::binary);
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size()));
    }

    std::size_t decodes = 0;
    struct Cfg {
        unsigned k, r;
        FieldSpec spec;
        TransformKind kind;
        std::uint32_t symbol;
    };
    const Cfg cfgs[] = {{4, 2, g16, choose_transform(4, 2), 64},
                        {6, 3, g64, TransformKind::Parity, 48}};
    for (const Cfg& c : cfgs) {
        CodeSpec code{c.k, c.r, c.spec, c.kind};
        const auto shards =
            encode_file(dir / "input.bin", dir / std::to_string(c.k), code, c.symbol);
        const unsigned total = c.k + c.r;
        for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
            if (static_cast<unsigned>(std::popcount(mask)) > c.r) continue;
            std::vector<fsys::path> survivors;
            for (unsigned i = 0; i < total; ++i)
                if (!(mask & (1u << i))) survivors.push_back(shards[i]);
            const fsys::path out = dir / "out.bin";
            decode_file(survivors, out);
            std::ifstream in(out, std::ios::binary);
            std::vector<std::uint8_t> got(
                (std::istreambuf_iterator<char>(in)), {});
            if (got != payload) return {false, "deletion pattern produced wrong bytes"};
            ++decodes;
        }
    }
    return {true, "10000 fuzzed headers, " + std::to_string(decodes) +
                      " deletion decodes identical"};
}

struct Criterion {
    const char* label;
    double budget_seconds;
    Outcome (*run)();
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {"ring algebra exhaustive", 1.0, check_algebra},
        {"worked examples", 1.0, check_worked_examples},
        {"mixed representatives", 10.0, check_mixed_representatives},
        {"cauchy matrices are MDS", 60.0, check_mds_grid},
        {"erasure roundtrips", 120.0, check_roundtrips},
        {"codecs match the oracle", 120.0, check_oracle_equivalence},
        {"schedule cost below baseline", 10.0, check_complexity},
        {"benchmark sweep", 600.0, check_bench_sweep},
        {"container robustness", 120.0, check_container},
    };

    bool all = true;
    int index = 1;
    for (const Criterion& c : criteria) {
        const auto t0 = Clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = seconds_since(t0);
        if (secs > c.budget_seconds) {
            out.pass = false;
            out.detail += " [over time budget]";
        }
        std::printf("criterion %d: %s  %-30s (%s, %.2f s)\n", index++,
                    out.pass ? "PASS" : "FAIL", c.label, out.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && out.pass;
    }
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
