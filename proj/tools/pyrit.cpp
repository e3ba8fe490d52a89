// pyrit CLI: encode/decode files into shards, inspect code matrices and
// XOR schedules, run the arithmetic self-check, and benchmark codecs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pyrit/bench.hpp"
#include "pyrit/codec.hpp"
#include "pyrit/container.hpp"
#include "pyrit/selfcheck.hpp"

namespace {

using namespace pyrit;

FieldSpec parse_field(const std::string& name) {
    if (name == "gf16") return FieldSpec::gf16_aop();
    if (name == "gf64") return FieldSpec::gf64_esp();
    throw CLI::ValidationError("--field", "expected gf16 or gf64");
}

TransformKind parse_transform(const std::string& name, unsigned k, unsigned r) {
    if (name == "auto") return choose_transform(k, r);
    if (name == "embedding") return TransformKind::Embedding;
    if (name == "parity") return TransformKind::Parity;
    throw CLI::ValidationError("--transform", "expected auto, embedding or parity");
}

std::size_t round_symbol_size(std::size_t requested, const FieldSpec& spec) {
    const std::size_t unit = std::lcm<std::size_t>(spec.w, 8);
    return (requested + unit - 1) / unit * unit;
}

void print_stats_block(const char* label, const ScheduleStats& st) {
    std::printf("%-18s copy %6zu  xor %6zu  zero %6zu  total %6zu  matrix ones %zu\n",
                label, st.copy_ops, st.xor_ops, st.zero_ops, st.total_region_ops,
                st.matrix_ones);
}

int cmd_encode(const std::string& input, const std::string& out_dir, unsigned k, unsigned r,
               const std::string& field_name, const std::string& transform_name,
               std::size_t symbol_size) {
    CodeSpec code;
    code.k = k;
    code.r = r;
    code.field = parse_field(field_name);
    code.transform = parse_transform(transform_name, k, r);
    validate_code(code);
    const std::size_t rounded = round_symbol_size(symbol_size, code.field);
    const auto shards = encode_file(input, out_dir, code, rounded);
    std::printf("wrote %zu shards (k=%u r=%u %s %s, symbol %zu bytes)\n", shards.size(), k, r,
                field_name.c_str(), code.transform == TransformKind::Embedding ? "embedding"
                                                                               : "parity",
                rounded);
    for (const auto& p : shards) std::printf("  %s\n", p.c_str());
    return 0;
}

int cmd_decode(const std::vector<std::string>& shards, const std::string& output) {
    std::vector<std::filesystem::path> paths(shards.begin(), shards.end());
    decode_file(paths, output);
    std::printf("decoded %zu shards -> %s\n", shards.size(), output.c_str());
    return 0;
}

int cmd_matrix(unsigned k, unsigned r, const std::string& field_name, bool bits, bool sparse) {
    CodeSpec code;
    code.k = k;
    code.r = r;
    code.field = parse_field(field_name);
    validate_code(code);
    const FieldMatrix m = cauchy_parity_matrix(code);
    std::printf("parity matrix (%zu x %zu over GF(2^%u)):\n", m.rows, m.cols, code.field.w);
    std::fputs(matrix_to_string(m).c_str(), stdout);
    if (sparse) {
        std::printf("\nsparse ring representatives (shift sets):\n");
        for (unsigned i = 0; i < m.rows; ++i) {
            for (unsigned j = 0; j < m.cols; ++j) {
                const RingElem rep = sparse_transform(m.at(i, j), code.field);
                std::printf("  [%u][%u] %s -> {", i, j,
                            poly_string(m.at(i, j)).c_str());
                bool first = true;
                for (unsigned sh : to_shift_set(rep)) {
                    std::printf("%s%u", first ? "" : ",", sh);
                    first = false;
                }
                std::printf("}\n");
            }
        }
    }
    if (bits) {
        const BinMatrix bm = expand_bitmatrix(m);
        std::printf("\nbit matrix (%zu x %zu, %zu ones):\n", bm.rows, bm.cols, bm.ones());
        for (std::size_t i = 0; i < bm.rows; ++i) {
            for (std::size_t j = 0; j < bm.cols; ++j)
                std::putchar(bm.at(i, j) ? '1' : '.');
            std::putchar('\n');
        }
    }
    return 0;
}

int cmd_stats(unsigned k, unsigned r, const std::string& field_name,
              const std::string& transform_name, bool dump, bool dense) {
    CodeSpec code;
    code.k = k;
    code.r = r;
    code.field = parse_field(field_name);
    code.transform = parse_transform(transform_name, k, r);
    validate_code(code);
    const FieldMatrix m = cauchy_parity_matrix(code);
    const XorSchedule ring = compile_schedule(
        m, code.transform, dense ? RingRep::Dense : RingRep::Sparse);
    const XorSchedule crs = compile_crs_schedule(m);
    std::printf("k=%u r=%u %s %s\n", k, r, field_name.c_str(),
                code.transform == TransformKind::Embedding ? "embedding" : "parity");
    std::printf("per-entry ring representative weights:\n");
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::printf(" ");
        for (std::size_t j = 0; j < m.cols; ++j) {
            const RingElem rep = dense ? phi1(m.at(i, j), code.field)
                                       : sparse_transform(m.at(i, j), code.field);
            std::printf(" %u", weight(rep));
        }
        std::printf("\n");
    }
    std::printf("inclusive (pre + core + post):\n");
    print_stats_block("  ring schedule", schedule_stats(ring));
    print_stats_block("  crs bitmatrix", schedule_stats(crs));
    std::printf("core only (matrix application):\n");
    print_stats_block("  ring schedule", core_stats(ring));
    print_stats_block("  crs bitmatrix", core_stats(crs));
    const double ratio = static_cast<double>(schedule_stats(ring).total_region_ops) /
                         static_cast<double>(schedule_stats(crs).total_region_ops);
    std::printf("inclusive ring/crs ratio: %.4f\n", ratio);
    if (dump) {
        std::printf("\nring schedule ops:\n%s", dump_schedule(ring).c_str());
        std::printf("\ncrs schedule ops:\n%s", dump_schedule(crs).c_str());
    }
    return 0;
}

int cmd_verify(bool inject_fault) {
    bool all = true;
    for (const FieldSpec& spec : {FieldSpec::gf16_aop(), FieldSpec::gf64_esp()}) {
        std::printf("GF(2^%u), ring degree %u:\n", spec.w, spec.n);
        for (const CheckResult& res : run_selfcheck(spec, inject_fault)) {
            std::printf("  %-34s %s (%zu cases)\n", res.name.c_str(),
                        res.pass ? "ok" : "FAIL", res.cases);
            all = all && res.pass;
        }
    }
    std::printf("self-check: %s\n", all ? "pass" : "FAIL");
    return all ? 0 : 1;
}

int cmd_bench(unsigned k, unsigned r, const std::string& field_name,
              const std::string& transform_name, std::vector<std::size_t> sizes,
              std::vector<unsigned> threads, unsigned iterations, double target_seconds,
              const std::string& codec_filter, const std::string& op_filter,
              const std::string& out_dir) {
    BenchConfig cfg;
    cfg.code.k = k;
    cfg.code.r = r;
    cfg.code.field = parse_field(field_name);
    cfg.code.transform = parse_transform(transform_name, k, r);
    validate_code(cfg.code);
    cfg.sizes = sizes.empty() ? default_bench_sizes() : std::move(sizes);
    if (!threads.empty()) cfg.threads = std::move(threads);
    cfg.iterations = iterations;
    cfg.target_seconds = target_seconds;

    std::vector<CodecKind> codecs;
    if (codec_filter == "all" || codec_filter == "pyrit") codecs.push_back(CodecKind::Pyrit);
    if (codec_filter == "all" || codec_filter == "crs") codecs.push_back(CodecKind::Crs);
    if (codec_filter == "all" || codec_filter == "table") codecs.push_back(CodecKind::Table);
    if (codecs.empty()) throw CLI::ValidationError("--codec", "expected all, pyrit, crs or table");
    std::vector<BenchOp> ops;
    if (op_filter == "both" || op_filter == "encode") ops.push_back(BenchOp::Encode);
    if (op_filter == "both" || op_filter == "decode") ops.push_back(BenchOp::Decode);
    if (ops.empty()) throw CLI::ValidationError("--op", "expected both, encode or decode");

    std::filesystem::create_directories(out_dir);
    const char* tname = cfg.code.transform == TransformKind::Embedding ? "emb" : "par";

    std::vector<BenchTable> tables;
    for (BenchOp op : ops)
        for (CodecKind codec : codecs) {
            BenchTable table = run_bench(cfg, codec, op);
            char name[128];
            std::snprintf(name, sizeof name, "%s_%s_k%ur%u_%s_%s.csv", op_name(op),
                          codec_name(codec), k, r, field_name.c_str(), tname);
            const auto path = std::filesystem::path(out_dir) / name;
            std::ofstream out(path, std::ios::binary);
            out << bench_csv(table);
            std::printf("wrote %s\n", path.c_str());
            tables.push_back(std::move(table));
        }

    // side-by-side report per op: columns are codecs at each worker
    // count, plus the pyrit/table speedup when both were measured
    for (BenchOp op : ops) {
        const BenchTable* pyr = nullptr;
        const BenchTable* tab = nullptr;
        for (const BenchTable& table : tables)
            if (table.op == op) {
                if (table.codec == CodecKind::Pyrit) pyr = &table;
                if (table.codec == CodecKind::Table) tab = &table;
            }
        std::printf("\n%s GB/s (k=%u r=%u %s %s):\n", op_name(op), k, r, field_name.c_str(),
                    tname);
        std::printf("%10s", "size");
        for (CodecKind codec : codecs)
            for (unsigned t : cfg.threads) std::printf(" %8s/t%u", codec_name(codec), t);
        if (pyr && tab) std::printf("  pyrit/table");
        std::printf("\n");
        for (std::size_t row = 0; row < cfg.sizes.size(); ++row) {
            std::printf("%10zu", cfg.sizes[row]);
            for (const BenchTable& table : tables)
                if (table.op == op)
                    for (double g : table.rows[row].gbps) std::printf(" %11.3f", g);
            if (pyr && tab)
                std::printf("  %10.2fx", pyr->rows[row].gbps[0] / tab->rows[row].gbps[0]);
            std::printf("\n");
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"systematic erasure coding over small binary fields"};
    app.require_subcommand(1);

    unsigned k = 4, r = 2;
    std::string field_name = "gf16", transform_name = "auto";

    auto add_code_opts = [&](CLI::App* sub, bool with_transform) {
        sub->add_option("-k,--k", k, "data symbols")->capture_default_str();
        sub->add_option("-r,--r", r, "parity symbols")->capture_default_str();
        sub->add_option("--field", field_name, "gf16 or gf64")->capture_default_str();
        if (with_transform)
            sub->add_option("--transform", transform_name, "auto, embedding or parity")
                ->capture_default_str();
    };

    auto* enc = app.add_subcommand("encode", "split a file into coded shards");
    std::string input, out_dir = ".", output = "decoded.bin";
    std::size_t symbol_size = 4096;
    enc->add_option("input", input, "input file")->required();
    enc->add_option("--out-dir,-o", out_dir, "shard directory")->capture_default_str();
    add_code_opts(enc, true);
    enc->add_option("--symbol-size", symbol_size, "bytes per symbol (rounded up as needed)")
        ->capture_default_str();

    auto* dec = app.add_subcommand("decode", "rebuild a file from shards");
    std::vector<std::string> shard_paths;
    dec->add_option("shards", shard_paths, "shard files")->required()->expected(-1);
    dec->add_option("--output,-o", output, "output file")->capture_default_str();

    auto* mat = app.add_subcommand("matrix", "print the parity matrix");
    bool bits = false, sparse = false;
    add_code_opts(mat, false);
    mat->add_flag("--bits", bits, "also print the expanded bit matrix");
    mat->add_flag("--sparse", sparse, "also print sparse ring shift sets");

    auto* st = app.add_subcommand("stats", "compare XOR schedule costs");
    bool dump = false, dense = false;
    add_code_opts(st, true);
    st->add_flag("--dump", dump, "print the full op lists");
    st->add_flag("--dense", dense, "use dense ring representatives");

    auto* ver = app.add_subcommand("verify", "run the arithmetic self-check");
    bool inject_fault = false;
    ver->add_flag("--inject-theta-fault", inject_fault)->group(""); // hidden negative control

    auto* ben = app.add_subcommand("bench", "measure coding throughput");
    std::vector<std::size_t> sizes;
    std::vector<unsigned> threads;
    unsigned iterations = 0;
    double target_seconds = 0.25;
    std::string codec_filter = "all", op_filter = "both", bench_dir = "bench_out";
    add_code_opts(ben, true);
    ben->add_option("--sizes", sizes, "symbol sizes in bytes (default 128..8M powers of two)")
        ->delimiter(',');
    ben->add_option("--threads", threads, "worker counts (default 1 2 4 8)")->delimiter(',');
    ben->add_option("--iterations", iterations, "fixed iterations (default: auto per point)");
    ben->add_option("--target-seconds", target_seconds, "auto-iteration budget per point")
        ->capture_default_str();
    ben->add_option("--codec", codec_filter, "all, pyrit, crs or table")->capture_default_str();
    ben->add_option("--op", op_filter, "both, encode or decode")->capture_default_str();
    ben->add_option("--out-dir,-o", bench_dir, "CSV output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed())
            return cmd_encode(input, out_dir, k, r, field_name, transform_name, symbol_size);
        if (dec->parsed()) return cmd_decode(shard_paths, output);
        if (mat->parsed()) return cmd_matrix(k, r, field_name, bits, sparse);
        if (st->parsed()) return cmd_stats(k, r, field_name, transform_name, dump, dense);
        if (ver->parsed()) return cmd_verify(inject_fault);
        if (ben->parsed())
            return cmd_bench(k, r, field_name, transform_name, sizes, threads, iterations,
                             target_seconds, codec_filter, op_filter, bench_dir);
    } catch (const Error& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
    return 0;
}
