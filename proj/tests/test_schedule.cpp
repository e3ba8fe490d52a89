#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <numeric>
#include <random>

#include "pyrit/codec.hpp"
#include "pyrit/schedule.hpp"

using namespace pyrit;

namespace {
const FieldSpec g16 = FieldSpec::gf16_aop();
const FieldSpec g64 = FieldSpec::gf64_esp();

void fill_random(SymbolBuffer& buf, std::mt19937& rng) {
    for (unsigned s = 0; s < buf.symbols(); ++s) {
        std::uint8_t* p = buf.symbol(s);
        for (std::size_t i = 0; i < buf.symbol_size(); ++i)
            p[i] = static_cast<std::uint8_t>(rng());
    }
}
} // namespace

TEST_CASE("transform choice prefers embedding for wide codes") {
    CHECK(choose_transform(8, 4) == TransformKind::Embedding);
    CHECK(choose_transform(20, 40) == TransformKind::Parity);
    CHECK(choose_transform(5, 5) == TransformKind::Embedding);
    CHECK(choose_transform(1, 2) == TransformKind::Parity);
}

TEST_CASE("identity entry compiles to copies plus the embedding fold") {
    FieldMatrix m(1, 1, g16);
    m.e = {1};
    const XorSchedule sched = compile_schedule(m, TransformKind::Embedding);
    CHECK(sched.pre.empty());
    REQUIRE(sched.core.size() == g16.w);
    for (const XorOp& op : sched.core) {
        CHECK(op.mode == OpMode::Copy);
        CHECK(op.src_sym == 0);
        CHECK(op.dst_sym == 1);
        CHECK(op.src_pkt == op.dst_pkt);
    }
    REQUIRE(sched.post.size() == g16.w);            // fold reads the zero scratch
    for (const XorOp& op : sched.post) {
        CHECK(op.mode == OpMode::Xor);
        CHECK(op.src_pkt >= g16.w);
    }

    // replay: output equals input
    std::mt19937 rng(3);
    SymbolBuffer in(1, 64, g16), out(1, 64, g16);
    const std::vector<unsigned> map{0};
    fill_random(in, rng);
    parallel_replay(sched, in, map, out, map, 1);
    CHECK(std::memcmp(in.symbol(0), out.symbol(0), 64) == 0);
}

TEST_CASE("zero entry compiles to explicit output zero-fill") {
    FieldMatrix m(1, 1, g16);
    m.e = {0};
    for (TransformKind kind : {TransformKind::Embedding, TransformKind::Parity}) {
        const XorSchedule sched = compile_schedule(m, kind);
        unsigned zeros = 0;
        for (const XorOp& op : sched.core) {
            CHECK(op.mode == OpMode::Zero);
            CHECK(op.dst_pkt < g16.w);              // scratch rows stay implicit
            ++zeros;
        }
        CHECK(zeros == g16.w);

        SymbolBuffer in(1, 64, g16), out(1, 64, g16);
        std::mt19937 rng(4);
        const std::vector<unsigned> map{0};
        fill_random(in, rng);
        fill_random(out, rng);                      // stale contents must be cleared
        parallel_replay(sched, in, map, out, map, 1);
        for (std::size_t i = 0; i < 64; ++i) CHECK(out.symbol(0)[i] == 0);
    }
}

TEST_CASE("crs identity schedule is w copies") {
    FieldMatrix m(1, 1, g16);
    m.e = {1};
    const XorSchedule sched = compile_crs_schedule(m);
    const ScheduleStats st = schedule_stats(sched);
    CHECK(st.copy_ops == g16.w);
    CHECK(st.xor_ops == 0);
    CHECK(st.zero_ops == 0);
    CHECK(st.matrix_ones == g16.w);
}

TEST_CASE("single-entry crs op count equals the bitmatrix weight") {
    for (const FieldSpec& spec : {g16, g64})
        for (FieldElem a = 1; a < spec.field_size(); ++a) {
            FieldMatrix m(1, 1, spec);
            m.e = {a};
            const XorSchedule sched = compile_crs_schedule(m);
            CHECK(schedule_stats(sched).total_region_ops ==
                  field_to_bitmatrix(a, spec).ones());
        }
}

TEST_CASE("schedule replay equals the field oracle column-wise") {
    std::mt19937 rng(17);
    for (const FieldSpec& spec : {g16, g64})
        for (unsigned k = 1; k <= 5; ++k)
            for (unsigned r = 1; r <= 5; ++r)
                for (TransformKind kind :
                     {TransformKind::Embedding, TransformKind::Parity}) {
                    CodeSpec code{k, r, spec, kind};
                    const FieldMatrix m = cauchy_parity_matrix(code);
                    const XorSchedule sched = compile_schedule(m, kind);
                    const XorSchedule crs = compile_crs_schedule(m);

                    const std::size_t symbol_size = std::lcm<std::size_t>(spec.w, 8);
                    SymbolBuffer data(k, symbol_size, spec);
                    for (int round = 0; round < 4; ++round) {
                        fill_random(data, rng);
                        SymbolBuffer ring_out(r, symbol_size, spec);
                        SymbolBuffer crs_out(r, symbol_size, spec);
                        parallel_replay(sched, data, detail::iota_map(k), ring_out,
                                        detail::iota_map(r), 1);
                        parallel_replay(crs, data, detail::iota_map(k), crs_out,
                                        detail::iota_map(r), 1);
                        const SymbolBuffer want = oracle_apply(m, kind, data);
                        const SymbolBuffer plain =
                            oracle_apply(m, TransformKind::Embedding, data);
                        CHECK(std::memcmp(want.symbol(0), ring_out.symbol(0),
                                          r * symbol_size) == 0);
                        // the bitmatrix baseline always computes the plain code
                        CHECK(std::memcmp(plain.symbol(0), crs_out.symbol(0),
                                          r * symbol_size) == 0);
                    }
                }
}

TEST_CASE("trimming: embedding reads no high input packets, parity writes none") {
    for (const FieldSpec& spec : {g16, g64}) {
        CodeSpec code{5, 4, spec, TransformKind::Embedding};
        const FieldMatrix m = cauchy_parity_matrix(code);

        const XorSchedule emb = compile_schedule(m, TransformKind::Embedding);
        CHECK(emb.pre.empty());
        for (const XorOp& op : emb.core)
            if (op.src_sym < emb.k && op.mode != OpMode::Zero)
                CHECK(op.src_pkt < spec.w);

        const XorSchedule par = compile_schedule(m, TransformKind::Parity);
        CHECK(par.post.empty());
        for (const XorOp& op : par.core) CHECK(op.dst_pkt < spec.w);
        for (const XorOp& op : par.pre) {
            CHECK(op.dst_pkt >= spec.w);            // pre only fills input scratch
            CHECK(op.src_sym == op.dst_sym);
        }
    }
}

TEST_CASE("sparse representatives never cost more than dense ones") {
    for (const FieldSpec& spec : {g16, g64})
        for (unsigned k = 1; k <= 6; ++k)
            for (unsigned r = 1; r <= 6; ++r)
                for (TransformKind kind :
                     {TransformKind::Embedding, TransformKind::Parity}) {
                    const FieldMatrix m = cauchy_parity_matrix(k, r, spec);
                    const auto sparse =
                        schedule_stats(compile_schedule(m, kind, RingRep::Sparse));
                    const auto dense =
                        schedule_stats(compile_schedule(m, kind, RingRep::Dense));
                    CHECK(sparse.total_region_ops <= dense.total_region_ops);
                    CHECK(sparse.matrix_ones <= dense.matrix_ones);
                }
}

TEST_CASE("stats match the op lists") {
    const FieldMatrix m = cauchy_parity_matrix(8, 4, g16);
    const XorSchedule sched = compile_schedule(m, TransformKind::Embedding);
    ScheduleStats st{};
    for (const auto* list : {&sched.pre, &sched.core, &sched.post})
        for (const XorOp& op : *list) {
            if (op.mode == OpMode::Copy) ++st.copy_ops;
            if (op.mode == OpMode::Xor) ++st.xor_ops;
            if (op.mode == OpMode::Zero) ++st.zero_ops;
        }
    const ScheduleStats got = schedule_stats(sched);
    CHECK(got.copy_ops == st.copy_ops);
    CHECK(got.xor_ops == st.xor_ops);
    CHECK(got.zero_ops == st.zero_ops);
    CHECK(got.total_region_ops == st.copy_ops + st.xor_ops + st.zero_ops);

    // core-only excludes exactly the pre/post lists
    const ScheduleStats core = core_stats(sched);
    CHECK(core.total_region_ops ==
          got.total_region_ops - sched.pre.size() - sched.post.size());
}

TEST_CASE("dump format is one op per line") {
    FieldMatrix m(1, 1, g16);
    m.e = {1};
    const std::string dump = dump_schedule(compile_schedule(m, TransformKind::Embedding));
    CHECK(dump.find("# core") != std::string::npos);
    CHECK(dump.find("# post") != std::string::npos);
    CHECK(dump.find("C 0.0 -> 1.0") != std::string::npos);
    CHECK(dump.find("X 1.4 -> 1.0") != std::string::npos);
}
