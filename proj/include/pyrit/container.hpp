#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "pyrit/codec.hpp"
#include "pyrit/matrix.hpp"

namespace pyrit {

/*
 * Shard container.  Every shard starts with a fixed 29-byte header,
 * all multi-byte fields little-endian:
 *
 *   offset  size  field
 *        0     4  magic "PYRT"
 *        4     1  version (1)
 *        5     1  field id (0 = GF(2^4) AOP, 1 = GF(2^6) ESP)
 *        6     1  transform id (0 = embedding, 1 = parity)
 *        7     2  k
 *        9     2  r
 *       11     2  shard index
 *       13     4  symbol size in bytes
 *       17     8  original file length
 *       25     4  CRC32 of bytes [0, 25)
 *
 * The payload is one symbol of symbol_size bytes per stripe; a stripe
 * covers k * symbol_size bytes of the original file, zero-padded at
 * the tail.  Everything a decoder needs is reproducible from any one
 * header: the parity matrix is rebuilt from (k, r, field).
 */

inline constexpr std::size_t kHeaderSize = 29;
inline constexpr std::array<std::uint8_t, 4> kMagic = {'P', 'Y', 'R', 'T'};

inline std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
    static const std::array<std::uint32_t, 256> table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int bit = 0; bit < 8; ++bit)
                c = (c >> 1) ^ ((c & 1u) ? 0xEDB88320u : 0u);
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::uint8_t b : bytes) c = (c >> 8) ^ table[(c ^ b) & 0xFFu];
    return c ^ 0xFFFFFFFFu;
}

struct ShardHeader {
    std::uint8_t version = 1;
    std::uint8_t field = 0;
    std::uint8_t transform = 0;
    std::uint16_t k = 0;
    std::uint16_t r = 0;
    std::uint16_t shard_index = 0;
    std::uint32_t symbol_size = 0;
    std::uint64_t original_length = 0;

    friend bool operator==(const ShardHeader&, const ShardHeader&) = default;

    // Everything except the shard index must agree across one set.
    bool same_set(const ShardHeader& o) const {
        return version == o.version && field == o.field && transform == o.transform &&
               k == o.k && r == o.r && symbol_size == o.symbol_size &&
               original_length == o.original_length;
    }

    CodeSpec code() const {
        return CodeSpec{k, r, field_from_id(field), transform_from_id(transform)};
    }

    std::uint64_t stripe_count() const {
        const std::uint64_t stripe_bytes = std::uint64_t{k} * symbol_size;
        return stripe_bytes == 0 ? 0 : (original_length + stripe_bytes - 1) / stripe_bytes;
    }
};

namespace detail {

inline void put16(std::uint8_t* p, std::uint16_t v) {
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
}
inline void put32(std::uint8_t* p, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}
inline void put64(std::uint8_t* p, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}
inline std::uint16_t get16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline std::uint32_t get32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}
inline std::uint64_t get64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

} // namespace detail

inline std::array<std::uint8_t, kHeaderSize> serialize_header(const ShardHeader& h) {
    std::array<std::uint8_t, kHeaderSize> out{};
    std::copy(kMagic.begin(), kMagic.end(), out.begin());
    out[4] = h.version;
    out[5] = h.field;
    out[6] = h.transform;
    detail::put16(&out[7], h.k);
    detail::put16(&out[9], h.r);
    detail::put16(&out[11], h.shard_index);
    detail::put32(&out[13], h.symbol_size);
    detail::put64(&out[17], h.original_length);
    detail::put32(&out[25], crc32({out.data(), 25}));
    return out;
}

// Strict parse: magic and version first, then the checksum, then field
// semantics.  Total over arbitrary bytes; every failure is a typed
// exception, never undefined behavior.
inline ShardHeader parse_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) raise(Errc::BadHeader, "header truncated");
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
        raise(Errc::BadHeader, "bad magic");
    if (bytes[4] != 1)
        raise(Errc::BadHeader, "unsupported version " + std::to_string(bytes[4]));
    if (detail::get32(&bytes[25]) != crc32(bytes.first(25)))
        raise(Errc::ChecksumError, "header checksum mismatch");

    ShardHeader h;
    h.version = bytes[4];
    h.field = bytes[5];
    h.transform = bytes[6];
    h.k = detail::get16(&bytes[7]);
    h.r = detail::get16(&bytes[9]);
    h.shard_index = detail::get16(&bytes[11]);
    h.symbol_size = detail::get32(&bytes[13]);
    h.original_length = detail::get64(&bytes[17]);

    const FieldSpec spec = field_from_id(h.field); // throws BadHeader on junk
    transform_from_id(h.transform);
    if (h.k == 0) raise(Errc::BadHeader, "k must be at least 1");
    if (static_cast<std::uint32_t>(h.k) + h.r > spec.field_size())
        raise(Errc::BadHeader, "k + r exceeds field size");
    if (h.shard_index >= static_cast<std::uint32_t>(h.k) + h.r)
        raise(Errc::BadHeader, "shard index out of range");
    if (h.symbol_size == 0 || h.symbol_size % spec.w != 0 || h.symbol_size % 8 != 0)
        raise(Errc::BadHeader, "symbol size not a positive multiple of w and word width");
    return h;
}

namespace fs = std::filesystem;

// Split input into stripes of k * symbol_size bytes, encode each, and
// write one shard file per symbol role.  Returns the shard paths,
// index order.  Re-running on identical input is byte-identical.
inline std::vector<fs::path> encode_file(const fs::path& input, const fs::path& out_dir,
                                         const CodeSpec& code, std::uint32_t symbol_size) {
    validate_code(code);
    if (symbol_size == 0 || symbol_size % code.field.w != 0 || symbol_size % 8 != 0)
        raise(Errc::BufferShape, "symbol size must be a positive multiple of w and of 8");

    std::ifstream in(input, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open " + input.string());
    in.seekg(0, std::ios::end);
    const std::uint64_t length = static_cast<std::uint64_t>(in.tellg());
    in.seekg(0);

    std::error_code ec;
    fs::create_directories(out_dir, ec);

    const unsigned total = code.k + code.r;
    std::vector<fs::path> paths(total);
    std::vector<std::ofstream> out(total);
    for (unsigned i = 0; i < total; ++i) {
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, ".s%03u", i);
        paths[i] = out_dir / (input.filename().string() + suffix + ".pyrit");
        out[i].open(paths[i], std::ios::binary | std::ios::trunc);
        if (!out[i]) raise(Errc::IoError, "cannot create " + paths[i].string());
        ShardHeader h;
        h.field = field_id(code.field);
        h.transform = static_cast<std::uint8_t>(code.transform);
        h.k = static_cast<std::uint16_t>(code.k);
        h.r = static_cast<std::uint16_t>(code.r);
        h.shard_index = static_cast<std::uint16_t>(i);
        h.symbol_size = symbol_size;
        h.original_length = length;
        const auto bytes = serialize_header(h);
        out[i].write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    }

    const std::uint64_t stripe_bytes = std::uint64_t{code.k} * symbol_size;
    const std::uint64_t stripes = length == 0 ? 0 : (length + stripe_bytes - 1) / stripe_bytes;
    SymbolBuffer data(code.k, symbol_size, code.field);
    for (std::uint64_t stripe = 0; stripe < stripes; ++stripe) {
        for (unsigned j = 0; j < code.k; ++j) {
            std::uint8_t* sym = data.symbol(j);
            std::fill(sym, sym + symbol_size, 0);
            in.read(reinterpret_cast<char*>(sym), symbol_size);
        }
        const SymbolBuffer parity = encode(data, code);
        for (unsigned j = 0; j < code.k; ++j)
            out[j].write(reinterpret_cast<const char*>(data.symbol(j)), symbol_size);
        for (unsigned i = 0; i < code.r; ++i)
            out[code.k + i].write(reinterpret_cast<const char*>(parity.symbol(i)), symbol_size);
    }
    for (unsigned i = 0; i < total; ++i)
        if (!out[i]) raise(Errc::IoError, "short write on " + paths[i].string());
    return paths;
}

struct LoadedShard {
    ShardHeader header;
    std::vector<std::uint8_t> payload;
};

inline LoadedShard load_shard(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    LoadedShard shard;
    shard.header = parse_header(bytes);
    const std::uint64_t expect = shard.header.stripe_count() * shard.header.symbol_size;
    if (bytes.size() != kHeaderSize + expect)
        raise(Errc::BadHeader, "shard payload truncated: " + path.string());
    shard.payload.assign(bytes.begin() + kHeaderSize, bytes.end());
    return shard;
}

/*
 * Rebuild the original file from any k (or more) shards.  Shards must
 * form one consistent set; the first shard seen for an index wins.
 * Survivors are chosen data-first, then parity by ascending index, and
 * only erased data symbols are reconstructed per stripe.
 */
inline void decode_file(const std::vector<fs::path>& shard_paths, const fs::path& output) {
    if (shard_paths.empty()) raise(Errc::InsufficientShards, "no shards given");
    std::vector<LoadedShard> byindex;
    ShardHeader ref;
    bool have_ref = false;
    for (const fs::path& p : shard_paths) {
        LoadedShard shard = load_shard(p);
        if (!have_ref) {
            ref = shard.header;
            have_ref = true;
            byindex.resize(static_cast<std::size_t>(ref.k) + ref.r);
        } else if (!shard.header.same_set(ref)) {
            raise(Errc::HeaderMismatch, "shard from a different set: " + p.string());
        }
        auto& slot = byindex[shard.header.shard_index];
        if (slot.header.k == 0) // parse_header rejects k = 0, so 0 marks "empty slot"
            slot = std::move(shard); // first occurrence of this index wins
    }

    const CodeSpec code = ref.code();
    std::vector<unsigned> erased;
    for (unsigned i = 0; i < code.k + code.r; ++i)
        if (byindex[i].header.k == 0) erased.push_back(i);
    if (code.k + code.r - erased.size() < code.k)
        raise(Errc::InsufficientShards,
              "have " + std::to_string(code.k + code.r - erased.size()) + " shards, need " +
              std::to_string(code.k));

    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::IoError, "cannot create " + output.string());

    const std::uint64_t stripes = ref.stripe_count();
    const std::uint32_t symbol_size = ref.symbol_size;
    SymbolBuffer symbols(code.k + code.r, symbol_size, code.field);
    std::uint64_t remaining = ref.original_length;
    for (std::uint64_t stripe = 0; stripe < stripes; ++stripe) {
        for (unsigned i = 0; i < code.k + code.r; ++i) {
            if (byindex[i].header.k == 0) continue;
            std::copy_n(byindex[i].payload.data() + stripe * symbol_size, symbol_size,
                        symbols.symbol(i));
        }
        decode(symbols, erased, code);
        for (unsigned j = 0; j < code.k && remaining > 0; ++j) {
            const std::uint64_t take = std::min<std::uint64_t>(symbol_size, remaining);
            out.write(reinterpret_cast<const char*>(symbols.symbol(j)),
                      static_cast<std::streamsize>(take));
            remaining -= take;
        }
    }
    if (!out) raise(Errc::IoError, "short write on " + output.string());
}

} // namespace pyrit
