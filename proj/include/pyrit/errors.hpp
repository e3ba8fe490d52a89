#pragma once

#include <stdexcept>
#include <string>

namespace pyrit {

// Every failure the library can signal.  Shape errors (BufferShape,
// TooManySymbols) indicate caller bugs; container errors (ChecksumError,
// HeaderMismatch, InsufficientShards) indicate damaged or missing input and
// are expected in normal operation.
enum class Errc {
    ZeroInverse,        // multiplicative inverse of 0 requested
    Singular,           // matrix inversion hit a zero pivot
    TooManySymbols,     // k + r exceeds the field size
    BufferShape,        // symbol buffer does not match the code geometry
    TransformMismatch,  // shard metadata names a different transform
    InsufficientShards, // fewer than k usable shards
    HeaderMismatch,     // shards from different encodings mixed together
    ChecksumError,      // header checksum failed
    BadHeader,          // header too short or wrong magic/version
    IoError,            // filesystem failure
    InvalidArgument,    // bad CLI/API parameter
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace pyrit
