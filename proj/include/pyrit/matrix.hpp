#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pyrit/errors.hpp"
#include "pyrit/field.hpp"
#include "pyrit/transform.hpp"

namespace pyrit {

// Code geometry: k data symbols, r parity symbols, and the transform
// the codec will use to move symbols through the ring.
struct CodeSpec {
    unsigned k;
    unsigned r;
    FieldSpec field;
    TransformKind transform = TransformKind::Embedding;

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

inline void validate_code(const CodeSpec& code) {
    if (code.k == 0) raise(Errc::InvalidArgument, "k must be at least 1");
    if (code.k + code.r > code.field.field_size())
        raise(Errc::TooManySymbols,
              "k + r = " + std::to_string(code.k + code.r) + " exceeds field size " +
              std::to_string(code.field.field_size()));
}

struct FieldMatrix {
    std::size_t rows = 0, cols = 0;
    FieldSpec spec;
    std::vector<FieldElem> e; // row-major

    FieldMatrix() : spec(FieldSpec::gf16_aop()) {}
    FieldMatrix(std::size_t r, std::size_t c, const FieldSpec& s)
        : rows(r), cols(c), spec(s), e(r * c, 0) {}

    FieldElem& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    FieldElem at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

/*
 * Parity matrix of a generalized Cauchy code: C[i][j] = 1/(x_i + y_j)
 * over the evaluation points x_i = k + i and y_j = j, then normalized
 * so the first row and first column are all ones.  Row and column
 * scaling by nonzero constants preserves the Cauchy property, and any
 * square submatrix of a Cauchy matrix is nonsingular, which makes
 * [I | C^T]^T an MDS generator.  Requires k + r <= 2^w distinct points.
 */
inline FieldMatrix cauchy_parity_matrix(unsigned k, unsigned r, const FieldSpec& spec) {
    if (k == 0) raise(Errc::InvalidArgument, "k must be at least 1");
    if (k + r > spec.field_size())
        raise(Errc::TooManySymbols,
              "k + r = " + std::to_string(k + r) + " exceeds field size " +
              std::to_string(spec.field_size()));
    FieldMatrix c(r, k, spec);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < k; ++j)
            c.at(i, j) = gf_inv(static_cast<FieldElem>((k + i) ^ j), spec);
    for (unsigned i = 0; i < r; ++i) {
        const FieldElem scale = gf_inv(c.at(i, 0), spec);
        for (unsigned j = 0; j < k; ++j)
            c.at(i, j) = gf_mul(c.at(i, j), scale, spec);
    }
    for (unsigned j = 0; j < k && r > 0; ++j) {
        const FieldElem scale = gf_inv(c.at(0, j), spec);
        for (unsigned i = 0; i < r; ++i)
            c.at(i, j) = gf_mul(c.at(i, j), scale, spec);
    }
    return c;
}

inline FieldMatrix cauchy_parity_matrix(const CodeSpec& code) {
    validate_code(code);
    return cauchy_parity_matrix(code.k, code.r, code.field);
}

inline FieldMatrix matrix_product(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols != b.rows) raise(Errc::InvalidArgument, "matrix shape mismatch");
    FieldMatrix out(a.rows, b.cols, a.spec);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t t = 0; t < a.cols; ++t) {
            const FieldElem v = a.at(i, t);
            if (v == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                out.at(i, j) = gf_add(out.at(i, j), gf_mul(v, b.at(t, j), a.spec));
        }
    return out;
}

// Gauss-Jordan inverse.  Throws Singular on a zero pivot column.
inline FieldMatrix invert(const FieldMatrix& m) {
    if (m.rows != m.cols) raise(Errc::InvalidArgument, "inverse of non-square matrix");
    const std::size_t n = m.rows;
    FieldMatrix a = m;
    FieldMatrix inv(n, n, m.spec);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.at(pivot, col) == 0) ++pivot;
        if (pivot == n) raise(Errc::Singular, "singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.e[pivot * n + j], a.e[col * n + j]);
                std::swap(inv.e[pivot * n + j], inv.e[col * n + j]);
            }
        const FieldElem scale = gf_inv(a.at(col, col), m.spec);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) = gf_mul(a.at(col, j), scale, m.spec);
            inv.at(col, j) = gf_mul(inv.at(col, j), scale, m.spec);
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col) continue;
            const FieldElem f = a.at(row, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a.at(row, j) = gf_add(a.at(row, j), gf_mul(f, a.at(col, j), m.spec));
                inv.at(row, j) = gf_add(inv.at(row, j), gf_mul(f, inv.at(col, j), m.spec));
            }
        }
    }
    return inv;
}

inline bool nonsingular(FieldMatrix a) {
    if (a.rows != a.cols) return false;
    const std::size_t n = a.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return false;
        if (pivot != col)
            for (std::size_t j = col; j < n; ++j)
                std::swap(a.e[pivot * n + j], a.e[col * n + j]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const FieldElem f = gf_mul(a.at(row, col), gf_inv(a.at(col, col), a.spec), a.spec);
            if (f == 0) continue;
            for (std::size_t j = col; j < n; ++j)
                a.at(row, j) = gf_add(a.at(row, j), gf_mul(f, a.at(col, j), a.spec));
        }
    }
    return true;
}

/*
 * Exhaustive MDS test: every square submatrix must be nonsingular.
 * Cost grows as sum over t of C(rows,t)*C(cols,t) determinants, so this
 * is meant for the small matrices the test grid uses (dims <= ~10).
 */
inline bool is_mds(const FieldMatrix& m) {
    if (m.rows > 12 || m.cols > 12)
        raise(Errc::InvalidArgument, "is_mds is exhaustive; matrix too large");
    const auto subsets_by_weight = [](std::size_t n) {
        std::vector<std::vector<std::uint32_t>> buckets(n + 1);
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
            buckets[weight(mask)].push_back(mask);
        return buckets;
    };
    const auto bits_of = [](std::uint32_t mask) {
        std::vector<std::size_t> out;
        for (unsigned i = 0; mask >> i; ++i)
            if ((mask >> i) & 1u) out.push_back(i);
        return out;
    };
    const auto row_buckets = subsets_by_weight(m.rows);
    const auto col_buckets = subsets_by_weight(m.cols);
    const std::size_t max_t = std::min(m.rows, m.cols);
    for (std::size_t t = 1; t <= max_t; ++t)
        for (std::uint32_t rm : row_buckets[t]) {
            const auto rsel = bits_of(rm);
            for (std::uint32_t cm : col_buckets[t]) {
                const auto csel = bits_of(cm);
                FieldMatrix sub(t, t, m.spec);
                for (std::size_t i = 0; i < t; ++i)
                    for (std::size_t j = 0; j < t; ++j)
                        sub.at(i, j) = m.at(rsel[i], csel[j]);
                if (!nonsingular(std::move(sub))) return false;
            }
        }
    return true;
}

/*
 * Rows that rebuild the erased data symbols from the k survivors.
 * The generator is [I | C^T]^T; selecting its survivor rows gives a
 * k x k matrix A with survivors = A * data, so the wanted rows are the
 * erased-data rows of A^-1.  Column order follows the survivor order.
 */
inline FieldMatrix decode_matrix(const CodeSpec& code, const FieldMatrix& parity,
                                 const std::vector<unsigned>& survivors) {
    if (survivors.size() != code.k)
        raise(Errc::InvalidArgument, "need exactly k survivors");
    std::vector<bool> seen(code.k + code.r, false);
    for (unsigned s : survivors) {
        if (s >= code.k + code.r) raise(Errc::InvalidArgument, "survivor index out of range");
        if (seen[s]) raise(Errc::InvalidArgument, "duplicate survivor index");
        seen[s] = true;
    }
    FieldMatrix a(code.k, code.k, code.field);
    for (unsigned row = 0; row < code.k; ++row) {
        const unsigned s = survivors[row];
        if (s < code.k) a.at(row, s) = 1;
        else
            for (unsigned j = 0; j < code.k; ++j)
                a.at(row, j) = parity.at(s - code.k, j);
    }
    FieldMatrix ainv = invert(a); // Cauchy submatrices are nonsingular
    std::vector<unsigned> erased;
    for (unsigned d = 0; d < code.k; ++d)
        if (!seen[d]) erased.push_back(d);
    FieldMatrix out(erased.size(), code.k, code.field);
    for (std::size_t i = 0; i < erased.size(); ++i)
        for (unsigned j = 0; j < code.k; ++j)
            out.at(i, j) = ainv.at(erased[i], j);
    return out;
}

// Per-entry binary expansion: block (i, j) is the w x w bitmatrix of
// multiplication by entry (i, j).  This is the classic scheme's view.
inline BinMatrix expand_bitmatrix(const FieldMatrix& m) {
    const unsigned w = m.spec.w;
    BinMatrix out(m.rows * w, m.cols * w);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const BinMatrix block = field_to_bitmatrix(m.at(i, j), m.spec);
            for (unsigned bi = 0; bi < w; ++bi)
                for (unsigned bj = 0; bj < w; ++bj)
                    out.at(i * w + bi, j * w + bj) = block.at(bi, bj);
        }
    return out;
}

// Hex rendering, one row per line, entries zero-padded to the field's
// nibble width.
inline std::string matrix_to_string(const FieldMatrix& m) {
    static const char* digits = "0123456789abcdef";
    const unsigned nibbles = (m.spec.w + 3) / 4;
    std::string out;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j != 0) out += ' ';
            for (unsigned d = nibbles; d-- > 0;)
                out += digits[(m.at(i, j) >> (4 * d)) & 0xF];
        }
        out += '\n';
    }
    return out;
}

} // namespace pyrit
